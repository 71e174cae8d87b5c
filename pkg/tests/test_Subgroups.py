import unittest

from QuadraticEquations.datavalidation import DomainError
from QuadraticEquations.subgroups import (
    FoldedGraph,
    contains,
    is_nielsen_reduced_pair,
    nielsen_violations,
    same_subgroup,
    folded_graph,
    verify_prefix_membership,
)
from QuadraticEquations.wordcore import IDENTITY, VARIABLE, format_word, parse_word


def P(*texts):
    return [parse_word(t) for t in texts]


class SubgroupsTestCase(unittest.TestCase):
    def setUp(self):
        self.powers = P("a^2", "b^3")

    def test_membership(self):
        self.assertTrue(contains(self.powers, parse_word("a^2 b^3 a^-2")))
        self.assertTrue(contains(self.powers, IDENTITY))
        self.assertFalse(contains(self.powers, parse_word("a")))
        self.assertFalse(contains(self.powers, parse_word("a b^3 a^-1")))
        self.assertTrue(contains(P("a b"), parse_word("a b a b")))
        graph = folded_graph(self.powers)
        self.assertTrue(contains(graph, parse_word("b^-3 a^2")))
        self.assertFalse(contains(graph, parse_word("b")))

    def test_rank(self):
        self.assertEqual(FoldedGraph(self.powers).rank, 2)
        self.assertEqual(FoldedGraph(P("a", "a^2")).rank, 1)
        self.assertEqual(FoldedGraph(P("a b a^-1", "a b^2 a^-1")).rank, 1)
        self.assertEqual(FoldedGraph([IDENTITY, parse_word("a")]).rank, 1)
        self.assertEqual(FoldedGraph([]).rank, 0)

    def test_folds_are_counted(self):
        graph = folded_graph(P("a b", "a c"))
        self.assertGreaterEqual(graph.folds, 1)
        self.assertEqual(graph.rank, 2)

    def test_same_subgroup(self):
        self.assertTrue(same_subgroup(P("a", "b"), P("a b", "b")))
        self.assertTrue(same_subgroup(P("a^2", "b"), P("b a^2 b^-1", "b")))
        self.assertFalse(same_subgroup(self.powers, P("a^2", "a^-1 b^3")))
        self.assertFalse(same_subgroup(self.powers, P("b a^2", "b^3")))

    def test_fold_order_does_not_matter(self):
        gens = P("a b a^-1 b^-1", "a^2 b", "b a b^-1 a")
        forms = {FoldedGraph(gens, seed=seed).canonical_form() for seed in range(8)}
        self.assertEqual(len(forms), 1)
        self.assertEqual(FoldedGraph(gens).canonical_form(), forms.pop())

    def test_fingerprint(self):
        first = FoldedGraph(self.powers).fingerprint_id()
        self.assertEqual(len(first), 16)
        self.assertEqual(first, FoldedGraph(P("b^3", "a^2")).fingerprint_id())
        self.assertNotEqual(first, FoldedGraph(P("a^2", "a^-1 b^3")).fingerprint_id())

    def test_variables_are_rejected(self):
        with self.assertRaises(DomainError):
            FoldedGraph([parse_word("x", kind=VARIABLE)])

    def test_nielsen(self):
        self.assertTrue(is_nielsen_reduced_pair(*self.powers))
        self.assertTrue(is_nielsen_reduced_pair(*P("a b", "a c a^-1")))
        self.assertFalse(is_nielsen_reduced_pair(*P("a", "a b")))
        self.assertTrue(any(v.startswith("N0") for v in nielsen_violations(*P("a b", "b^-1 a^-1"))))
        with self.assertRaises(DomainError):
            nielsen_violations(IDENTITY, parse_word("a"))

    def test_prefix_membership(self):
        result = verify_prefix_membership(parse_word("b^-1 a^-1 b^2 a b^-1"), parse_word("a"))
        self.assertTrue(result.holds)
        self.assertIsNone(result.offending_prefix)
        result = verify_prefix_membership(parse_word("a^2 b"), parse_word("a"))
        self.assertFalse(result.holds)
        self.assertEqual(format_word(result.offending_prefix), "a")


if __name__ == "__main__":
    unittest.main(verbosity=2)
