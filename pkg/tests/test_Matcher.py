import itertools
import math
import os
import unittest

from QuadraticEquations.datavalidation import DomainError
from QuadraticEquations.matcher import (
    MatchStats,
    assignment_key,
    cancellation_free_matches,
    candidate_bound,
    dedupe_matches,
    form_symmetries,
    is_cancellation_free,
)
from QuadraticEquations.verification import brute_force_matches
from QuadraticEquations.wicksenum import enumerate_wicks
from QuadraticEquations.wordcore import (
    VARIABLE,
    Letter,
    Substitution,
    Word,
    constant,
    format_word,
    is_cyclically_reduced,
    parse_word,
    variable,
)


def W(text):
    return parse_word(text, kind=VARIABLE)


class MatcherTestCase(unittest.TestCase):
    def setUp(self):
        self.handle = W("x y x^-1 y^-1")
        self.long_handle = W("x y z x^-1 y^-1 z^-1")
        self.x, self.y = variable("x"), variable("y")

    def test_commutator_matches_at_every_rotation(self):
        u = parse_word("a^-1 b^-1 a b")
        matches = cancellation_free_matches(self.handle, u)
        self.assertEqual(len(matches), 4)
        self.assertEqual([m.rotation_offset for m in matches], [0, 1, 2, 3])
        for m in matches:
            self.assertEqual(m.boundary_cuts[0], m.rotation_offset)
            self.assertTrue(all(len(img) == 1 for img in m.images()))
        self.assertEqual(len(dedupe_matches(matches)), 1)

    def test_witness_word_has_one_orbit(self):
        u = parse_word("b^-1 c^-1 b a c a^-1")
        matches = cancellation_free_matches(self.handle, u)
        self.assertEqual(len(matches), 4)
        self.assertEqual(cancellation_free_matches(self.long_handle, u), [])
        kept = dedupe_matches(matches)
        self.assertEqual(len(kept), 1)
        self.assertEqual(kept[0].rotation_offset, 4)
        self.assertEqual(format_word(kept[0].assignment.image(self.x)), "c")
        self.assertEqual(format_word(kept[0].assignment.image(self.y)), "a^-1 b^-1")
        self.assertEqual(kept[0].start_offset, 2)

    def test_matches_are_cancellation_free(self):
        u = parse_word("a^-1 c^-1 a b c b^-1")
        for m in cancellation_free_matches(self.handle, u):
            rotated = u[m.rotation_offset :] * u[: m.rotation_offset]
            self.assertTrue(is_cancellation_free(self.handle, m.assignment, rotated))

    def test_no_match_for_long_form(self):
        self.assertEqual(cancellation_free_matches(self.long_handle, parse_word("a^-1 b^-1 a b")), [])

    def test_is_cancellation_free(self):
        u = parse_word("a^-1 b^-1 a b")
        psi = Substitution({self.x: parse_word("a^-1"), self.y: parse_word("b^-1")})
        self.assertTrue(is_cancellation_free(self.handle, psi, u))
        psi = Substitution({self.x: parse_word("a^-1 b"), self.y: parse_word("b^-1")})
        self.assertEqual(psi.apply(self.handle), u)
        self.assertFalse(is_cancellation_free(self.handle, psi, u))
        psi = Substitution({self.x: parse_word("1"), self.y: parse_word("b")})
        self.assertFalse(is_cancellation_free(self.handle, psi, parse_word("1")))

    def test_candidate_bound(self):
        self.assertEqual(candidate_bound(4, 4), 4 * math.comb(8, 4))
        stats = MatchStats()
        for text in ("a^-1 b^-1 a b", "b^-1 c^-1 b a c a^-1", "a^-1 b^-1 c^-1 a b c"):
            u = parse_word(text)
            cancellation_free_matches(self.handle, u, stats=stats)
            cancellation_free_matches(self.long_handle, u, stats=stats)
        self.assertEqual(len(stats.runs), 6)
        self.assertTrue(stats.within_bound())
        self.assertLessEqual(stats.worst_ratio(), 1.0)

    def test_form_symmetries(self):
        self.assertEqual(len(form_symmetries(self.handle)), 4)
        self.assertEqual(len(form_symmetries(self.long_handle)), 6)
        self.assertEqual(len(form_symmetries(W("x x y y"))), 2)

    def test_assignment_key_is_shortlex(self):
        short = Substitution({self.x: parse_word("c"), self.y: parse_word("a b")})
        long = Substitution({self.x: parse_word("b a"), self.y: parse_word("c")})
        self.assertLess(assignment_key(self.handle, short), assignment_key(self.handle, long))

    def test_bad_input(self):
        with self.assertRaises(DomainError):
            cancellation_free_matches(W("x y"), parse_word("a b"))
        with self.assertRaises(DomainError):
            cancellation_free_matches(self.handle, parse_word("a b a^-1"))
        self.assertEqual(cancellation_free_matches(self.long_handle, parse_word("a b")), [])


def cyclically_reduced_words(max_length):
    letters = [Letter(constant(name), sign) for name in "ab" for sign in (1, -1)]
    for n in range(1, max_length + 1):
        for combo in itertools.product(letters, repeat=n):
            u = Word(combo)
            if len(u) == n and is_cyclically_reduced(u):
                yield u


class OracleTestCase(unittest.TestCase):
    def setUp(self):
        self.forms = [
            f.word
            for orientable, genus in ((True, 1), (False, 1), (False, 2))
            for f in enumerate_wicks(orientable, genus)
            if f.length <= 6
        ]

    def check_against_oracle(self, max_length):
        total = 0
        for u in cyclically_reduced_words(max_length):
            for form in self.forms:
                matches = cancellation_free_matches(form, u)
                found = {(m.rotation_offset, m.boundary_cuts, m.assignment) for m in matches}
                expected = brute_force_matches(form, u)
                self.assertEqual(found, expected, f"{form} against {u}")
                kept = {(m.rotation_offset, m.boundary_cuts, m.assignment) for m in dedupe_matches(matches)}
                self.assertLessEqual(kept, expected)
                self.assertEqual(bool(kept), bool(expected))
                total += len(expected)
        return total

    def test_forms_under_test(self):
        self.assertEqual(sorted(len(f) for f in self.forms), [2, 4, 4, 4, 6, 6, 6])

    def test_match_sets_agree_with_oracle(self):
        self.assertGreater(self.check_against_oracle(6), 0)

    def test_oracle_on_the_commutator(self):
        matches = brute_force_matches(parse_word("x y x^-1 y^-1", kind=VARIABLE), parse_word("a^-1 b^-1 a b"))
        self.assertEqual(sorted(offset for offset, _, _ in matches), [0, 1, 2, 3])

    @unittest.skipUnless(os.environ.get("RUN_SLOW_TESTS"), "exhaustive up to length 8")
    def test_match_sets_agree_with_oracle_up_to_eight(self):
        self.check_against_oracle(8)


if __name__ == "__main__":
    unittest.main(verbosity=2)
