import unittest

import numpy as np

from QuadraticEquations.datavalidation import DomainError, HypothesisViolationError
from QuadraticEquations.matcher import is_cancellation_free
from QuadraticEquations.normalizer import (
    CANCELLATION_SPLIT,
    REDUNDANCY,
    TRIVIAL_IMAGE_WHITEHEAD,
    TrackedAutomorphism,
    commutator_square_identity,
    crosscap_handle_squares,
    letter_substitution,
    partial_conjugation,
    reduce_solution,
    solution_measure,
    square_commutator_identity,
    squares_witness_from_commutators,
    standard_form,
    standard_form_automorphism,
    standard_form_word,
    standard_variables,
    three_squares,
)
from QuadraticEquations.quadraticsurface import is_quadratic, surface_data
from QuadraticEquations.wordcore import (
    VARIABLE,
    Letter,
    Substitution,
    Word,
    commutator,
    constant,
    format_word,
    is_cyclically_reduced,
    parse_word,
    product,
    random_word,
    variable,
)


def W(text):
    return parse_word(text, kind=VARIABLE)


def S(**images):
    return Substitution({variable(k): parse_word(v) for k, v in images.items()})


class StandardFormTestCase(unittest.TestCase):
    def setUp(self):
        self.words = [
            "x^-1 y^-1 x y",
            "x y x^-1 y^-1",
            "x y z x^-1 y^-1 z^-1",
            "x y z y^-1 x^-1 z^-1",
            "x^2",
            "x x y y",
            "x y x y^-1",
            "x y x y",
            "x y^-1 x y",
            "p q^-1 p^-1 s^-1 q s",
            "a b a^-1 b^-1 c d c^-1 d^-1",
            "x x y z y^-1 z^-1",
        ]

    def test_standard_variables(self):
        self.assertEqual([v.name for v in standard_variables(2, True)], ["x1", "y1", "x2", "y2"])
        self.assertEqual([v.name for v in standard_variables(3, False)], ["x1", "x2", "x3"])
        self.assertEqual(format_word(standard_form_word(1, True)), "x1^-1 y1^-1 x1 y1")
        self.assertEqual(format_word(standard_form_word(2, False)), "x1^2 x2^2")

    def test_every_word_reaches_its_standard_form(self):
        for text in self.words:
            w = W(text)
            data = surface_data(w)
            gamma = standard_form_automorphism(w)
            self.assertEqual(gamma.apply(w), standard_form_word(data.genus, data.orientable), text)
            self.assertTrue(gamma.round_trips(w), text)
            for v in w.variables():
                self.assertEqual(gamma.pull_back(gamma.apply(W(v.name))), W(v.name), text)

    def test_known_standard_forms(self):
        self.assertEqual(format_word(standard_form(W("x^-1 y^-1 x y"))), "x1^-1 y1^-1 x1 y1")
        self.assertEqual(format_word(standard_form(W("x y^-1 x y"))), "x1^2 x2^2")
        self.assertEqual(format_word(standard_form(W("x x y z y^-1 z^-1"))), "x1^2 x2^2 x3^2")

    def test_spare_variables(self):
        # x y x y loses y to a spare generator
        gamma = standard_form_automorphism(W("x y x y"))
        self.assertEqual(format_word(gamma.apply(W("x y x y"))), "x1^2")
        self.assertIn(variable("t1"), {s for v in ("x", "y") for s in gamma.apply(W(v)).symbols()})

    def test_round_trip_on_random_words(self):
        rng = np.random.default_rng(20237)
        for text in self.words:
            gamma = standard_form_automorphism(W(text))
            support = sorted(gamma.support, key=lambda s: s.sort_key)
            for _ in range(100):
                v = random_word(rng, support, int(rng.integers(1, 9)))
                self.assertEqual(gamma.pull_back(gamma.apply(v)), v, text)
                self.assertEqual(gamma.apply(gamma.pull_back(v)), v, text)

    def test_output_names_in_the_input(self):
        for text in ("x1 y x1^-1 y^-1", "x1^2 t1^2", "y1 x1 y1^-1 x1^-1 r1 t1 r1^-1 t1^-1"):
            w = W(text)
            data = surface_data(w)
            gamma = standard_form_automorphism(w)
            self.assertEqual(gamma.apply(w), standard_form_word(data.genus, data.orientable), text)
            self.assertTrue(gamma.round_trips(w), text)
        self.assertEqual(format_word(standard_form(W("x1 y x1^-1 y^-1"))), "x1^-1 y1^-1 x1 y1")

    def test_errors(self):
        with self.assertRaises(DomainError):
            standard_form_automorphism(W("x y"))
        with self.assertRaises(DomainError):
            standard_form_automorphism(W("x y x^-1 y^-1"), genus=2)
        with self.assertRaises(DomainError):
            standard_form_automorphism(W("x x"), orientable=True)
        with self.assertRaises(DomainError):
            standard_form_automorphism(parse_word("a a"))


class AutomorphismTestCase(unittest.TestCase):
    def test_letter_substitution(self):
        x = Letter(variable("x"), -1)
        move = letter_substitution(x, right=W("y"))
        # x^-1 -> x^-1 y, so x -> y^-1 x
        self.assertEqual(format_word(move.apply(W("x"))), "y^-1 x")
        self.assertTrue(move.round_trips(W("x y z x^-1")))
        with self.assertRaises(DomainError):
            letter_substitution(x, left=W("x y"))

    def test_partial_conjugation(self):
        move = partial_conjugation({variable("x"), variable("y")}, W("y"))
        self.assertEqual(format_word(move.apply(W("x"))), "y^-1 x y")
        self.assertEqual(format_word(move.apply(W("y"))), "y")
        self.assertTrue(move.round_trips(W("x y x^-1")))
        with self.assertRaises(DomainError):
            partial_conjugation({variable("x")}, W("z"))

    def random_automorphism(self, rng, w):
        """A chain of rotations and Whitehead moves ``X -> X Z^-1`` read off adjacent letters of ``w``."""
        alpha = TrackedAutomorphism()
        current = w
        for _ in range(int(rng.integers(1, 4))):
            n = len(current)
            i = int(rng.integers(n - 1))
            X, Z = current.letters[i], current.letters[i + 1]
            if rng.random() < 0.5 or X.symbol == Z.symbol:
                move = partial_conjugation(current.variables(), current[: i + 1])
            else:
                move = letter_substitution(X, right=Word((Z.inverse(),)))
            alpha = alpha.then(move)
            current = move.apply(current)
            if not is_quadratic(current) or not is_cyclically_reduced(current) or len(current) < 2:
                break
        return alpha

    def test_automorphisms_keep_euler_characteristic(self):
        rng = np.random.default_rng(20238)
        words = [W(t) for t in ("x y x^-1 y^-1", "x y z x^-1 y^-1 z^-1", "x x y y", "x y x y^-1", "x x y z y^-1 z^-1")]
        checked = 0
        for _ in range(100):
            w = words[int(rng.integers(len(words)))]
            alpha = self.random_automorphism(rng, w)
            image = alpha.apply(w)
            self.assertTrue(alpha.round_trips(w))
            if is_quadratic(image) and is_cyclically_reduced(image) and len(image):
                self.assertEqual(surface_data(image).chi, surface_data(w).chi, f"{w} -> {image}")
                self.assertEqual(surface_data(image).orientable, surface_data(w).orientable)
                checked += 1
        self.assertGreater(checked, 25)

    def test_then_composes_in_order(self):
        first = letter_substitution(Letter(variable("x"), 1), right=W("y"))
        second = letter_substitution(Letter(variable("y"), 1), right=W("z"))
        both = first.then(second)
        self.assertEqual(format_word(both.apply(W("x"))), "x y z")
        self.assertEqual(both.pull_back(both.apply(W("x y z"))), W("x y z"))


class ReduceSolutionTestCase(unittest.TestCase):
    def check(self, w, psi, u, result):
        w2, psi2, beta, trace = result
        self.assertTrue(trace.is_strictly_decreasing())
        self.assertTrue(is_cancellation_free(w2, psi2, u))
        self.assertEqual(beta.apply(w), w2)
        rebuilt = beta.forward.compose(psi2)
        for v in w.variables():
            self.assertEqual(rebuilt.image(v), psi.image(v))
        self.assertEqual(surface_data(w2).chi, surface_data(w).chi)

    def test_junction_cancellation(self):
        w = W("x^-1 y^-1 x y")
        psi = S(x="a b", y="b^-1 c")
        u = psi.apply(w)
        self.assertEqual(format_word(u), "b^-1 a^-1 c^-1 b a c")
        result = reduce_solution(w, psi, u)
        self.check(w, psi, u, result)
        self.assertEqual(format_word(result.word), "z1^-1 x^-1 y^-1 z1 x y")
        self.assertEqual(format_word(result.solution.image(variable("x"))), "a")
        self.assertEqual(format_word(result.solution.image(variable("y"))), "c")
        self.assertEqual(format_word(result.solution.image(variable("z1"))), "b")
        self.assertEqual(result.trace.kinds(), [CANCELLATION_SPLIT])

    def test_trivial_image(self):
        w = W("x^-1 y^-1 z^-1 x y z")
        psi = S(x="a", y="b", z="1")
        u = psi.apply(w)
        result = reduce_solution(w, psi, u)
        self.check(w, psi, u, result)
        self.assertEqual(format_word(result.word), "x^-1 y^-1 x y")
        self.assertEqual(result.trace.kinds(), [TRIVIAL_IMAGE_WHITEHEAD])

    def test_redundancy(self):
        w = W("x y x y")
        psi = S(x="a", y="b")
        u = psi.apply(w)
        result = reduce_solution(w, psi, u)
        self.check(w, psi, u, result)
        self.assertEqual(format_word(result.word), "x^2")
        self.assertEqual(format_word(result.solution.image(variable("x"))), "a b")
        self.assertEqual(result.trace.kinds(), [REDUNDANCY])

    def test_already_reduced(self):
        w = W("x^-1 y^-1 x y")
        psi = S(x="a", y="b")
        result = reduce_solution(w, psi, psi.apply(w))
        self.assertEqual(len(result.trace), 0)
        self.assertEqual(result.word, w)

    def test_genus_drop_is_reported(self):
        w = W("x^-1 y^-1 x y p^-1 q^-1 p q")
        psi = S(x="c", y="1", p="a", q="b")
        with self.assertRaises(HypothesisViolationError) as ctx:
            reduce_solution(w, psi, psi.apply(w))
        self.assertEqual(ctx.exception.move_kind, TRIVIAL_IMAGE_WHITEHEAD)

    def test_measure(self):
        self.assertEqual(solution_measure(W("x y x y"), S(x="a", y="b c")), (3, 2))

    def test_bad_input(self):
        w = W("x^-1 y^-1 x y")
        psi = S(x="a", y="b")
        with self.assertRaises(DomainError):
            reduce_solution(w, psi, parse_word("a b a^-1"))
        with self.assertRaises(DomainError):
            reduce_solution(w, S(x="a"), psi.apply(w))
        with self.assertRaises(DomainError):
            reduce_solution(w, psi, parse_word("a^-1 b^-1 a c"))
        with self.assertRaises(DomainError):
            reduce_solution(W("x y"), psi, parse_word("a b"))


class IdentityTestCase(unittest.TestCase):
    def setUp(self):
        self.rng = np.random.default_rng(20231)
        self.letters = [constant(n) for n in "abc"]

    def random(self):
        return random_word(self.rng, self.letters, int(self.rng.integers(1, 6)))

    def test_three_squares(self):
        for _ in range(50):
            u, v = self.random(), self.random()
            p, q, r = three_squares(u, v)
            self.assertEqual(p * p * q * q * r * r, commutator(u, v))

    def test_crosscap_handle_squares(self):
        for _ in range(50):
            c, a, b = self.random(), self.random(), self.random()
            p, q, r = crosscap_handle_squares(c, a, b)
            self.assertEqual(p * p * q * q * r * r, c * c * commutator(a, b))

    def test_square_and_commutator_identities(self):
        for _ in range(50):
            s, t = self.random(), self.random()
            p, q = square_commutator_identity(s, t)
            self.assertEqual(p * p * q * q, commutator(s * s, t))
            r, w = commutator_square_identity(s, t)
            self.assertEqual(commutator(r, w), commutator(s, t * t))

    def test_squares_witness(self):
        for h in (1, 2, 3):
            pairs = [(self.random(), self.random()) for _ in range(h)]
            roots = squares_witness_from_commutators(pairs)
            self.assertEqual(len(roots), 2 * h + 1)
            self.assertEqual(product(r * r for r in roots), product(commutator(a, b) for a, b in pairs))

    def test_the_commutator_of_generators(self):
        p, q, r = three_squares(parse_word("a"), parse_word("b"))
        self.assertEqual([format_word(x) for x in (p, q, r)], ["a^-1", "a b^-1", "b"])


if __name__ == "__main__":
    unittest.main(verbosity=2)
