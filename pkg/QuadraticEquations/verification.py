"""
Witness families, independent oracles and the reproduction suite.

``run_paper_suite`` runs every published claim the package can check
mechanically and returns a ``VerificationReport``. Randomized claims draw from
``numpy.random.default_rng`` with the seeds in ``settings.DEFAULT_RANDOM_SEEDS``,
so a report is reproducible.
"""

# Standard library imports
import itertools
import logging
import math
import os
import string
from dataclasses import dataclass, field
from typing import List, Optional

# Third Party Imports
import numpy as np

# Local Application Imports
from QuadraticEquations import settings
from QuadraticEquations.datavalidation import (
    DomainError,
    HypothesisViolationError,
    QuadraticEquationError,
    SearchBudgetExceeded,
    TableUnavailableError,
    assert_non_negative_integer,
    assert_positive_integer,
)
from QuadraticEquations.matcher import (
    MatchStats,
    cancellation_free_matches,
    dedupe_matches,
    is_cancellation_free,
)
from QuadraticEquations.normalizer import (
    commutator_square_identity,
    reduce_solution,
    square_commutator_identity,
    three_squares,
)
from QuadraticEquations.quadraticsurface import classify_quadratic, surface_data
from QuadraticEquations.solver import (
    RESOLVED_DISTINCT,
    genus_minus,
    genus_plus,
    solve_commutators,
    solve_squares,
)
from QuadraticEquations.subgroups import (
    FoldedGraph,
    is_nielsen_reduced_pair,
    same_subgroup,
    verify_prefix_membership,
)
from QuadraticEquations.wicksenum import canonical_form, enumerate_wicks, form_table, forms_up_to_length
from QuadraticEquations.wordcore import (
    VARIABLE,
    CyclicWord,
    IDENTITY,
    Letter,
    Substitution,
    Word,
    as_word,
    commutator,
    constant,
    cyclic_reduce,
    format_substitution,
    in_commutator_subgroup,
    in_square_subgroup,
    is_cyclically_reduced,
    parse_word,
    product,
    random_cyclically_reduced_word,
    random_word,
    rotate,
    variable,
    word_power,
)

logger = logging.getLogger(__name__)

PASS = "PASS"
FAIL = "FAIL"
SKIPPED = "SKIPPED"

X1, Y1 = variable("x1"), variable("y1")


def _run(prefix, indices, sign=1):
    return [Letter(constant(f"{prefix}{i}"), sign) for i in indices]


def witness_u1(n):
    """``b_n^-1..b_1^-1 c_1^-1 b_1..b_n a_1..a_n c_1 a_n^-1..a_1^-1``, of length 4n + 2."""
    assert_positive_integer(n, "n")
    up, down = range(1, n + 1), range(n, 0, -1)
    letters = (
        _run("b", down, -1)
        + [Letter(constant("c1"), -1)]
        + _run("b", up)
        + _run("a", up)
        + [Letter(constant("c1"), 1)]
        + _run("a", down, -1)
    )
    return Word(tuple(letters))


def witness_u1_representative(n):
    """The short solution ``x = a_1..a_n b_1..b_n``, ``y = a_1..a_n c_1 a_n^-1..a_1^-1``."""
    assert_positive_integer(n, "n")
    A = Word(tuple(_run("a", range(1, n + 1))))
    B = Word(tuple(_run("b", range(1, n + 1))))
    c = Word((Letter(constant("c1"), 1),))
    return Substitution({X1: A * B, Y1: A * c * A.inverse()})


def witness_u2(n):
    """``a^-1.. b^-1.. c^-1.. a.. b.. c..`` with runs of length n, of length 6n."""
    assert_positive_integer(n, "n")
    up, down = range(1, n + 1), range(n, 0, -1)
    letters = []
    for prefix in "abc":
        letters += _run(prefix, down, -1)
    for prefix in "abc":
        letters += _run(prefix, up)
    return Word(tuple(letters))


def witness_u2_rotation(n, i):
    """The rotation of ``witness_u2(n)`` solved by ``u2_rotation_representative(n, i)``, 0 <= i <= n."""
    assert_non_negative_integer(i, "i")
    if i > n:
        raise DomainError(f"The rotation index should be at most n={n}, not {i}.")
    return rotate(witness_u2(n), n - i)


def u2_rotation_representative(n, i):
    """
    Closed-form short solution for a rotation of ``witness_u2(n)``.

    ``x = a_{i+1}..a_n b_1..b_n a_1..a_i`` and
    ``y = a_i^-1..a_1^-1 c_1..c_n a_n^-1..a_{i+1}^-1``; ``|x| + |y| = 4n``.
    """
    assert_positive_integer(n, "n")
    x = _run("a", range(i + 1, n + 1)) + _run("b", range(1, n + 1)) + _run("a", range(1, i + 1))
    y = _run("a", range(i, 0, -1), -1) + _run("c", range(1, n + 1)) + _run("a", range(n, i, -1), -1)
    return Substitution({X1: Word(tuple(x)), Y1: Word(tuple(y))})


def powers_family(m, n, u=None, v=None):
    """
    The equation ``[x, y] = [U^m, V^n]`` and its ``m + n - 1`` closed-form solutions.

    Returns
    -------
    tuple
        ``(right-hand side, list of Substitution)``: ``x = U^m, y = U^-i V^n``
        for ``0 <= i < m``, then ``x = V^j U^m, y = V^n`` for ``0 < j < n``.
    """
    assert_positive_integer(m, "m")
    assert_positive_integer(n, "n")
    u = u if u is not None else parse_word("a")
    v = v if v is not None else parse_word("b")
    Um, Vn = word_power(u, m), word_power(v, n)
    reps = [Substitution({X1: Um, Y1: word_power(u, -i) * Vn}) for i in range(m)]
    reps += [Substitution({X1: word_power(v, j) * Um, Y1: Vn}) for j in range(1, n)]
    return commutator(Um, Vn), reps


def even_powers_family(exponents):
    """
    ``x1^2 ... xg^2 = a^(2 n_1) b^(2 n_2) ...`` and its solution ``x_i = a_i^(n_i)``.

    Returns
    -------
    tuple
        ``(right-hand side, Substitution)``.
    """
    exponents = list(exponents)
    assert_positive_integer(len(exponents), "number of exponents")
    if len(exponents) > len(string.ascii_lowercase):
        raise DomainError("At most 26 exponents are supported.")
    images = {}
    for i, (name, k) in enumerate(zip(string.ascii_lowercase, exponents), 1):
        assert_positive_integer(k, f"exponent {i}")
        images[variable(f"x{i}")] = word_power(parse_word(name), k)
    u = product(img * img for img in images.values())
    return u, Substitution(images)


@dataclass(frozen=True)
class BefCandidate:
    """Short solutions read off one genus-one match."""

    rep: Substitution
    rotation: int
    rotated_rep: Substitution


def _split_images(match):
    images = match.images()
    j = match.start_offset
    start = 0
    for i, img in enumerate(images):
        if start <= j < start + len(img):
            return images[i:] + images[:i], j - start
        start += len(img)
    raise QuadraticEquationError("The start offset lies outside the match.")


def bef_representatives(u):
    """
    Short solutions of ``[x, y] = u`` and of ``[x, y] = u*`` for a rotation ``u*``.

    Every genus-one match of ``u`` spells a rotation ``X^-1 Y^-1 X Y`` or
    ``X^-1 Y^-1 Z^-1 X Y Z``; cutting ``X = X_1 X_2`` where ``u`` starts gives
    ``[X_2 X_1, X_1^-1 Y X_2^-1]`` (resp. ``[X_2 Y X_1, X_1^-1 Z X_2^-1]``).
    The rotation starting at the cut is solved with lengths summing to at
    most ``2|u|/3``.

    Returns
    -------
    list of BefCandidate
    """
    u = as_word(u)
    n = len(u)
    forms = forms_up_to_length(True, 1, n)
    matches = dedupe_matches([m for f in forms for m in cancellation_free_matches(f.word, u)])
    out = []
    for match in matches:
        I, r = _split_images(match)
        X2, X1w = I[0][:r].inverse(), I[0][r:].inverse()
        X, Y = I[0].inverse(), I[1].inverse()
        if len(I) == 4:
            rep = {X1: X2 * X1w, Y1: X1w.inverse() * Y * X2.inverse()}
            star = {X1: X, Y1: Y}
        else:
            Z = I[2].inverse()
            rep = {X1: X2 * Y * X1w, Y1: X1w.inverse() * Z * X2.inverse()}
            shortest = min(range(3), key=lambda k: len((X, Y, Z)[k]))
            star = [
                {X1: Y * X, Y1: X.inverse() * Z},
                {X1: Y * X, Y1: Y * Z},
                {X1: Z.inverse() * X, Y1: Y * Z},
            ][shortest]
        rotation = (n - r) % n
        candidate = BefCandidate(Substitution(rep), rotation, Substitution(star))
        if commutator(rep[X1], rep[Y1]) != u or commutator(star[X1], star[Y1]) != rotate(u, rotation):
            raise QuadraticEquationError(f"Short solutions read off a match of '{u}' do not solve it.")
        out.append(candidate)
    return out


@dataclass(frozen=True)
class BefReport:
    part_i: bool
    part_ii: bool
    rep: Optional[Substitution] = None
    rotation: Optional[int] = None
    rotated_rep: Optional[Substitution] = None


def _lengths(rep):
    return len(rep.image(X1)), len(rep.image(Y1))


def verify_bef(u):
    """
    Check the length bounds for genus-one words.

    (i) some solution of ``[x, y] = u`` has ``|x|, |y| <= |u|/2`` and
    ``|x| + |y| <= |u| - 1``; (ii) some rotation ``u*`` has a solution with
    ``|x|, |y| <= |u|/2 - 1`` and ``|x| + |y| <= 2|u|/3``.

    Raises
    ------
    DomainError
        If ``u`` is not cyclically reduced or genus+(u) is not 1.
    """
    u = as_word(u)
    if not len(u) or not is_cyclically_reduced(u):
        raise DomainError(f"'{u}' should be nontrivial and cyclically reduced.")
    if genus_plus(u).value != 1:
        raise DomainError(f"'{u}' does not have genus one.")
    n = len(u)
    part_i = part_ii = None
    for candidate in bef_representatives(u):
        x, y = _lengths(candidate.rep)
        if part_i is None and 2 * x <= n and 2 * y <= n and x + y <= n - 1:
            part_i = candidate
        x, y = _lengths(candidate.rotated_rep)
        if part_ii is None and 2 * x <= n - 2 and 2 * y <= n - 2 and 3 * (x + y) <= 2 * n:
            part_ii = candidate
    return BefReport(
        part_i=part_i is not None,
        part_ii=part_ii is not None,
        rep=part_i.rep if part_i else None,
        rotation=part_ii.rotation if part_ii else None,
        rotated_rep=part_ii.rotated_rep if part_ii else None,
    )


def _pairings(length):
    """Every quadratic letter sequence on ``length`` letters, labelled by first appearance."""
    slots = [None] * length

    def fill(next_index):
        try:
            first = slots.index(None)
        except ValueError:
            yield tuple(slots)
            return
        v = variable(f"v{next_index}")
        slots[first] = Letter(v, 1)
        for other in range(first + 1, length):
            if slots[other] is not None:
                continue
            for sign in (1, -1):
                slots[other] = Letter(v, sign)
                yield from fill(next_index + 1)
            slots[other] = None
        slots[first] = None

    return fill(1)


def _quadratic_words(length):
    for letters in _pairings(length):
        w = Word(letters)
        if len(w) == length and is_cyclically_reduced(w):
            yield w


def _factorizations(form_letters, target):
    """Naive factorization over every rotation and every set of cut points."""
    k, n = len(form_letters), len(target)
    for offset in range(n):
        rotated = target[offset:] + target[:offset]
        for cuts in itertools.combinations(range(1, n), k - 1):
            bounds = (0,) + cuts + (n,)
            images = {}
            ok = True
            for letter, a, b in zip(form_letters, bounds, bounds[1:]):
                piece = rotated[a:b]
                if letter.sign < 0:
                    piece = tuple(l.inverse() for l in reversed(piece))
                if images.setdefault(letter.symbol, piece) != piece:
                    ok = False
                    break
            if ok:
                yield offset, bounds[:-1], images


def _spells(form_letters, target):
    return next(_factorizations(form_letters, target), None) is not None


def brute_force_matches(form, u):
    """
    Every cancellation-free match of ``form`` in the cyclic word ``u``, by exhaustion.

    Tries every anchoring of the first letter and every set of cut points,
    without the matcher's backtracking.

    Returns
    -------
    set of tuple
        ``(rotation_offset, boundary_cuts, Substitution)`` in the layout of
        ``matcher.Match``.
    """
    form, u = as_word(form), as_word(u)
    n = len(u)
    return {
        (offset, tuple((c + offset) % n for c in cuts), Substitution({s: Word(p) for s, p in images.items()}))
        for offset, cuts, images in _factorizations(form.letters, u.letters)
    }


def brute_force_genus(u, orientable):
    """
    genus+ or genus- by exhaustive search over every quadratic word.

    Independent of the Wicks tables and the matcher; only usable for short
    words.
    """
    u = as_word(u)
    core, _ = cyclic_reduce(u)
    if not len(core):
        return 0
    if orientable and not in_commutator_subgroup(core):
        return math.inf
    if not orientable and not in_square_subgroup(core):
        return math.inf
    best = math.inf
    for length in range(2, len(core) + 1, 2):
        for w in _quadratic_words(length):
            data = surface_data(w)
            if data.orientable != orientable or data.genus >= best:
                continue
            if _spells(w.letters, core.letters):
                best = data.genus
    if not orientable and in_commutator_subgroup(core):
        best = min(best, 2 * brute_force_genus(core, True) + 1)
    return best


@dataclass(frozen=True)
class ClaimResult:
    claim_id: str
    status: str
    details: str = ""


@dataclass
class VerificationReport:
    claims: List[ClaimResult] = field(default_factory=list)

    def add(self, claim_id, status, details=""):
        self.claims.append(ClaimResult(claim_id, status, details))

    @property
    def passed(self):
        return all(c.status != FAIL for c in self.claims)

    def counts(self):
        return {s: sum(c.status == s for c in self.claims) for s in (PASS, FAIL, SKIPPED)}

    def as_dict(self):
        return {
            "passed": self.passed,
            "counts": self.counts(),
            "claims": [{"id": c.claim_id, "status": c.status, "details": c.details} for c in self.claims],
        }


def _alphabet(size=2):
    return [constant(name) for name in string.ascii_lowercase[:size]]


def _outcome(ok, details):
    return (PASS if ok else FAIL), details


class _Suite:
    """The fixed list of claims; each method returns ``(status, details)``."""

    def __init__(self, skip_slow, table_dir, limits, seeds, sizes):
        self.skip_slow = skip_slow
        self.table_dir = table_dir
        self.limits = {**settings.DEFAULT_SEARCH_LIMITS, **(limits or {})}
        self.seeds = {**settings.DEFAULT_RANDOM_SEEDS, **(seeds or {})}
        self.sizes = {**settings.DEFAULT_SUITE_SIZES, **(sizes or {})}
        self.stats = MatchStats()

    def _kw(self):
        return {"table_dir": self.table_dir, "limits": self.limits, "stats": self.stats}

    def _rng(self, name):
        return np.random.default_rng(self.seeds[name])

    def _table(self, orientable, genus, maximal_only=False):
        # persisted tables are hash-checked and regenerated when tampered with
        table = form_table(
            orientable,
            genus,
            table_dir=self.table_dir,
            maximal_only=maximal_only,
            node_budget=self.limits["enumeration_node_budget"],
        )
        return list(table.forms)

    def wicks_o1_count(self):
        forms = self._table(True, 1)
        return _outcome(len(forms) == 2, ", ".join(str(f) for f in forms))

    def wicks_n1_count(self):
        forms = self._table(False, 1)
        return _outcome(len(forms) == 1, ", ".join(str(f) for f in forms))

    def wicks_n2_count(self):
        forms = self._table(False, 2)
        return _outcome(len(forms) == 4, ", ".join(str(f) for f in forms))

    def wicks_o2_maximal(self):
        if self.skip_slow:
            return SKIPPED, "slow"
        forms = self._table(True, 2, maximal_only=True)
        ok = len(forms) == 9 and all(f.length == 18 for f in forms)
        return _outcome(ok, f"{len(forms)} maximal forms")

    def wicks_brute_force_oracle(self):
        top = self.sizes["wicks_oracle_length"]
        found = []
        for orientable, genus in ((True, 1), (False, 1), (False, 2)):
            classes = set()
            for length in range(2, top + 1, 2):
                for w in _quadratic_words(length):
                    report = classify_quadratic(w)
                    data = surface_data(w)
                    if report.irredundant and data.orientable == orientable and data.genus == genus:
                        classes.add(canonical_form(w))
            listed = {f.form for f in enumerate_wicks(orientable, genus)}
            found.append(classes == listed)
        return _outcome(all(found), f"agreement per table up to length {top}: {found}")

    def _oracle_disagreement(self, forms, u):
        for form in forms:
            ours = {(m.rotation_offset, m.boundary_cuts, m.assignment) for m in cancellation_free_matches(form, u)}
            if ours != brute_force_matches(form, u):
                return f"{form} against {u}"
        return None

    def matcher_brute_force_oracle(self):
        forms = [
            f.word
            for orientable, genus in ((True, 1), (False, 1), (False, 2))
            for f in enumerate_wicks(orientable, genus)
            if f.length <= 6
        ]
        key = "match_oracle_length_fast" if self.skip_slow else "match_oracle_length"
        length = self.sizes[key]
        letters = _alphabet(2)
        checked = 0
        for n in range(1, length + 1):
            for u in _all_words(letters, n):
                if not is_cyclically_reduced(u):
                    continue
                bad = self._oracle_disagreement(forms, u)
                if bad:
                    return FAIL, f"matcher and oracle differ for {bad}"
                checked += 1
        rng = self._rng("matcher_brute_force_oracle")
        samples = self.sizes["match_oracle_samples"] if not self.skip_slow else self.sizes["match_oracle_samples"] // 10
        for _ in range(samples):
            u = random_cyclically_reduced_word(rng, _alphabet(3), int(rng.integers(length + 1, length + 5)))
            bad = self._oracle_disagreement(forms, u)
            if bad:
                return FAIL, f"matcher and oracle differ for {bad}"
        return PASS, f"{checked} words up to length {length} and {samples} random longer words, {len(forms)} forms"

    def genus_table(self):
        ab = parse_word("a^-1 b^-1 a b")
        expected = [
            (genus_plus(ab, **self._kw()).value, 1),
            (genus_minus(ab, **self._kw()).value, 3),
            (genus_minus(ab * ab, **self._kw()).value, 1),
            (genus_plus(ab * ab, **self._kw()).value, 2),
        ]
        return _outcome(all(a == b for a, b in expected), f"(got, expected): {expected}")

    def power_commutator(self, m, n):
        # the solver's representatives are not spelled like the closed-form family;
        # classes are paired through the canonical folded graph of <x, y>
        u, family = powers_family(m, n)
        reps = solve_commutators(u, **self._kw())
        ours = [FoldedGraph(r.images()).canonical_form() for r in reps]
        theirs = [FoldedGraph(s.image(v) for v in (X1, Y1)).canonical_form() for s in family]
        ok = (
            len(reps) == m + n - 1
            and all(r.distinctness == RESOLVED_DISTINCT for r in reps)
            and sorted(ours) == sorted(theirs)
            and all(commutator(s[X1], s[Y1]) == u for s in family)
        )
        return _outcome(
            ok,
            f"{len(reps)} classes, expected {m + n - 1}; matched to the closed-form family "
            f"({', '.join('{' + format_substitution(s) + '}' for s in family)}) by subgroup fingerprint",
        )

    def even_powers(self, exponents):
        u, expected = even_powers_family(exponents)
        reps, complete = solve_squares(u, **self._kw())
        ok = (
            complete
            and len(reps) == 1
            and same_subgroup(reps[0].images(), [expected.image(v) for v in reps[0].variables])
        )
        return _outcome(ok, f"{len(reps)} classes, complete={complete}")

    def single_class_commutator(self):
        U, V = parse_word("b^-1 a^-1 b^2 a b^-1"), parse_word("a")
        reps = solve_commutators(commutator(U, V), **self._kw())
        ok = len(reps) == 1 and same_subgroup(reps[0].images(), [U, V])
        return _outcome(ok, f"{len(reps)} classes")

    def three_squares_identity(self):
        rng = self._rng("three_squares_identity")
        letters = _alphabet(3)
        for _ in range(self.sizes["identity_samples"]):
            U = random_word(rng, letters, int(rng.integers(1, 7)))
            V = random_word(rng, letters, int(rng.integers(1, 7)))
            p, q, r = three_squares(U, V)
            if p * p * q * q * r * r != commutator(U, V):
                return FAIL, f"fails for U={U}, V={V}"
        return PASS, f"{self.sizes['identity_samples']} random pairs"

    def two_squares_display(self):
        p = parse_word("b a^-1 b^-1 a^-1 b^-1 a b a b^-1")
        q = parse_word("b a^-1 b^-1 a^-1 b^2 a b^-1 a")
        target = commutator(parse_word("b^-1 a^-1 b^2 a b^-1"), parse_word("a"))
        return _outcome(p * p * q * q == target, str(target))

    def square_commutator_identities(self):
        rng = self._rng("three_squares_identity")
        letters = _alphabet(3)
        for _ in range(self.sizes["identity_samples"]):
            S = random_word(rng, letters, int(rng.integers(1, 6)))
            T = random_word(rng, letters, int(rng.integers(1, 6)))
            p, q = square_commutator_identity(S, T)
            r, s = commutator_square_identity(S, T)
            if p * p * q * q != commutator(S * S, T) or commutator(r, s) != commutator(S, T * T):
                return FAIL, f"fails for {S}, {T}"
        return PASS, f"{self.sizes['identity_samples']} random pairs"

    def prefix_membership(self):
        result = verify_prefix_membership(parse_word("b^-1 a^-1 b^2 a b^-1"), parse_word("a"))
        return _outcome(result.holds, f"offending prefix: {result.offending_prefix}")

    def bef_sharp_u1(self):
        details = []
        for n in (1, 2, 3):
            u = witness_u1(n)
            reps = solve_commutators(u, **self._kw())
            short = witness_u1_representative(n)
            images = [short[X1], short[Y1]]
            ok = (
                len(reps) == 1
                and commutator(*images) == u
                and same_subgroup(reps[0].images(), images)
                and sum(len(i) for i in images) == len(u) - 1
                and is_nielsen_reduced_pair(*images)
            )
            details.append(ok)
        return _outcome(all(details), f"n=1..3: {details}")

    def bef_sharp_u2(self):
        details = []
        for n in (1, 2, 3):
            for i in range(n + 1):
                u = witness_u2_rotation(n, i)
                short = u2_rotation_representative(n, i)
                images = [short[X1], short[Y1]]
                reps = solve_commutators(u, **self._kw())
                ok = (
                    len(reps) == 1
                    and commutator(*images) == u
                    and same_subgroup(reps[0].images(), images)
                    and 3 * sum(len(w) for w in images) == 2 * len(u)
                )
                details.append(ok)
            rotations = {len(solve_commutators(rotate(witness_u2(n), k), **self._kw())) for k in range(6 * n)}
            details.append(rotations == {1})
        return _outcome(all(details), f"{sum(details)}/{len(details)} checks")

    def _random_genus_one(self, rng, letters):
        form = rng.choice(["x y x^-1 y^-1", "x y z x^-1 y^-1 z^-1"])
        w = parse_word(str(form), kind=VARIABLE)
        psi = Substitution({v: random_word(rng, letters, int(rng.integers(1, 4))) for v in w.variables()})
        core, _ = cyclic_reduce(psi.apply(w))
        return core

    def bef_bounds_random(self):
        rng = self._rng("bef_bounds_random")
        letters = _alphabet(3)
        target = self.sizes["bef_samples"] if not self.skip_slow else max(1, self.sizes["bef_samples"] // 10)
        tested = attempts = 0
        while tested < target and attempts < 20 * target:
            attempts += 1
            u = self._random_genus_one(rng, letters)
            if not len(u) or genus_plus(u, **self._kw()).value != 1:
                continue
            report = verify_bef(u)
            if not (report.part_i and report.part_ii):
                return FAIL, f"bounds fail for {u}"
            tested += 1
        return _outcome(tested == target, f"{tested} random genus-one words")

    _REDUCTION_FORMS = (
        "x y x^-1 y^-1",
        "x y z x^-1 y^-1 z^-1",
        "x x",
        "x x y y",
        "x y x y^-1",
        "x y x y",
        "x y z y^-1 x^-1 z^-1",
    )

    def _random_solution(self, rng, letters):
        w = parse_word(str(rng.choice(self._REDUCTION_FORMS)), kind=VARIABLE)
        images = {v: random_word(rng, letters, int(rng.integers(1, 4))) for v in w.variables()}
        for p, q in zip(w.letters, w.letters[1:]):
            if p.symbol == q.symbol or rng.random() >= 0.3:
                continue
            a = Word((_alphabet_letter(rng, letters),))
            # signed image of p ends with a, signed image of q starts with a^-1
            images[p.symbol] = images[p.symbol] * a if p.sign > 0 else a.inverse() * images[p.symbol]
            images[q.symbol] = a.inverse() * images[q.symbol] if q.sign > 0 else images[q.symbol] * a
        for v in w.variables():
            if rng.random() < 0.2:
                images[v] = IDENTITY
        return w, Substitution(images)

    def _hypothesis_holds(self, w, u):
        data = surface_data(w)
        if data.orientable:
            return genus_plus(u, **self._kw()).value == data.genus
        plus = genus_plus(u, **self._kw()).value
        return genus_minus(u, **self._kw()).value == data.genus and 2 * plus >= data.genus

    def reduction_procedure(self):
        rng = self._rng("reduction_procedure")
        letters = _alphabet(3)
        target = self.sizes["reduction_samples"] if not self.skip_slow else max(1, self.sizes["reduction_samples"] // 10)
        tested = attempts = 0
        while tested < target and attempts < 50 * target:
            attempts += 1
            w, psi = self._random_solution(rng, letters)
            u = psi.apply(w)
            if not len(u) or not is_cyclically_reduced(u) or not self._hypothesis_holds(w, u):
                continue
            try:
                w2, psi2, beta, trace = reduce_solution(w, psi, u)
            except HypothesisViolationError as exc:
                return FAIL, f"{w} with {psi}: {exc}"
            rebuilt = beta.forward.compose(psi2)
            ok = (
                trace.is_strictly_decreasing()
                and is_cancellation_free(w2, psi2, u)
                and all(rebuilt.image(v) == psi.image(v) for v in w.variables())
                and beta.apply(w) == w2
            )
            if not ok:
                return FAIL, f"bookkeeping fails for {w} with {psi}"
            tested += 1
        return _outcome(tested == target, f"{tested} random solutions reduced")

    def genus_inequality(self):
        rng = self._rng("genus_inequality")
        letters = _alphabet(2)
        samples = self.sizes["inequality_samples"] if not self.skip_slow else 50
        top = self.sizes["inequality_max_length"] if not self.skip_slow else 8
        for _ in range(samples):
            half = random_word(rng, letters, int(rng.integers(1, top // 2 + 1)))
            shuffled = [half.letters[k].inverse() for k in rng.permutation(len(half))]
            u = half * Word(tuple(shuffled))
            if not len(u):
                continue
            plus = genus_plus(u, **self._kw()).value
            minus = genus_minus(u, **self._kw()).value
            if minus > 2 * plus + 1:
                return FAIL, f"genus-({u}) = {minus} > 2 * {plus} + 1"
        return PASS, f"{samples} random words in H'"

    def commutator_never_square(self):
        rng = self._rng("commutator_never_square")
        letters = _alphabet(2)
        tested = 0
        while tested < self.sizes["commutator_samples"]:
            P = random_word(rng, letters, int(rng.integers(1, 4)))
            Q = random_word(rng, letters, int(rng.integers(1, 4)))
            u = commutator(P, Q)
            if not len(u):
                continue
            if genus_minus(u, **self._kw()).value == 1:
                return FAIL, f"[{P}, {Q}] is a square"
            tested += 1
        return PASS, f"{tested} random commutators"

    def candidate_bound(self):
        return _outcome(self.stats.within_bound(), f"worst ratio {self.stats.worst_ratio():.4f} over {len(self.stats.runs)} runs")

    def brute_force(self):
        length = self.sizes["brute_force_length_fast"] if self.skip_slow else self.sizes["brute_force_length"]
        letters = _alphabet(2)
        seen = set()
        checked = 0
        for n in range(1, length + 1):
            for w in _all_words(letters, n):
                if not is_cyclically_reduced(w) or not in_square_subgroup(w):
                    continue
                key = CyclicWord(w)
                if key in seen:
                    continue
                seen.add(key)
                ours = (genus_plus(w, **self._kw()).value, genus_minus(w, **self._kw()).value)
                oracle = (brute_force_genus(w, True), brute_force_genus(w, False))
                if ours != oracle:
                    return FAIL, f"{w}: solver {ours}, oracle {oracle}"
                checked += 1
        return PASS, f"{checked} cyclic words up to length {length}"


def _alphabet_letter(rng, symbols):
    symbol = symbols[int(rng.integers(len(symbols)))]
    return Letter(symbol, 1 if rng.random() < 0.5 else -1)


def _all_words(symbols, n):
    letters = [Letter(s, sign) for s in symbols for sign in (1, -1)]
    for combo in itertools.product(letters, repeat=n):
        w = Word(combo)
        if len(w) == n:
            yield w


def _claims(suite):
    return [
        ("wicks-o1-count", suite.wicks_o1_count),
        ("wicks-n1-count", suite.wicks_n1_count),
        ("wicks-n2-count", suite.wicks_n2_count),
        ("wicks-o2-maximal", suite.wicks_o2_maximal),
        ("wicks-brute-force-oracle", suite.wicks_brute_force_oracle),
        ("matcher-brute-force-oracle", suite.matcher_brute_force_oracle),
        ("genus-table", suite.genus_table),
        ("power-commutator-m2n3", lambda: suite.power_commutator(2, 3)),
        ("power-commutator-m1n1", lambda: suite.power_commutator(1, 1)),
        ("power-commutator-m3n2", lambda: suite.power_commutator(3, 2)),
        ("even-powers-g2", lambda: suite.even_powers((1, 2))),
        ("even-powers-g3", lambda: suite.even_powers((2, 1, 3))),
        ("single-class-commutator", suite.single_class_commutator),
        ("three-squares-identity", suite.three_squares_identity),
        ("two-squares-display", suite.two_squares_display),
        ("square-commutator-identities", suite.square_commutator_identities),
        ("prefix-membership", suite.prefix_membership),
        ("bef-sharp-u1", suite.bef_sharp_u1),
        ("bef-sharp-u2", suite.bef_sharp_u2),
        ("bef-bounds-random", suite.bef_bounds_random),
        ("reduction-procedure", suite.reduction_procedure),
        ("genus-inequality", suite.genus_inequality),
        ("commutator-never-square", suite.commutator_never_square),
        ("brute-force-genus", suite.brute_force),
        # last, so it sees every matcher run above
        ("candidate-bound", suite.candidate_bound),
    ]


CLAIM_IDS = tuple(claim_id for claim_id, _ in _claims(_Suite(True, None, None, None, None)))


def run_paper_suite(skip_slow=False, table_dir=None, limits=None, seeds=None, sizes=None, only=None):
    """
    Run every claim of the reproduction suite.

    Parameters
    ----------
    skip_slow : bool, default False
        Skip the maximal genus-two census and shrink the randomized samples.
    table_dir : path, optional
        Form-table directory; defaults to ``settings.default_table_dir()``.
    limits, seeds, sizes : dict, optional
        Overrides of the ``settings`` defaults.
    only : iterable of str, optional
        Run just these claim ids.

    Returns
    -------
    VerificationReport
        Claims that run out of search budget are SKIPPED, not FAILED.
    """
    table_dir = table_dir if table_dir is not None else os.environ.get(settings.TABLE_DIR_ENV)
    suite = _Suite(skip_slow, table_dir, limits, seeds, sizes)
    wanted = set(only) if only is not None else None
    report = VerificationReport()
    for claim_id, check in _claims(suite):
        if wanted is not None and claim_id not in wanted:
            continue
        try:
            status, details = check()
        except (SearchBudgetExceeded, TableUnavailableError) as exc:
            status, details = SKIPPED, str(exc)
        except QuadraticEquationError as exc:
            status, details = FAIL, f"{type(exc).__name__}: {exc}"
        logger.info("%s: %s %s", claim_id, status, details)
        report.add(claim_id, status, details)
    return report
