"""
Genus of free-group elements and solution classes of the genus equations.

For an element U of H the equations are

    [x1, y1] ... [xg, yg] = U        (orientable, g = genus+(U))
    x1^2 ... xg^2 = U                (nonorientable, g = genus-(U))

Every solution is equivalent, under automorphisms of F fixing the left-hand
side, to one obtained from a cancellation-free image of a Wicks form of the
same genus. The solver therefore scans the form tables genus by genus, matches
U against every form, and carries each match to the standard form with the
normalizer.

Scanning for genus-:
    When U is outside H' the matcher is conclusive at every genus. When U is in
    H' with genus+(U) = h, a genus g <= 2h still satisfies genus+(U) >= g/2, so
    the absence of matches proves genus-(U) > g. Past 2h the value is forced:
    genus-(U) <= 2h + 1 always, witnessed by the three-squares identity.
"""

# Standard library imports
import dataclasses
import logging
import math
from dataclasses import dataclass
from typing import Any, List, NamedTuple, Optional, Tuple

# Local Application Imports
from QuadraticEquations.datavalidation import (
    DomainError,
    NoSolutionError,
    QuadraticEquationError,
    assert_constant_word,
)
from QuadraticEquations.matcher import Match, cancellation_free_matches, dedupe_matches
from QuadraticEquations.normalizer import (
    TrackedAutomorphism,
    squares_witness_from_commutators,
    standard_form_automorphism,
    standard_form_word,
    standard_variables,
)
from QuadraticEquations.quadraticsurface import SplitRecord, split_for_alignment
from QuadraticEquations.subgroups import FoldedGraph
from QuadraticEquations.wicksenum import forms_up_to_length
from QuadraticEquations.wordcore import (
    Letter,
    Substitution,
    Word,
    as_word,
    cyclic_reduce,
    exponent_vector,
    format_word,
    in_commutator_subgroup,
    in_square_subgroup,
)

logger = logging.getLogger(__name__)

RESOLVED_DISTINCT = "resolved-distinct"
UNRESOLVED = "unresolved"


@dataclass(frozen=True)
class GenusResult:
    """
    Value of genus+ or genus- with the evidence behind it.

    ``certificate`` is a Match at the returned genus, a witness Substitution
    when genus- is forced to ``2h + 1``, or a string naming the failed
    exponent-sum criterion when the value is infinite.
    """

    value: Any
    certificate: Any
    exhausted_below: Tuple[int, ...] = ()
    orientable: bool = True

    @property
    def is_finite(self):
        return self.value != math.inf


@dataclass(frozen=True)
class SolutionClassRep:
    rep: Substitution
    genus: int
    orientable: bool
    subgroup: FoldedGraph
    form: Optional[Word] = None
    match: Optional[Match] = None
    split: Optional[SplitRecord] = None
    gamma: Optional[TrackedAutomorphism] = None
    distinctness: str = UNRESOLVED

    @property
    def variables(self):
        return standard_variables(self.genus, self.orientable)

    def images(self):
        return [self.rep.image(s) for s in self.variables]

    @property
    def lengths(self):
        return [len(img) for img in self.images()]

    @property
    def fingerprint_id(self):
        return self.subgroup.fingerprint_id()

    def as_dict(self):
        return {
            "assignments": {s.name: format_word(self.rep.image(s)) for s in self.variables},
            "lengths": self.lengths,
            "fingerprint_id": self.fingerprint_id,
            "distinctness": self.distinctness,
        }


class SquaresSolution(NamedTuple):
    representatives: List[SolutionClassRep]
    complete: bool


def _odd_criterion(u):
    sums = exponent_vector(u)
    bad = [(s, e) for s, e in sorted(sums.items(), key=lambda kv: kv[0].sort_key) if e % 2]
    return "; ".join(f"exponent sum of {s.name} is {e} (odd)" for s, e in bad)


def _nonzero_criterion(u):
    sums = exponent_vector(u)
    bad = [(s, e) for s, e in sorted(sums.items(), key=lambda kv: kv[0].sort_key) if e != 0]
    return "; ".join(f"exponent sum of {s.name} is {e} (nonzero)" for s, e in bad)


def _matches_at(core, orientable, genus, table_dir, limits, stats):
    forms = forms_up_to_length(orientable, genus, len(core), table_dir=table_dir, limits=limits)
    matches = []
    for form in forms:
        matches.extend(cancellation_free_matches(form.word, core, stats=stats))
    kind = "orientable" if orientable else "nonorientable"
    logger.debug("genus %d %s: %d forms, %d matches", genus, kind, len(forms), len(matches))
    return matches


def _scan(core, orientable, top, table_dir, limits, stats):
    exhausted = []
    for g in range(1, top + 1):
        matches = _matches_at(core, orientable, g, table_dir, limits, stats)
        if matches:
            return g, dedupe_matches(matches), tuple(exhausted)
        exhausted.append(g)
    return None, [], tuple(exhausted)


def genus_plus(u, table_dir=None, limits=None, stats=None):
    """
    Least number of commutators whose product is ``u``.

    Parameters
    ----------
    u : Word
        Constant word.
    table_dir : path, optional
        Directory of persisted form tables.
    limits : dict, optional
        Overrides of ``settings.DEFAULT_SEARCH_LIMITS``.
    stats : MatchStats, optional
        Collects matcher candidate counts.

    Returns
    -------
    GenusResult
        ``math.inf`` when some exponent sum is nonzero.
    """
    u = as_word(u)
    assert_constant_word(u, "u")
    if not len(u):
        return GenusResult(0, "trivial word", (), True)
    if not in_commutator_subgroup(u):
        return GenusResult(math.inf, _nonzero_criterion(u), (), True)
    core, _ = cyclic_reduce(u)
    g, matches, exhausted = _scan(core, True, len(core) // 4, table_dir, limits, stats)
    if g is None:
        raise QuadraticEquationError(f"No orientable form matched '{u}' up to genus {len(core) // 4}.")
    logger.info("genus+(%s) = %d", u, g)
    return GenusResult(g, matches[0], exhausted, True)


def genus_minus(u, table_dir=None, limits=None, stats=None):
    """
    Least number of squares whose product is ``u``.

    Returns
    -------
    GenusResult
        ``math.inf`` when some exponent sum is odd. When ``u`` is in H' and no
        form of genus ``<= 2 genus+(u)`` matches, the value is ``2 genus+(u) + 1``
        and the certificate is an explicit substitution for the squares.
    """
    u = as_word(u)
    assert_constant_word(u, "u")
    if not len(u):
        return GenusResult(0, "trivial word", (), False)
    if not in_square_subgroup(u):
        return GenusResult(math.inf, _odd_criterion(u), (), False)
    core, _ = cyclic_reduce(u)
    if not in_commutator_subgroup(u):
        g, matches, exhausted = _scan(core, False, len(core) // 2, table_dir, limits, stats)
        if g is None:
            raise QuadraticEquationError(f"No nonorientable form matched '{u}' up to genus {len(core) // 2}.")
        logger.info("genus-(%s) = %d", u, g)
        return GenusResult(g, matches[0], exhausted, False)

    plus = genus_plus(u, table_dir=table_dir, limits=limits, stats=stats)
    h = plus.value
    g, matches, exhausted = _scan(core, False, 2 * h, table_dir, limits, stats)
    if g is not None:
        logger.info("genus-(%s) = %d", u, g)
        return GenusResult(g, matches[0], exhausted, False)
    commutators = _representative(plus.certificate, True, h, u)
    witness = _squares_witness(commutators.images(), h)
    logger.info("genus-(%s) = %d, forced by genus+ = %d", u, 2 * h + 1, h)
    return GenusResult(2 * h + 1, witness, exhausted, False)


def _squares_witness(images, h):
    pairs = [(images[2 * i], images[2 * i + 1]) for i in range(h)]
    squares = squares_witness_from_commutators(pairs)
    return Substitution(dict(zip(standard_variables(len(squares), False), squares)))


def _representative(match, orientable, genus, u):
    """Carry one match to the standard form; images are conjugated back when ``u`` is not cyclically reduced."""
    core, conj = cyclic_reduce(u)
    w, psi, record = split_for_alignment(match.form, match.assignment, match.start_offset)
    gamma = standard_form_automorphism(w, genus=genus, orientable=orientable)
    images = {}
    for s in standard_variables(genus, orientable):
        image = psi.apply(gamma.pull_back(Word((Letter(s, 1),))))
        images[s] = conj.inverse() * image * conj
    rep = Substitution(images)
    if rep.apply(standard_form_word(genus, orientable)) != u:
        raise QuadraticEquationError(f"The representative {rep} does not solve the equation for '{u}'.")
    return SolutionClassRep(
        rep=rep,
        genus=genus,
        orientable=orientable,
        subgroup=FoldedGraph(images.values()),
        form=match.form,
        match=match,
        split=record,
        gamma=gamma,
    )


def _merge_identical(reps):
    seen = set()
    out = []
    for rep in reps:
        key = tuple(rep.images())
        if key not in seen:
            seen.add(key)
            out.append(rep)
    return out


def verify_class_distinctness(reps):
    """
    Mark every representative whose image subgroup differs from all others.

    The image subgroup is an invariant of the class, so different subgroups
    prove different classes. Equal subgroups prove nothing and are reported
    as unresolved.

    Returns
    -------
    list of SolutionClassRep
    """
    forms = [rep.subgroup.canonical_form() for rep in reps]
    out = []
    for i, rep in enumerate(reps):
        clash = any(forms[i] == forms[j] for j in range(len(reps)) if j != i)
        out.append(dataclasses.replace(rep, distinctness=UNRESOLVED if clash else RESOLVED_DISTINCT))
    return out


def _solve(u, orientable, genus, table_dir, limits, stats):
    core, _ = cyclic_reduce(u)
    matches = dedupe_matches(_matches_at(core, orientable, genus, table_dir, limits, stats))
    reps = _merge_identical([_representative(m, orientable, genus, u) for m in matches])
    logger.info("%d classes for genus %d", len(reps), genus)
    return verify_class_distinctness(reps)


def solve_commutators(u, genus=None, table_dir=None, limits=None, stats=None):
    """
    One representative for every class of solutions of ``[x1,y1]...[xg,yg] = u``.

    Parameters
    ----------
    u : Word
        Nontrivial word in H'.
    genus : int, optional
        Must equal genus+(u) when given; solutions are only classified at the
        least genus.

    Returns
    -------
    list of SolutionClassRep

    Raises
    ------
    NoSolutionError
        If ``u`` is not in H'.
    DomainError
        If ``u`` is trivial or ``genus`` is not genus+(u).
    """
    u = as_word(u)
    assert_constant_word(u, "u")
    if not len(u):
        raise DomainError("The right-hand side must be nontrivial.")
    if not in_commutator_subgroup(u):
        raise NoSolutionError(f"'{u}' is not a product of commutators: {_nonzero_criterion(u)}.")
    g = genus_plus(u, table_dir=table_dir, limits=limits, stats=stats).value
    if genus is not None and genus != g:
        raise DomainError(f"Solutions are classified at genus+ = {g} only, not at genus {genus}.")
    return _solve(u, True, g, table_dir, limits, stats)


def solve_squares(u, genus=None, table_dir=None, limits=None, stats=None):
    """
    Representatives for the solutions of ``x1^2 ... xg^2 = u``.

    Returns
    -------
    SquaresSolution
        ``(representatives, complete)``. ``complete`` is False only when
        genus-(u) = 2 genus+(u) + 1; the single representative is then the
        explicit witness built from a product of commutators.

    Raises
    ------
    NoSolutionError
        If ``u`` is not in 2H.
    """
    u = as_word(u)
    assert_constant_word(u, "u")
    if not len(u):
        raise DomainError("The right-hand side must be nontrivial.")
    if not in_square_subgroup(u):
        raise NoSolutionError(f"'{u}' is not a product of squares: {_odd_criterion(u)}.")
    result = genus_minus(u, table_dir=table_dir, limits=limits, stats=stats)
    g = result.value
    if genus is not None and genus != g:
        raise DomainError(f"Solutions are classified at genus- = {g} only, not at genus {genus}.")
    if isinstance(result.certificate, Substitution):
        witness = result.certificate
        rep = SolutionClassRep(
            rep=witness,
            genus=g,
            orientable=False,
            subgroup=FoldedGraph(witness.image(s) for s in standard_variables(g, False)),
            distinctness=RESOLVED_DISTINCT,
        )
        return SquaresSolution([rep], False)
    return SquaresSolution(_solve(u, False, g, table_dir, limits, stats), True)
