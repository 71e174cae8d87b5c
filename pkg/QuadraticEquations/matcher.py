"""
Cancellation-free matching of a constant cyclic word against a quadratic form.

A match cuts the cyclic word U into |W| nonempty pieces so that reading the
pieces in order spells the images of the letters of W, with both occurrences of
a variable agreeing. No free reduction is allowed anywhere.
"""

# Standard library imports
import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Tuple

# Local Application Imports
from QuadraticEquations.datavalidation import DomainError, assert_constant_word
from QuadraticEquations.quadraticsurface import is_quadratic
from QuadraticEquations.wordcore import (
    Letter,
    Substitution,
    Word,
    as_word,
    concatenate_raw,
    is_cyclically_reduced,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Match:
    """
    One cancellation-free image of ``form`` in the cyclic word ``u``.

    The image of letter 0 of ``form`` starts at position ``rotation_offset`` of
    ``u``; ``boundary_cuts[i]`` is the position of ``u`` where the image of
    letter ``i`` starts.
    """

    form: Word
    u: Word
    rotation_offset: int
    boundary_cuts: Tuple[int, ...]
    assignment: Substitution

    def images(self):
        return [self.assignment.apply(Word((letter,))) for letter in self.form.letters]

    @property
    def start_offset(self):
        """Position of the first letter of ``u`` in the concatenated images."""
        n = len(self.u)
        return (n - self.rotation_offset) % n


@dataclass
class MatchStats:
    """Candidate counts for every matcher run it is handed to."""

    runs: List[Tuple[int, int, int]] = field(default_factory=list)

    def record(self, k, n, candidates):
        self.runs.append((k, n, candidates))

    @property
    def candidates(self):
        return sum(c for _, _, c in self.runs)

    def within_bound(self):
        return all(c <= candidate_bound(k, n) for k, n, c in self.runs)

    def worst_ratio(self):
        ratios = [c / candidate_bound(k, n) for k, n, c in self.runs if n]
        return max(ratios, default=0.0)


def candidate_bound(k, n):
    """Number of ways to factor a length-n cyclic word into k pieces is at most k*C(n+k, k)."""
    return k * math.comb(n + k, k)


def is_cancellation_free(form, assignment, u):
    """
    True when the images of ``form`` concatenate to ``u`` letter for letter.

    Every image must be nonempty; no reduction is performed.
    """
    images = [assignment.apply(Word((letter,))) for letter in as_word(form).letters]
    if any(len(img) == 0 for img in images):
        return False
    return concatenate_raw(images) == as_word(u).letters


def _inverse_segment(segment):
    return tuple(l.inverse() for l in reversed(segment))


def _match_rotation(form_letters, target, n):
    """Matches with letter 0 anchored at ``target[0]``; also counts complete factorizations tried."""
    k = len(form_letters)
    bound: Dict = {}
    cuts: List[int] = []
    found = []
    leaves = 0

    def extend(idx, pos):
        nonlocal leaves
        if idx == k:
            found.append((tuple(cuts), dict(bound)))
            return
        letter = form_letters[idx]
        symbol = letter.symbol
        last = idx == k - 1
        if symbol in bound:
            image = bound[symbol] if letter.sign > 0 else _inverse_segment(bound[symbol])
            if last:
                if len(image) != n - pos:
                    return
                leaves += 1
            if target[pos : pos + len(image)] == image:
                cuts.append(pos)
                extend(idx + 1, pos + len(image))
                cuts.pop()
            return
        left = k - idx - 1
        if last:
            if pos >= n:
                return
            leaves += 1
        lengths = [n - pos] if last else range(1, n - pos - left + 1)
        for length in lengths:
            segment = target[pos : pos + length]
            bound[symbol] = segment if letter.sign > 0 else _inverse_segment(segment)
            cuts.append(pos)
            extend(idx + 1, pos + length)
            cuts.pop()
            del bound[symbol]

    extend(0, 0)
    return found, leaves


def cancellation_free_matches(form, u, stats=None):
    """
    All ways the cyclic word ``u`` is a cancellation-free image of ``form``.

    Parameters
    ----------
    form : Word or CyclicWord
        Quadratic word.
    u : Word or CyclicWord
        Nonempty, cyclically reduced, constants only.
    stats : MatchStats, optional
        Receives the number of complete factorizations examined.

    Returns
    -------
    list of Match
        Ordered by rotation offset, then by the cut positions.
    """
    form = as_word(form)
    u = as_word(u)
    assert_constant_word(u, "u")
    if not is_quadratic(form):
        raise DomainError(f"cancellation_free_matches needs a quadratic form, not '{form}'.")
    if len(u) == 0 or not is_cyclically_reduced(u):
        raise DomainError(f"'{u}' should be nonempty and cyclically reduced.")
    k, n = len(form), len(u)
    if k > n or k == 0:
        if stats is not None:
            stats.record(k, n, 0)
        return []

    matches = []
    candidates = 0
    for offset in range(n):
        target = u.letters[offset:] + u.letters[:offset]
        found, leaves = _match_rotation(form.letters, target, n)
        candidates += leaves
        for cuts, bound in found:
            assignment = Substitution({s: Word(seg) for s, seg in bound.items()})
            matches.append(
                Match(
                    form=form,
                    u=u,
                    rotation_offset=offset,
                    boundary_cuts=tuple((c + offset) % n for c in cuts),
                    assignment=assignment,
                )
            )
    if stats is not None:
        stats.record(k, n, candidates)
    logger.debug("form %s against %s: %d matches, %d candidates", form, u, len(matches), candidates)
    return matches


def form_symmetries(form):
    """
    Relabelings that map ``form`` onto one of its own rotations.

    Returns
    -------
    list of Substitution
        Each maps a variable of the form to a signed variable; the identity is included.
    """
    letters = as_word(form).letters
    k = len(letters)
    out = []
    for r in range(k):
        rotated = letters[r:] + letters[:r]
        mapping: Dict = {}
        consistent = True
        for src, dst in zip(letters, rotated):
            want = Word((Letter(dst.symbol, dst.sign * src.sign),))
            if mapping.setdefault(src.symbol, want) != want:
                consistent = False
                break
        if consistent:
            out.append(Substitution(mapping))
    return out


def assignment_key(form, assignment):
    """Shortlex key of the images listed in the form's variable order."""
    return tuple(assignment.image(s).shortlex_key for s in as_word(form).variables())


def dedupe_matches(matches):
    """
    Keep one match per orbit under the relabeling symmetries of its form.

    The kept match has the least assignment (shortlex, variable order), then
    the least rotation offset.
    """
    if not matches:
        return []
    groups: Dict = {}
    symmetry_cache: Dict = {}
    for match in matches:
        form = match.form
        if form not in symmetry_cache:
            symmetry_cache[form] = form_symmetries(form)
        variables = form.variables()
        orbit = set()
        for sigma in symmetry_cache[form]:
            moved = sigma.compose(match.assignment).restrict(variables)
            orbit.add(tuple(moved.image(s) for s in variables))
        key = (form, min(orbit, key=lambda imgs: tuple(w.shortlex_key for w in imgs)))
        groups.setdefault(key, []).append(match)

    kept = [
        min(group, key=lambda m: (assignment_key(m.form, m.assignment), m.rotation_offset))
        for group in groups.values()
    ]
    kept.sort(key=lambda m: (m.rotation_offset, m.boundary_cuts))
    logger.debug("dedupe: %d matches -> %d orbits", len(matches), len(kept))
    return kept
