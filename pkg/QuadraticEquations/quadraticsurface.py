"""
Quadratic words and the closed surface they spell.

A quadratic word W of length 2E is read as the boundary of a 2E-gon. Edge i runs
from corner i to corner i+1; a positive letter points forward, a negative one
backward. Gluing the two edges of each variable and counting the corner classes
gives V, and chi = V - E + 1.
"""

# Standard library imports
import logging
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Tuple

# Local Application Imports
from QuadraticEquations.datavalidation import DomainError
from QuadraticEquations.wordcore import (
    Letter,
    Substitution,
    Symbol,
    Word,
    as_word,
    fresh_variable,
    rotate,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class QuadraticReport:
    is_quadratic: bool
    orientable: Optional[bool] = None
    irredundant: Optional[bool] = None
    variables: FrozenSet[Symbol] = field(default_factory=frozenset)


@dataclass(frozen=True)
class SurfaceData:
    edge_count: int
    vertex_count: int
    chi: int
    orientable: bool
    genus: int


@dataclass(frozen=True)
class SplitRecord:
    """
    How a cyclic match was turned into an ordinary-word solution.

    ``rotation`` is the letter of the form the ordinary word starts at. When the
    start of U falls inside the image of ``variable``, that variable is replaced
    by ``first * second`` and ``inner_offset`` letters of its image come before
    the start.
    """

    rotation: int
    variable: Optional[Symbol] = None
    first: Optional[Symbol] = None
    second: Optional[Symbol] = None
    inner_offset: int = 0

    @property
    def is_split(self):
        return self.variable is not None


def _occurrences(letters):
    positions: Dict[Symbol, List[int]] = defaultdict(list)
    for i, letter in enumerate(letters):
        positions[letter.symbol].append(i)
    return positions


def is_quadratic(w):
    letters = as_word(w).letters
    if any(not letter.symbol.is_variable for letter in letters):
        return False
    return all(len(p) == 2 for p in _occurrences(letters).values())


def _is_orientable(letters, positions):
    return all(letters[i].sign != letters[j].sign for i, j in positions.values())


def _redundant_pair(letters, positions, cyclic):
    n = len(letters)
    last = n if cyclic else n - 1
    for i in range(last):
        p, q = letters[i], letters[(i + 1) % n]
        if p.symbol == q.symbol:
            continue
        j = next(k for k in positions[p.symbol] if k != i)
        if letters[j] == p and (cyclic or j + 1 < n) and letters[(j + 1) % n] == q:
            return i, j
        if letters[j] == p.inverse() and (cyclic or j >= 1) and letters[(j - 1) % n] == q.inverse():
            return i, j
    return None


def _is_irredundant(letters, positions):
    return _redundant_pair(letters, positions, cyclic=True) is None


def redundant_pair(w, cyclic=True):
    """
    First pair of letters ``p q`` whose variables only occur in blocks ``(pq)^{±1}``.

    Parameters
    ----------
    w : Word
        Quadratic word.
    cyclic : bool, default True
        When False the wrap-around adjacency is ignored, which is the notion
        used for ordinary words.

    Returns
    -------
    tuple or None
        ``(i, j)``: ``p`` is letter ``i`` and ``j`` is the other occurrence of its variable.
    """
    letters = as_word(w).letters
    if not is_quadratic(w):
        raise DomainError(f"redundant_pair needs a quadratic word, not '{as_word(w)}'.")
    return _redundant_pair(letters, _occurrences(letters), cyclic)


def classify_quadratic(w):
    """
    Decide whether ``w`` (read cyclically) is quadratic, orientable and irredundant.

    Parameters
    ----------
    w : Word or CyclicWord

    Returns
    -------
    QuadraticReport
        For a non-quadratic word only ``is_quadratic`` is set.
    """
    letters = as_word(w).letters
    if not is_quadratic(w):
        return QuadraticReport(is_quadratic=False)
    positions = _occurrences(letters)
    return QuadraticReport(
        is_quadratic=True,
        orientable=_is_orientable(letters, positions),
        irredundant=_is_irredundant(letters, positions),
        variables=frozenset(positions),
    )


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, a):
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def _ends(letter, i, n):
    if letter.sign > 0:
        return i, (i + 1) % n
    return (i + 1) % n, i


def _corner_classes(letters):
    n = len(letters)
    uf = _UnionFind(n)
    for i, j in _occurrences(letters).values():
        ti, hi = _ends(letters[i], i, n)
        tj, hj = _ends(letters[j], j, n)
        uf.union(ti, tj)
        uf.union(hi, hj)
    return uf


def surface_data(w):
    """
    Euler characteristic and genus of the surface spelled by a quadratic word.

    Parameters
    ----------
    w : Word or CyclicWord
        Quadratic word, read cyclically.

    Returns
    -------
    SurfaceData

    Raises
    ------
    DomainError
        If ``w`` is not quadratic.
    """
    letters = as_word(w).letters
    if not is_quadratic(w):
        raise DomainError(f"surface_data needs a quadratic word, not '{as_word(w)}'.")
    if not letters:
        return SurfaceData(edge_count=0, vertex_count=1, chi=2, orientable=True, genus=0)
    n = len(letters)
    uf = _corner_classes(letters)
    vertices = len({uf.find(c) for c in range(n)})
    edges = n // 2
    chi = vertices - edges + 1
    orientable = _is_orientable(letters, _occurrences(letters))
    genus = (2 - chi) // 2 if orientable else 2 - chi
    return SurfaceData(edge_count=edges, vertex_count=vertices, chi=chi, orientable=orientable, genus=genus)


def edge_endpoints(w):
    """
    Vertex classes at the tail and head of every edge of the surface.

    Returns
    -------
    dict
        Variable -> ``(tail_vertex, head_vertex)``; vertices are numbered by
        their least corner.
    """
    letters = as_word(w).letters
    if not is_quadratic(w):
        raise DomainError(f"edge_endpoints needs a quadratic word, not '{as_word(w)}'.")
    n = len(letters)
    uf = _corner_classes(letters)
    out = {}
    for symbol, (i, _) in _occurrences(letters).items():
        tail, head = _ends(letters[i], i, n)
        out[symbol] = (uf.find(tail), uf.find(head))
    return out


def corner_vertices(w):
    """Vertex class of every polygon corner, numbered as in ``edge_endpoints``."""
    letters = as_word(w).letters
    if not is_quadratic(w):
        raise DomainError(f"corner_vertices needs a quadratic word, not '{as_word(w)}'.")
    uf = _corner_classes(letters)
    return [uf.find(c) for c in range(len(letters))]


def split_for_alignment(form, assignment, start_offset):
    """
    Turn a cyclic cancellation-free match into an ordinary-word one.

    The images of the letters of ``form``, concatenated from letter 0, spell a
    rotation of U. ``start_offset`` is the position of U's first letter in that
    concatenation.

    Parameters
    ----------
    form : Word
        Quadratic word the match was made against.
    assignment : Substitution
        Nonempty image for every variable of ``form``.
    start_offset : int

    Returns
    -------
    tuple
        ``(W', psi', SplitRecord)`` where W' psi' spells U letter for letter.
    """
    form = as_word(form)
    letters = form.letters
    images = [assignment.apply(Word((letter,))) for letter in letters]
    total = sum(len(img) for img in images)
    if total == 0:
        raise DomainError("split_for_alignment needs at least one nonempty image.")
    offset = start_offset % total

    start = 0
    for i, img in enumerate(images):
        if start <= offset < start + len(img):
            break
        start += len(img)
    r = offset - start

    if r == 0:
        return rotate(form, i), assignment, SplitRecord(rotation=i)

    letter = letters[i]
    x = letter.symbol
    image = assignment.image(x)
    used = {s.name for s in form.symbols()} | {s.name for s in assignment.support}
    x1 = fresh_variable(f"{x.name}_", used)
    x2 = fresh_variable(f"{x.name}_", used | {x1.name})
    cut = r if letter.sign > 0 else len(image) - r
    psi = {k: v for k, v in assignment.assignments.items() if k != x}
    psi[x1] = image[:cut]
    psi[x2] = image[cut:]

    expanded: List[Letter] = []
    starts = {}
    for k, l in enumerate(letters):
        if l.symbol != x:
            expanded.append(l)
            continue
        a, b = Letter(x1, 1), Letter(x2, 1)
        pair = (a, b) if l.sign > 0 else (b.inverse(), a.inverse())
        starts[k] = len(expanded)
        expanded.extend(pair)
    # positive occurrence starts at x_2, negative at x_1^-1
    begin = starts[i] + 1
    new_letters = tuple(expanded[begin:] + expanded[:begin])
    record = SplitRecord(rotation=i, variable=x, first=x1, second=x2, inner_offset=r)
    logger.debug("split %s into %s %s at offset %d", x.name, x1.name, x2.name, r)
    return Word(new_letters), Substitution(psi), record
