"""
Wicks forms: irredundant quadratic cyclic words up to rotation and relabeling.

Forms are built letter by letter in first-appearance order (a new variable gets
the next index and a positive sign), so every candidate is already the least
relabeling of its own first rotation. A prefix is abandoned as soon as some
rotation of it normalizes to something smaller, which keeps exactly one
representative per class.

Letters are handled internally as integers ``2*k + s`` where ``k`` is the
variable index and ``s`` is 0 for a positive and 1 for a negative letter, so
integer order agrees with the symbol order of ``v1, v2, ...``.
"""

# Standard library imports
import functools
import hashlib
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import List, Tuple

# Local Application Imports
from QuadraticEquations import settings
from QuadraticEquations.datavalidation import (
    DomainError,
    SearchBudgetExceeded,
    TableUnavailableError,
    assert_non_negative_integer,
)
from QuadraticEquations.quadraticsurface import is_quadratic, surface_data
from QuadraticEquations.wordcore import (
    CyclicWord,
    Letter,
    Word,
    as_word,
    format_word,
    parse_word,
    variable,
    VARIABLE,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class WicksForm:
    form: CyclicWord
    orientable: bool
    genus: int
    length: int
    maximal: bool

    @property
    def word(self):
        return self.form.core

    @property
    def chi(self):
        return 2 - 2 * self.genus if self.orientable else 2 - self.genus

    def __str__(self):
        return format_word(self.form.core)


@dataclass(frozen=True)
class FormTable:
    key: Tuple[bool, int]
    forms: Tuple[WicksForm, ...]
    generator_version: str = settings.GENERATOR_VERSION
    maximal_only: bool = False


def euler_characteristic(orientable, genus):
    return 2 - 2 * genus if orientable else 2 - genus


def max_form_length(orientable, genus):
    """Longest Wicks form of the given type. The projective plane is the one exception to 6(1-chi)."""
    if not orientable and genus == 1:
        return 2
    return 6 * (1 - euler_characteristic(orientable, genus))


def _normalize(codes):
    mapping = {}
    out = []
    for c in codes:
        v, s = c >> 1, c & 1
        if v not in mapping:
            mapping[v] = (len(mapping), s)
        nv, flip = mapping[v]
        out.append(2 * nv + (s ^ flip))
    return out


def _canonical_codes(codes):
    n = len(codes)
    if n == 0:
        return []
    return min(_normalize(codes[r:] + codes[:r]) for r in range(n))


def _rotation_is_smaller(codes, r, m):
    """Compare normalize(codes[r:m]) with codes[:m-r], stopping at the first difference."""
    mapping = {}
    for t in range(m - r):
        c = codes[r + t]
        v, s = c >> 1, c & 1
        if v not in mapping:
            mapping[v] = (len(mapping), s)
        nv, flip = mapping[v]
        nc = 2 * nv + (s ^ flip)
        ref = codes[t]
        if nc != ref:
            return nc < ref
    return False


def _word_to_codes(w):
    letters = as_word(w).letters
    index = {}
    codes = []
    for letter in letters:
        if letter.symbol not in index:
            index[letter.symbol] = len(index)
        codes.append(2 * index[letter.symbol] + (0 if letter.sign > 0 else 1))
    return codes


def _codes_to_word(codes):
    symbols = {}
    letters = []
    for c in codes:
        v = c >> 1
        if v not in symbols:
            symbols[v] = variable(f"v{v + 1}")
        letters.append(Letter(symbols[v], -1 if c & 1 else 1))
    return Word(tuple(letters))


def canonical_form(w):
    """
    Least representative of ``w`` over rotations and relabelings of X and X^-1.

    Parameters
    ----------
    w : Word or CyclicWord
        Quadratic word.

    Returns
    -------
    CyclicWord
        Spelled with ``v1, v2, ...``.
    """
    if not is_quadratic(w):
        raise DomainError(f"canonical_form needs a quadratic word, not '{as_word(w)}'.")
    return CyclicWord(_codes_to_word(_canonical_codes(_word_to_codes(w))))


def make_wicks_form(w):
    """Canonicalize ``w`` and attach its surface data."""
    canonical = canonical_form(w)
    data = surface_data(canonical)
    return WicksForm(
        form=canonical,
        orientable=data.orientable,
        genus=data.genus,
        length=len(canonical),
        maximal=len(canonical) == max_form_length(data.orientable, data.genus),
    )


def _vertex_count(codes):
    n = len(codes)
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    first = {}
    for i, c in enumerate(codes):
        v = c >> 1
        ends = (i, (i + 1) % n) if not c & 1 else ((i + 1) % n, i)
        if v in first:
            for a, b in zip(first[v], ends):
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[ra] = rb
        else:
            first[v] = ends
    return len({find(c) for c in range(n)})


def _irredundant(codes):
    n = len(codes)
    where = {}
    for i, c in enumerate(codes):
        where.setdefault(c >> 1, []).append(i)
    for i in range(n):
        p, q = codes[i], codes[(i + 1) % n]
        if p >> 1 == q >> 1:
            continue
        a, b = where[p >> 1]
        j = b if a == i else a
        if codes[j] == p and codes[(j + 1) % n] == q:
            return False
        if codes[j] == p ^ 1 and codes[(j - 1) % n] == q ^ 1:
            return False
    return True


class _Search:
    def __init__(self, edges, orientable, vertices, budget, nodes=0):
        self.length = 2 * edges
        self.edges = edges
        self.orientable = orientable
        self.vertices = vertices
        self.budget = budget
        self.nodes = nodes
        self.codes: List[int] = []
        self.count = [0] * edges
        self.found: List[List[int]] = []

    def run(self):
        self._extend(0, 0)
        return self.found

    def _has_crosscap(self):
        # the opening letter is always positive, so a positive closing letter marks a crosscap
        closing = {}
        for c in self.codes:
            if c >> 1 in closing:
                if c & 1 == 0:
                    return True
            else:
                closing[c >> 1] = True
        return False

    def _leaf(self):
        codes = self.codes
        n = self.length
        if (codes[-1] ^ 1) == codes[0]:
            return
        for r in range(1, n):
            if _normalize(codes[r:] + codes[:r]) < codes:
                return
        if not self.orientable and not self._has_crosscap():
            return
        if not _irredundant(codes):
            return
        if _vertex_count(codes) != self.vertices:
            return
        self.found.append(list(codes))

    def _extend(self, opened, unclosed):
        self.nodes += 1
        if self.nodes > self.budget:
            raise SearchBudgetExceeded(
                f"Wicks enumeration exceeded {self.budget} nodes", nodes=self.nodes
            )
        m = len(self.codes)
        if m == self.length:
            self._leaf()
            return
        remaining = self.length - m

        options = []
        for v in range(opened):
            if self.count[v] == 1:
                options.extend([2 * v + 1] if self.orientable else [2 * v, 2 * v + 1])
        if opened < self.edges and remaining >= unclosed + 2:
            options.append(2 * opened)

        prev = self.codes[-1] if self.codes else None
        for code in options:
            if prev is not None and (code ^ 1) == prev:
                continue
            v = code >> 1
            is_new = v == opened
            self.codes.append(code)
            self.count[v] += 1
            if not any(_rotation_is_smaller(self.codes, r, m + 1) for r in range(1, m + 1)):
                if is_new:
                    self._extend(opened + 1, unclosed + 1)
                else:
                    self._extend(opened, unclosed - 1)
            self.count[v] -= 1
            self.codes.pop()


def _enumerate(orientable, genus, maximal_only, max_length, budget):
    chi = euler_characteristic(orientable, genus)
    top = max_form_length(orientable, genus)
    search_top = top if orientable or genus > 1 else 4
    if max_length is not None:
        search_top = min(search_top, max_length)
    edge_range = range(1, search_top // 2 + 1)
    if maximal_only:
        edge_range = [e for e in edge_range if 2 * e == top]

    found = []
    nodes = 0
    for edges in edge_range:
        vertices = chi + edges - 1
        # every surface has a vertex
        if vertices < 1:
            continue
        search = _Search(edges, orientable, vertices, budget, nodes)
        try:
            codes_list = search.run()
        except SearchBudgetExceeded as exc:
            partial = found + [_to_form(c, orientable, genus, top) for c in search.found]
            raise SearchBudgetExceeded(str(exc), partial=partial, nodes=exc.nodes)
        nodes = search.nodes
        found.extend(_to_form(c, orientable, genus, top) for c in codes_list)
        logger.debug(
            "wicks %s genus=%d length=%d: %d forms, %d nodes",
            "orientable" if orientable else "nonorientable",
            genus,
            2 * edges,
            len(codes_list),
            nodes,
        )
    found.sort(key=lambda f: f.word.shortlex_key)
    return tuple(found)


def _to_form(codes, orientable, genus, top):
    word = _codes_to_word(codes)
    return WicksForm(
        form=CyclicWord(word),
        orientable=orientable,
        genus=genus,
        length=len(codes),
        maximal=len(codes) == top,
    )


@functools.lru_cache(maxsize=64)
def _enumerate_cached(orientable, genus, maximal_only, max_length, budget):
    return _enumerate(orientable, genus, maximal_only, max_length, budget)


def enumerate_wicks(orientable, genus, maximal_only=False, max_length=None, node_budget=None):
    """
    All Wicks forms of one genus and orientability.

    Parameters
    ----------
    orientable : bool
    genus : int
    maximal_only : bool, default False
        Keep only the forms of length 6(1 - chi).
    max_length : int, optional
        Skip forms longer than this. Results are cached per argument set.
    node_budget : int, optional
        Backtracking nodes allowed; defaults to
        ``settings.DEFAULT_SEARCH_LIMITS["enumeration_node_budget"]``.

    Returns
    -------
    list of WicksForm
        Sorted shortlex; genus 0 gives an empty list.

    Raises
    ------
    SearchBudgetExceeded
        With the forms found so far in ``partial``.
    """
    assert_non_negative_integer(genus, "genus")
    if genus == 0:
        return []
    budget = node_budget or settings.DEFAULT_SEARCH_LIMITS["enumeration_node_budget"]
    return list(_enumerate_cached(bool(orientable), genus, bool(maximal_only), max_length, budget))


def table_path(table_dir, orientable, genus, maximal_only=False):
    kind = "orientable" if orientable else "nonorientable"
    suffix = "-maximal" if maximal_only else ""
    return Path(table_dir) / f"wicks-{kind}-g{genus}{suffix}.txt"


def _content_hash(content):
    return hashlib.sha256((settings.GENERATOR_VERSION + "\n" + content).encode("utf-8")).hexdigest()


def _table_text(forms, orientable, genus):
    kind = "orientable" if orientable else "nonorientable"
    lines = [f"wicks {kind} genus={genus} count={len(forms)}"]
    lines.extend(format_word(f.word) for f in forms)
    return "\n".join(lines) + "\n"


def write_form_table(path, table):
    """Write a table and its ``.sha256`` sidecar."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    orientable, genus = table.key
    content = _table_text(table.forms, orientable, genus)
    path.write_text(content, encoding="utf-8")
    Path(str(path) + ".sha256").write_text(_content_hash(content) + "\n", encoding="utf-8")
    logger.info("wrote %d forms to %s", len(table.forms), path)


def load_form_table(path, maximal_only=False):
    """
    Read a table written by ``write_form_table``.

    Raises
    ------
    TableUnavailableError
        If the file or its sidecar is missing, the hash does not match, or the
        header is malformed.
    """
    path = Path(path)
    sidecar = Path(str(path) + ".sha256")
    if not path.exists() or not sidecar.exists():
        raise TableUnavailableError(f"Form table {path} is missing.")
    content = path.read_text(encoding="utf-8")
    if sidecar.read_text(encoding="utf-8").strip() != _content_hash(content):
        raise TableUnavailableError(f"Form table {path} failed its hash check.")
    lines = content.splitlines()
    try:
        tag, kind, genus_field, count_field = lines[0].split()
        genus = int(genus_field.split("=")[1])
        count = int(count_field.split("=")[1])
    except (IndexError, ValueError):
        raise TableUnavailableError(f"Form table {path} has a malformed header.")
    if tag != "wicks" or kind not in ("orientable", "nonorientable") or count != len(lines) - 1:
        raise TableUnavailableError(f"Form table {path} has a malformed header.")
    orientable = kind == "orientable"
    top = max_form_length(orientable, genus)
    forms = []
    for line in lines[1:]:
        word = parse_word(line, kind=VARIABLE)
        forms.append(
            WicksForm(
                form=CyclicWord(word),
                orientable=orientable,
                genus=genus,
                length=len(word),
                maximal=len(word) == top,
            )
        )
    return FormTable(key=(orientable, genus), forms=tuple(forms), maximal_only=maximal_only)


def form_table(orientable, genus, table_dir=None, maximal_only=False, node_budget=None):
    """
    Load a persisted table, regenerating it when absent or tampered with.

    Returns
    -------
    FormTable
    """
    directory = Path(table_dir) if table_dir is not None else settings.default_table_dir()
    path = table_path(directory, orientable, genus, maximal_only)
    try:
        table = load_form_table(path, maximal_only=maximal_only)
        logger.info("loaded form table %s", path)
        return table
    except TableUnavailableError as exc:
        logger.info("%s Regenerating.", exc)
    forms = enumerate_wicks(orientable, genus, maximal_only=maximal_only, node_budget=node_budget)
    table = FormTable(key=(bool(orientable), genus), forms=tuple(forms), maximal_only=maximal_only)
    write_form_table(path, table)
    return table


def forms_up_to_length(orientable, genus, max_length, table_dir=None, limits=None):
    """
    Forms the solver needs: one genus, no longer than the right-hand side.

    Raises
    ------
    DomainError
        When ``limits`` fails ``settings.validate_search_limits``.
    TableUnavailableError
        When the genus is beyond ``max_cached_genus`` or the enumeration budget runs out.
    """
    checked = settings.validate_search_limits(limits)
    if not checked["valid"]:
        raise DomainError("; ".join(checked["errors"]))
    for warning in checked["warnings"]:
        logger.debug(warning)
    limits = {**settings.DEFAULT_SEARCH_LIMITS, **(limits or {})}
    if genus > limits["max_cached_genus"]:
        raise TableUnavailableError(
            f"Genus {genus} is beyond max_cached_genus={limits['max_cached_genus']}."
        )
    if table_dir is not None:
        path = table_path(table_dir, orientable, genus)
        try:
            table = load_form_table(path)
            return [f for f in table.forms if f.length <= max_length]
        except TableUnavailableError:
            pass
    try:
        return enumerate_wicks(
            orientable,
            genus,
            max_length=max_length,
            node_budget=limits["enumeration_node_budget"],
        )
    except SearchBudgetExceeded as exc:
        raise TableUnavailableError(
            f"Enumerating genus-{genus} forms up to length {max_length} ran out of budget."
        ) from exc
