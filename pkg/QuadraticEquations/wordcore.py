"""
Free-group word arithmetic over two disjoint alphabets.

Constants spell elements of the coefficient group H, variables spell elements
of the free group F on the unknowns. A ``Word`` is always stored freely reduced;
raw letter sequences are reduced at construction time.

Commutators follow the convention ``[u, v] = u^-1 v^-1 u v``.
"""

# Standard library imports
import re
from collections import defaultdict
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Dict, Iterable, List, Mapping, NamedTuple, Sequence, Tuple

# Third Party Imports
import numpy as np

# Local Application Imports
from QuadraticEquations.datavalidation import (
    DomainError,
    MalformedWordError,
    assert_contents,
    assert_identifier,
    assert_sign,
)

CONSTANT = "constant"
VARIABLE = "variable"

_NAME_PARTS = re.compile(r"^(.*?)(\d*)$")
_TOKEN = re.compile(r"^([A-Za-z][A-Za-z0-9_]*)(?:\^(-?\d+))?$")


@dataclass(frozen=True)
class Symbol:
    """
    A generator of H (``kind="constant"``) or of F (``kind="variable"``).

    Symbols of different kinds never compare equal, even when spelled alike.
    The total order puts constants first, then compares names naturally
    (``v2 < v10``).
    """

    name: str
    kind: str = CONSTANT
    sort_key: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        assert_identifier(self.name, "name")
        assert_contents(self.kind, (CONSTANT, VARIABLE), "kind")
        prefix, digits = _NAME_PARTS.match(self.name).groups()
        key = (self.kind == VARIABLE, prefix, int(digits) if digits else -1, self.name)
        object.__setattr__(self, "sort_key", key)

    @property
    def is_variable(self):
        return self.kind == VARIABLE

    def __lt__(self, other):
        return self.sort_key < other.sort_key

    def __str__(self):
        return self.name


class Letter(NamedTuple):
    """A signed symbol, the unit a word is spelled with."""

    symbol: Symbol
    sign: int

    def inverse(self):
        return Letter(self.symbol, -self.sign)

    @property
    def sort_key(self):
        return (self.symbol.sort_key, self.sign < 0)

    def __str__(self):
        return self.symbol.name if self.sign > 0 else f"{self.symbol.name}^-1"


def constant(name):
    """Return the constant symbol called ``name``."""
    return Symbol(name, CONSTANT)


def variable(name):
    """Return the variable symbol called ``name``."""
    return Symbol(name, VARIABLE)


def _coerce_letter(item):
    if isinstance(item, Letter):
        return item
    try:
        symbol, sign = item
    except (TypeError, ValueError):
        raise MalformedWordError(f"Cannot read {item!r} as a (symbol, sign) letter.")
    if not isinstance(symbol, Symbol):
        raise MalformedWordError(f"Unknown symbol {symbol!r}; build symbols with constant() or variable().")
    assert_sign(sign, "sign")
    return Letter(symbol, sign)


def _reduce(raw):
    stack: List[Letter] = []
    for item in raw:
        letter = _coerce_letter(item)
        if stack and stack[-1].symbol == letter.symbol and stack[-1].sign == -letter.sign:
            stack.pop()
        else:
            stack.append(letter)
    return tuple(stack)


@dataclass(frozen=True)
class Word:
    """A freely reduced word. ``len(w)`` is the word length."""

    letters: Tuple[Letter, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", _reduce(self.letters))

    @classmethod
    def from_symbol(cls, symbol, exponent=1):
        sign = 1 if exponent > 0 else -1
        return cls(tuple(Letter(symbol, sign) for _ in range(abs(exponent))))

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, index):
        if isinstance(index, slice):
            return Word(self.letters[index])
        return self.letters[index]

    def __mul__(self, other):
        return Word(self.letters + other.letters)

    def __pow__(self, k):
        return word_power(self, k)

    def inverse(self):
        return Word(tuple(letter.inverse() for letter in reversed(self.letters)))

    def symbols(self):
        return {letter.symbol for letter in self.letters}

    def variables(self):
        """Variables of the word in symbol order."""
        return sorted((s for s in self.symbols() if s.is_variable), key=lambda s: s.sort_key)

    def constants(self):
        return sorted((s for s in self.symbols() if not s.is_variable), key=lambda s: s.sort_key)

    @property
    def shortlex_key(self):
        return (len(self.letters), tuple(letter.sort_key for letter in self.letters))

    def __str__(self):
        return format_word(self)


IDENTITY = Word()


def free_reduce(raw):
    """
    Freely reduce a raw sequence of (symbol, sign) letters.

    Parameters
    ----------
    raw : iterable
        ``Letter`` objects or ``(Symbol, ±1)`` pairs.

    Returns
    -------
    Word
        The unique freely reduced word.
    """
    return Word(tuple(raw))


def concatenate_raw(words):
    """Concatenate letter sequences without any reduction."""
    out: List[Letter] = []
    for w in words:
        out.extend(w.letters if isinstance(w, Word) else w)
    return tuple(out)


def cyclic_reduce(w):
    """
    Split ``w`` as ``conjugator^-1 * core * conjugator``.

    Returns
    -------
    tuple of Word
        ``(core, conjugator)`` with ``core`` cyclically reduced and the
        conjugator as short as possible (the last letters of ``w``).
    """
    letters = w.letters
    n = len(letters)
    k = 0
    while n - 2 * k >= 2 and letters[k] == letters[n - 1 - k].inverse():
        k += 1
    return Word(letters[k : n - k]), Word(letters[n - k :])


def is_cyclically_reduced(w):
    return len(w) < 2 or w.letters[0] != w.letters[-1].inverse()


def rotate(w, k):
    """Cyclic rotation starting at letter ``k``. Only meaningful for cyclically reduced words."""
    if not w.letters:
        return w
    k %= len(w)
    return Word(w.letters[k:] + w.letters[:k])


def rotations(w):
    return [rotate(w, k) for k in range(max(len(w), 1))]


def _least_rotation(letters):
    if not letters:
        return letters
    keys = [letter.sort_key for letter in letters]
    n = len(letters)
    best = min(range(n), key=lambda k: keys[k:] + keys[:k])
    return letters[best:] + letters[:best]


@dataclass(frozen=True)
class CyclicWord:
    """
    A cyclically reduced word up to rotation.

    ``core`` holds the least rotation, so equal cyclic words have identical cores.
    """

    core: Word = IDENTITY

    def __post_init__(self):
        reduced, _ = cyclic_reduce(self.core)
        object.__setattr__(self, "core", Word(_least_rotation(reduced.letters)))

    def __len__(self):
        return len(self.core)

    def rotations(self):
        return rotations(self.core)

    def __str__(self):
        return format_word(self.core)


def as_word(w):
    """Accept a ``Word`` or a ``CyclicWord`` and return a ``Word``."""
    return w.core if isinstance(w, CyclicWord) else w


def exponent_vector(w):
    """
    Exponent sum of every symbol occurring in ``w``.

    Returns
    -------
    dict
        Symbol -> integer. ``w`` is in H' iff all sums are 0, in 2H iff all are even.
    """
    sums: Dict[Symbol, int] = defaultdict(int)
    for letter in as_word(w).letters:
        sums[letter.symbol] += letter.sign
    return dict(sums)


def exponent_array(w, symbols=None):
    """Exponent sums as a numpy vector, ordered by ``symbols`` (default: symbol order)."""
    sums = exponent_vector(w)
    order = symbols if symbols is not None else sorted(sums, key=lambda s: s.sort_key)
    return np.array([sums.get(s, 0) for s in order], dtype=np.int64)


def in_commutator_subgroup(w):
    return bool(np.all(exponent_array(w) == 0))


def in_square_subgroup(w):
    return bool(np.all(exponent_array(w) % 2 == 0))


@dataclass(frozen=True, eq=False)
class Substitution:
    """
    A homomorphism given on finitely many variables; the rest map to themselves.

    ``compose(s, t)`` means apply ``s`` first, then ``t``.
    """

    assignments: Mapping[Symbol, Word] = field(default_factory=dict)

    def __post_init__(self):
        items = {}
        for key, value in dict(self.assignments).items():
            if not isinstance(key, Symbol) or not key.is_variable:
                raise DomainError(f"Substitutions bind variables only, not {key!r}.")
            if not isinstance(value, Word):
                raise MalformedWordError(f"The image of '{key}' should be a Word, not {type(value)}.")
            items[key] = value
        object.__setattr__(self, "assignments", MappingProxyType(items))

    def image(self, symbol):
        if symbol in self.assignments:
            return self.assignments[symbol]
        return Word((Letter(symbol, 1),))

    def __getitem__(self, symbol):
        return self.assignments[symbol]

    def __contains__(self, symbol):
        return symbol in self.assignments

    def __len__(self):
        return len(self.assignments)

    def items(self):
        return sorted(self.assignments.items(), key=lambda kv: kv[0].sort_key)

    @property
    def support(self):
        return frozenset(self.assignments)

    def apply(self, w):
        out: List[Letter] = []
        for letter in as_word(w).letters:
            image = self.assignments.get(letter.symbol)
            if image is None:
                out.append(letter)
            elif letter.sign > 0:
                out.extend(image.letters)
            else:
                out.extend(l.inverse() for l in reversed(image.letters))
        return Word(tuple(out))

    def restrict(self, symbols):
        keep = set(symbols)
        return Substitution({k: v for k, v in self.assignments.items() if k in keep})

    def updated(self, mapping):
        return Substitution({**self.assignments, **mapping})

    def compose(self, other):
        keys = set(self.assignments) | set(other.assignments)
        out = {}
        for key in keys:
            image = other.apply(self.image(key))
            if image.letters != (Letter(key, 1),):
                out[key] = image
        return Substitution(out)

    def __eq__(self, other):
        return isinstance(other, Substitution) and dict(self.assignments) == dict(other.assignments)

    def __hash__(self):
        return hash(frozenset(self.assignments.items()))

    def __str__(self):
        return format_substitution(self)


def apply_substitution(s, w):
    """Image of ``w`` under ``s``, freely reduced."""
    return s.apply(w)


def compose(*substitutions):
    """Compose left to right: the first substitution is applied first."""
    result = Substitution()
    for s in substitutions:
        result = result.compose(s)
    return result


def commutator(u, v):
    """``[u, v] = u^-1 v^-1 u v``."""
    return u.inverse() * v.inverse() * u * v


def word_power(w, k):
    base = w if k >= 0 else w.inverse()
    return Word(base.letters * abs(k))


def product(words):
    return Word(concatenate_raw(words))


def parse_word(text, kind=CONSTANT):
    """
    Parse the text word format.

    Tokens are separated by whitespace; a token is an identifier, optionally
    followed by ``^-1`` or ``^k``. The literal ``1`` is the empty word.

    Examples
    --------
    >>> str(parse_word("b^-1 a^-1 b^2 a b^-1"))
    'b^-1 a^-1 b^2 a b^-1'
    """
    if not isinstance(text, str):
        raise MalformedWordError(f"Expected a string, not {type(text)}.")
    out: List[Letter] = []
    for token in text.split():
        if token == "1":
            continue
        match = _TOKEN.match(token)
        if not match:
            raise MalformedWordError(f"Cannot parse token {token!r} in {text!r}.")
        name, exponent = match.groups()
        k = int(exponent) if exponent is not None else 1
        symbol = Symbol(name, kind)
        sign = 1 if k > 0 else -1
        out.extend(Letter(symbol, sign) for _ in range(abs(k)))
    return Word(tuple(out))


def format_word(w):
    """Inverse of ``parse_word``: runs of one letter are written as powers."""
    letters = as_word(w).letters
    if not letters:
        return "1"
    tokens = []
    i = 0
    while i < len(letters):
        j = i
        while j < len(letters) and letters[j] == letters[i]:
            j += 1
        k = (j - i) * letters[i].sign
        name = letters[i].symbol.name
        tokens.append(name if k == 1 else f"{name}^{k}")
        i = j
    return " ".join(tokens)


def format_substitution(s):
    return ", ".join(f"{k.name}={format_word(v)}" for k, v in s.items())


def fresh_variable(prefix, used, start=1):
    """First variable ``prefix<i>`` (i >= start) whose name is not in ``used``."""
    used_names = {u.name if isinstance(u, Symbol) else u for u in used}
    i = start
    while f"{prefix}{i}" in used_names:
        i += 1
    return Symbol(f"{prefix}{i}", VARIABLE)


def _alphabet_letters(alphabet):
    return [Letter(s, sign) for s in alphabet for sign in (1, -1)]


def random_word(rng, alphabet, length):
    """
    Uniform random reduced word of exactly ``length`` letters.

    Parameters
    ----------
    rng : numpy.random.Generator
    alphabet : sequence of Symbol
    length : int
    """
    letters = _alphabet_letters(alphabet)
    out: List[Letter] = []
    for _ in range(length):
        choices = [l for l in letters if not out or l != out[-1].inverse()]
        out.append(choices[int(rng.integers(len(choices)))])
    return Word(tuple(out))


def random_cyclically_reduced_word(rng, alphabet, length):
    """Random word of exactly ``length`` letters that is also cyclically reduced."""
    if length < 2:
        return random_word(rng, alphabet, length)
    head = random_word(rng, alphabet, length - 1)
    first, last = head.letters[0], head.letters[-1]
    choices = [l for l in _alphabet_letters(alphabet) if l != last.inverse() and l != first.inverse()]
    return Word(head.letters + (choices[int(rng.integers(len(choices)))],))
