"""
Automorphisms of F that bring quadratic words and their solutions into shape.

Two procedures live here. ``standard_form_automorphism`` carries any quadratic
word to ``[x1,y1]...[xg,yg]`` or ``x1^2...xg^2`` with an explicit inverse.
``reduce_solution`` shortens a solution of ``W = U`` by automorphisms of F until
the solution is cancellation free and the word irredundant, checking after
every move that the genus did not drop.

The square and commutator identities used as genus witnesses are at the end.
"""

# Standard library imports
import logging
import re
from dataclasses import dataclass, field
from typing import FrozenSet, List, NamedTuple, Tuple

# Local Application Imports
from QuadraticEquations.datavalidation import (
    DomainError,
    HypothesisViolationError,
    QuadraticEquationError,
    assert_constant_word,
    assert_nontrivial,
    assert_positive_integer,
    assert_variable_word,
)
from QuadraticEquations.quadraticsurface import (
    corner_vertices,
    edge_endpoints,
    is_quadratic,
    redundant_pair,
    surface_data,
)
from QuadraticEquations.wordcore import (
    IDENTITY,
    Letter,
    Substitution,
    Word,
    as_word,
    commutator,
    compose,
    cyclic_reduce,
    fresh_variable,
    is_cyclically_reduced,
    product,
    variable,
)

logger = logging.getLogger(__name__)

TRIVIAL_IMAGE_WHITEHEAD = "trivial_image_whitehead"
CANCELLATION_SPLIT = "cancellation_split"
REDUNDANCY = "redundancy"

_RESERVED = re.compile(r"^[xyt]\d+$")


@dataclass(frozen=True)
class TrackedAutomorphism:
    """
    An automorphism of F kept together with its inverse.

    ``forward`` and ``backward`` are mutually inverse on every word over
    ``support``.
    """

    forward: Substitution = field(default_factory=Substitution)
    backward: Substitution = field(default_factory=Substitution)
    support: FrozenSet = frozenset()

    def then(self, other):
        """Apply ``self`` first, then ``other``."""
        return TrackedAutomorphism(
            forward=compose(self.forward, other.forward),
            backward=compose(other.backward, self.backward),
            support=self.support | other.support,
        )

    def inverse(self):
        return TrackedAutomorphism(self.backward, self.forward, self.support)

    def apply(self, w):
        return self.forward.apply(w)

    def pull_back(self, w):
        return self.backward.apply(w)

    def round_trips(self, w):
        """True when ``w`` survives forward-then-backward and backward-then-forward."""
        w = as_word(w)
        return self.pull_back(self.apply(w)) == w and self.apply(self.pull_back(w)) == w


def _letter_word(symbol, sign=1):
    return Word((Letter(symbol, sign),))


def _letter_image(letter, left, right):
    v = _letter_word(letter.symbol)
    if letter.sign > 0:
        return {letter.symbol: left * v * right}
    return {letter.symbol: right.inverse() * v * left.inverse()}


def letter_substitution(letter, left=IDENTITY, right=IDENTITY):
    """
    The automorphism ``L -> left * L * right`` for the signed letter ``L``.

    Both occurrences of the variable of ``L`` follow, whatever their sign.
    ``left`` and ``right`` must not contain that variable.
    """
    others = left.symbols() | right.symbols()
    if letter.symbol in others:
        raise DomainError(f"Cannot substitute '{letter}' by a word containing it.")
    return TrackedAutomorphism(
        forward=Substitution(_letter_image(letter, left, right)),
        backward=Substitution(_letter_image(letter, left.inverse(), right.inverse())),
        support=frozenset(others | {letter.symbol}),
    )


def partial_conjugation(variables, d):
    """``v -> d^-1 v d`` for every ``v`` in ``variables``; ``d`` must be a word in them."""
    variables = frozenset(variables)
    if not d.symbols() <= variables:
        raise DomainError(f"The conjugator '{d}' leaves the conjugated variables.")
    forward = {v: d.inverse() * _letter_word(v) * d for v in variables}
    backward = {v: d * _letter_word(v) * d.inverse() for v in variables}
    return TrackedAutomorphism(Substitution(forward), Substitution(backward), variables)


def _signed_swap(pairs):
    # (old, new, sign): old -> new^sign and new -> old^sign; the map is its own inverse
    mapping = {}
    for old, new, sign in pairs:
        mapping[old] = _letter_word(new, sign)
        mapping[new] = _letter_word(old, sign)
    swap = Substitution(mapping)
    return TrackedAutomorphism(swap, swap, frozenset(mapping))


def _rename_reserved(w):
    """Swap every variable named like a standard-form output onto a fresh ``r<i>``."""
    used = {s.name for s in w.variables()}
    pairs = []
    for s in w.variables():
        if _RESERVED.match(s.name):
            fresh = fresh_variable("r", used)
            used.add(fresh.name)
            pairs.append((s, fresh, 1))
    if not pairs:
        return TrackedAutomorphism()
    logger.debug("renamed %s before normalizing", [s.name for s, _, _ in pairs])
    return _signed_swap(pairs)


def standard_variables(genus, orientable):
    """``[x1, y1, ..., xg, yg]`` or ``[x1, ..., xg]``."""
    if orientable:
        return [variable(f"{n}{i}") for i in range(1, genus + 1) for n in ("x", "y")]
    return [variable(f"x{i}") for i in range(1, genus + 1)]


def standard_form_word(genus, orientable):
    """``[x1,y1]...[xg,yg]`` when orientable, else ``x1^2...xg^2``."""
    symbols = standard_variables(genus, orientable)
    if orientable:
        return product(
            commutator(_letter_word(symbols[2 * i]), _letter_word(symbols[2 * i + 1])) for i in range(genus)
        )
    return product(_letter_word(s) * _letter_word(s) for s in symbols)


def _positions(letters):
    out = {}
    for i, letter in enumerate(letters):
        out.setdefault(letter.symbol, []).append(i)
    return out


def _other(positions, letter_symbol, i):
    a, b = positions[letter_symbol]
    return b if a == i else a


def _advance(step, current, move):
    return step.then(move), move.apply(current)


def _cyclic_reduction_step(tail):
    core, conj = cyclic_reduce(tail)
    if not len(conj):
        return None
    return partial_conjugation(tail.variables(), conj.inverse())


def _first_crosscap(letters):
    positions = _positions(letters)
    for i, letter in enumerate(letters):
        j = _other(positions, letter.symbol, i)
        if j > i and letters[j] == letter:
            return i, j
    return None


def _rotate_to(step, current, index):
    if index:
        return _advance(step, current, partial_conjugation(current.variables(), current[:index]))
    return step, current


def _peel_crosscap(tail, i, j):
    X = tail.letters[i]
    step, current = TrackedAutomorphism(), tail
    between = tail[i + 1 : j]
    if len(between):
        step, current = _advance(step, current, letter_substitution(X, right=between.inverse()))
    letters = current.letters
    at = next(k for k in range(len(letters) - 1) if letters[k] == X and letters[k + 1] == X)
    step, current = _rotate_to(step, current, at)
    if current.letters[:2] != (X, X):
        raise QuadraticEquationError(f"Could not isolate the crosscap of '{X}' in '{tail}'.")
    return step, current[2:], ("crosscap", (X,))


def _first_interlocked(letters):
    positions = _positions(letters)
    for i, letter in enumerate(letters):
        j = _other(positions, letter.symbol, i)
        if j < i:
            continue
        for t in range(i + 1, j):
            o = _other(positions, letters[t].symbol, t)
            if o < i or o > j:
                return i
    return None


def _peel_handle(tail):
    first = _first_interlocked(tail.letters)
    if first is None:
        raise QuadraticEquationError(f"'{tail}' has no interlocked pair to peel.")
    X = tail.letters[first]
    step, current = _rotate_to(TrackedAutomorphism(), tail, first)

    letters = current.letters
    positions = _positions(letters)
    j = _other(positions, X.symbol, 0)
    t = next(t for t in range(1, j) if _other(positions, letters[t].symbol, t) > j)
    Y = letters[t]

    # X P Y M X^-1 K Y^-1 Q  ->  X Y X^-1 Y^-1 Q'
    before_y = current[1:t]
    if len(before_y):
        step, current = _advance(step, current, letter_substitution(X, right=before_y.inverse()))
    middle = current[2 : current.letters.index(X.inverse())]
    if len(middle):
        step, current = _advance(step, current, letter_substitution(Y, right=middle.inverse()))
    start = current.letters.index(X.inverse()) + 1
    gap = current[start : current.letters.index(Y.inverse())]
    if len(gap):
        step, current = _advance(step, current, letter_substitution(X.inverse(), right=gap.inverse()))
    step, current = _rotate_to(step, current, current.letters.index(X))
    if current.letters[:4] != (X, Y, X.inverse(), Y.inverse()):
        raise QuadraticEquationError(f"Could not isolate the handle of '{X}', '{Y}' in '{tail}'.")
    return step, current[4:], ("handle", (X, Y))


def _absorb_handle(gamma, crosscap, handle):
    """``C^2 [a, b]`` becomes ``C^2 (b^-1)^2 (a^-1)^2``."""
    C = crosscap
    a, b = handle[0].inverse(), handle[1].inverse()
    Cw, A, B = Word((C,)), Word((a,)), Word((b,))
    for letter, right in (
        (C, A),
        (a, B * Cw.inverse()),
        (b, Cw),
        (C, B.inverse() * B.inverse() * A.inverse() * A.inverse()),
    ):
        gamma = gamma.then(letter_substitution(letter, right=right))
    return gamma, [("crosscap", (b.inverse(),)), ("crosscap", (a.inverse(),))]


def _block_word(blocks):
    out = IDENTITY
    for kind, letters in blocks:
        if kind == "crosscap":
            out = out * Word(letters * 2)
        else:
            X, Y = letters
            out = out * Word((X, Y, X.inverse(), Y.inverse()))
    return out


def standard_form_automorphism(w, genus=None, orientable=None):
    """
    Automorphism of F carrying a quadratic word to its standard form.

    Parameters
    ----------
    w : Word or CyclicWord
        Quadratic word in variables. Variables already named ``x<i>``,
        ``y<i>`` or ``t<i>`` are first moved to fresh ``r<i>``.
    genus : int, optional
        Checked against the genus of ``w`` when given.
    orientable : bool, optional
        Checked against the orientability of ``w`` when given.

    Returns
    -------
    TrackedAutomorphism
        ``forward`` maps ``w`` onto ``standard_form_word(g, orientable)``.
        Variables of ``w`` that vanish on the way are sent to spares
        ``t1, t2, ...``.

    Raises
    ------
    DomainError
        If ``w`` is not quadratic or contradicts the given genus or
        orientability.
    """
    w = as_word(w)
    assert_variable_word(w, "w")
    if not is_quadratic(w):
        raise DomainError(f"'{w}' is not quadratic.")
    data = surface_data(w)
    if genus is not None and genus != data.genus:
        raise DomainError(f"'{w}' has genus {data.genus}, not {genus}.")
    if orientable is not None and orientable != data.orientable:
        raise DomainError(f"'{w}' is {'' if data.orientable else 'non'}orientable.")

    original = w
    rename = _rename_reserved(w)
    w = rename.apply(w)
    gamma = TrackedAutomorphism(support=frozenset(w.variables()))
    blocks = []
    tail = w
    while len(tail):
        move = _cyclic_reduction_step(tail)
        if move is not None:
            gamma, tail = _advance(gamma, tail, move)
        if not len(tail):
            break
        crosscap = _first_crosscap(tail.letters)
        if crosscap is not None:
            step, tail, block = _peel_crosscap(tail, *crosscap)
        else:
            step, tail, block = _peel_handle(tail)
        gamma = gamma.then(step)
        blocks.append(block)
        logger.debug("peeled %s, tail %s", block[0], tail)

    crosscaps = [b for b in blocks if b[0] == "crosscap"]
    if crosscaps and len(crosscaps) < len(blocks):
        absorbed = list(crosscaps)
        for _, handle in blocks[len(crosscaps) :]:
            gamma, extra = _absorb_handle(gamma, absorbed[-1][1][0], handle)
            absorbed.extend(extra)
        blocks = absorbed

    if gamma.apply(w) != _block_word(blocks):
        raise QuadraticEquationError(f"Standard form reduction of '{w}' went astray.")

    is_orientable = all(kind == "handle" for kind, _ in blocks)
    pairs = []
    for i, (kind, letters) in enumerate(blocks, 1):
        if kind == "crosscap":
            pairs.append((letters[0].symbol, variable(f"x{i}"), letters[0].sign))
        else:
            X, Y = letters
            pairs.append((X.symbol, variable(f"x{i}"), -X.sign))
            pairs.append((Y.symbol, variable(f"y{i}"), -Y.sign))
    used = {old for old, _, _ in pairs}
    spares = [v for v in w.variables() if v not in used]
    pairs.extend((v, variable(f"t{k}"), 1) for k, v in enumerate(spares, 1))
    gamma = rename.then(gamma.then(_signed_swap(pairs)))

    target = standard_form_word(len(blocks), is_orientable or not blocks)
    if gamma.apply(original) != target or len(blocks) != data.genus:
        raise QuadraticEquationError(f"Standard form of '{original}' came out as '{gamma.apply(original)}'.")
    logger.info("standard form of %s: %s", original, target)
    return gamma


def standard_form(w):
    """The standard form word itself."""
    return standard_form_automorphism(w).apply(as_word(w))


class ReductionStep(NamedTuple):
    move_kind: str
    move: TrackedAutomorphism
    measure_before: Tuple[int, int]
    measure_after: Tuple[int, int]
    word_after: Word


@dataclass
class ReductionTrace:
    """Every move ``reduce_solution`` made, in order."""

    steps: List[ReductionStep] = field(default_factory=list)

    def __len__(self):
        return len(self.steps)

    def kinds(self):
        return [s.move_kind for s in self.steps]

    def is_strictly_decreasing(self):
        return all(s.measure_after < s.measure_before for s in self.steps)


class ReductionResult(NamedTuple):
    word: Word
    solution: Substitution
    automorphism: TrackedAutomorphism
    trace: ReductionTrace


def solution_measure(w, psi):
    """``(total image length, number of variables)``, compared lexicographically."""
    variables = as_word(w).variables()
    return sum(len(psi.image(v)) for v in variables), len(variables)


def _trivial_image_move(w, psi):
    x = next((v for v in w.variables() if len(psi.image(v)) == 0), None)
    if x is None:
        return None
    ends = edge_endpoints(w)
    tail, head = ends[x]
    if tail == head:
        raise HypothesisViolationError(
            f"'{x}' has trivial image but its edge is a loop; deleting it lowers the genus.", TRIVIAL_IMAGE_WHITEHEAD
        )
    # conjugate at whichever end of the edge avoids corner 0
    X = _letter_word(x)
    vertex, conj = (tail, X) if corner_vertices(w)[0] != tail else (head, X.inverse())
    forward, backward = {}, {}
    for y, (ty, hy) in ends.items():
        if y == x:
            continue
        left = conj if ty == vertex else IDENTITY
        right = conj.inverse() if hy == vertex else IDENTITY
        if not len(left) and not len(right):
            continue
        forward[y] = left * _letter_word(y) * right
        backward[y] = left.inverse() * _letter_word(y) * right.inverse()
    move = TrackedAutomorphism(Substitution(forward), Substitution(backward), frozenset(w.variables()))
    if move.apply(w) != Substitution({x: IDENTITY}).apply(w):
        raise HypothesisViolationError(f"Collapsing the edge of '{x}' did not delete it from '{w}'.", TRIVIAL_IMAGE_WHITEHEAD)
    return TRIVIAL_IMAGE_WHITEHEAD, move, {}


def _cancellation_move(w, psi, used):
    letters = w.letters
    for i in range(len(letters) - 1):
        p, q = letters[i], letters[i + 1]
        P, Q = psi.apply(Word((p,))), psi.apply(Word((q,)))
        k = 0
        while k < min(len(P), len(Q)) and P.letters[-1 - k] == Q.letters[k].inverse():
            k += 1
        if not k:
            continue
        shared = P[len(P) - k :]
        z = fresh_variable("z", used)
        used.add(z.name)
        Z = _letter_word(z)
        if p.symbol == q.symbol:
            move = letter_substitution(p, left=Z.inverse(), right=Z)
        else:
            move = letter_substitution(p, right=Z).then(letter_substitution(q, left=Z.inverse()))
        logger.debug("split junction %s %s through %s = %s", p, q, z, shared)
        return CANCELLATION_SPLIT, move, {z: shared}
    return None


def _redundancy_move(w, psi):
    pair = redundant_pair(w, cyclic=False)
    if pair is None:
        return None
    p, q = w.letters[pair[0]], w.letters[pair[0] + 1]
    return REDUNDANCY, letter_substitution(p, right=Word((q.inverse(),))), {}


def reduce_solution(w, psi, u, max_steps=None):
    """
    Make a solution of ``W = U`` cancellation free by automorphisms of F.

    Moves are tried in this order: delete a variable with trivial image,
    split a cancelling junction through a fresh ``z<i>``, merge a redundant
    pair. Each strictly lowers ``solution_measure``.

    Parameters
    ----------
    w : Word
        Quadratic word in variables, read as an ordinary word.
    psi : Substitution
        Binds every variable of ``w`` to a constant word, with ``w psi == u``.
    u : Word
        Nontrivial, cyclically reduced constant word.
    max_steps : int, optional
        Safety cap; defaults to ``2 N + |Var(w)| + 1``.

    Returns
    -------
    ReductionResult
        ``(w', psi', beta, trace)`` with ``w' = w beta``, ``w' psi' == u``
        letter for letter, and ``psi'`` keeping an image for every variable
        ever seen.

    Raises
    ------
    HypothesisViolationError
        If a move would lower the genus, meaning ``u`` has a smaller genus
        than ``w``.
    """
    w, u = as_word(w), as_word(u)
    assert_variable_word(w, "w")
    assert_constant_word(u, "u")
    assert_nontrivial(u, "u")
    if not is_quadratic(w):
        raise DomainError(f"'{w}' is not quadratic.")
    if not is_cyclically_reduced(u):
        raise DomainError(f"'{u}' should be cyclically reduced.")
    missing = sorted(v.name for v in w.variables() if v not in psi)
    if missing:
        raise DomainError(f"The solution gives no image for {missing}.")
    for v, image in psi.items():
        assert_constant_word(image, f"psi({v})")
    if psi.apply(w) != u:
        raise DomainError(f"'{w}' does not evaluate to '{u}' under the given solution.")

    data = surface_data(w)
    used = {s.name for s in w.symbols()} | {s.name for s in psi.support}
    n0, v0 = solution_measure(w, psi)
    limit = max_steps if max_steps is not None else 2 * n0 + v0 + 1
    beta = TrackedAutomorphism(support=frozenset(w.variables()))
    trace = ReductionTrace()

    while True:
        before = solution_measure(w, psi)
        found = _trivial_image_move(w, psi) or _cancellation_move(w, psi, used) or _redundancy_move(w, psi)
        if found is None:
            break
        if len(trace) >= limit:
            raise QuadraticEquationError(f"Reduction of '{w}' did not stop within {limit} moves.")
        kind, move, extension = found
        new_w = move.apply(w)
        new_psi = compose(move.backward, psi.updated(extension))
        if not is_quadratic(new_w) or not len(new_w):
            raise HypothesisViolationError(f"A {kind} move turned '{w}' into '{new_w}'.", kind)
        new_data = surface_data(new_w)
        if (new_data.chi, new_data.orientable) != (data.chi, data.orientable):
            raise HypothesisViolationError(
                f"A {kind} move took '{w}' (genus {data.genus}) to '{new_w}' (genus {new_data.genus}).", kind
            )
        after = solution_measure(new_w, new_psi)
        if not after < before:
            raise QuadraticEquationError(f"A {kind} move did not shorten the solution: {before} -> {after}.")
        trace.steps.append(ReductionStep(kind, move, before, after, new_w))
        beta = beta.then(move)
        w, psi = new_w, new_psi
        logger.debug("%s: %s, measure %s -> %s", kind, w, before, after)

    if psi.apply(w) != u:
        raise QuadraticEquationError(f"Reduction lost the solution: '{w}' no longer spells '{u}'.")
    logger.info("reduced to %s in %d moves", w, len(trace))
    return ReductionResult(w, psi, beta, trace)


def three_squares(u, v):
    """``(p, q, r)`` with ``[u, v] = p^2 q^2 r^2``."""
    return u.inverse(), u * v.inverse(), v


def crosscap_handle_squares(c, a, b):
    """``(p, q, r)`` with ``c^2 [a, b] = p^2 q^2 r^2``."""
    ai, bi, ci = a.inverse(), b.inverse(), c.inverse()
    return c * c * ai * bi * a * b * a * ci, c * ai * bi, b * a * ci * ai


def square_commutator_identity(s, t):
    """``(p, q)`` with ``[s^2, t] = p^2 q^2``."""
    return s.inverse(), t.inverse() * s * t


def commutator_square_identity(p, q):
    """``(r, s)`` with ``[p, q^2] = [r, s]``."""
    return p.inverse() * q * q * p, p.inverse()


def squares_witness_from_commutators(pairs):
    """
    Turn ``prod [u_i, v_i]`` (h factors) into a product of ``2h + 1`` squares.

    Returns
    -------
    list of Word
        Square roots whose squares multiply to the commutator product.
    """
    pairs = list(pairs)
    assert_positive_integer(len(pairs), "number of commutators")
    squares = list(three_squares(*pairs[0]))
    for a, b in pairs[1:]:
        squares[-1:] = crosscap_handle_squares(squares[-1], a, b)
    return squares
