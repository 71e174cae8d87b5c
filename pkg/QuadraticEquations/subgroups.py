"""
Finitely generated subgroups of H through Stallings folding.

A subgroup is drawn as a wedge of labelled loops at a base vertex and folded
until no vertex has two outgoing (or two incoming) edges with the same label.
The core of the folded graph decides membership and equality of subgroups.
"""

# Standard library imports
import hashlib
import logging
from collections import deque
from dataclasses import dataclass
from typing import Optional

# Third Party Imports
import networkx as nx
import numpy as np

# Local Application Imports
from QuadraticEquations.datavalidation import DomainError, assert_constant_word
from QuadraticEquations.wordcore import Word, as_word

logger = logging.getLogger(__name__)


class FoldedGraph:
    """
    Folded core graph of the subgroup generated by ``generators``.

    Parameters
    ----------
    generators : iterable of Word
        Constant words. Trivial generators are ignored.
    seed : int, optional
        Shuffles the order folds are made in; the result does not depend on it.

    Attributes
    ----------
    graph : networkx.MultiDiGraph
        Edges carry the constant symbol in their ``label`` attribute.
    base : int
        The base vertex.
    """

    def __init__(self, generators, seed=None):
        self.generators = tuple(as_word(g) for g in generators)
        for g in self.generators:
            assert_constant_word(g, "generator")
        self.base = 0
        self.graph = nx.MultiDiGraph()
        self.graph.add_node(self.base)
        self._rng = np.random.default_rng(seed) if seed is not None else None
        self._next_node = 1
        self.folds = 0
        self._build_wedge()
        self._fold()
        self._prune()
        logger.debug(
            "folded %d generators into %d vertices, %d edges",
            len(self.generators),
            self.graph.number_of_nodes(),
            self.graph.number_of_edges(),
        )

    def _new_node(self):
        node = self._next_node
        self._next_node += 1
        self.graph.add_node(node)
        return node

    def _add_letter(self, start, end, letter):
        if letter.sign > 0:
            self.graph.add_edge(start, end, label=letter.symbol)
        else:
            self.graph.add_edge(end, start, label=letter.symbol)

    def _build_wedge(self):
        for g in self.generators:
            if not len(g):
                continue
            current = self.base
            for i, letter in enumerate(g.letters):
                end = self.base if i == len(g) - 1 else self._new_node()
                self._add_letter(current, end, letter)
                current = end

    def _node_order(self):
        nodes = sorted(self.graph.nodes)
        if self._rng is not None:
            nodes = [nodes[i] for i in self._rng.permutation(len(nodes))]
        return nodes

    def _find_fold(self):
        for node in self._node_order():
            seen = {}
            for _, target, key, data in self.graph.out_edges(node, keys=True, data=True):
                label = data["label"]
                if label in seen:
                    return node, seen[label], (target, key), "out"
                seen[label] = (target, key)
            seen = {}
            for source, _, key, data in self.graph.in_edges(node, keys=True, data=True):
                label = data["label"]
                if label in seen:
                    return node, seen[label], (source, key), "in"
                seen[label] = (source, key)
        return None

    def _merge(self, keep, gone):
        G = self.graph
        for _, target, data in list(G.out_edges(gone, data=True)):
            G.add_edge(keep, keep if target == gone else target, label=data["label"])
        for source, _, data in list(G.in_edges(gone, data=True)):
            if source != gone:
                G.add_edge(source, keep, label=data["label"])
        G.remove_node(gone)

    def _fold(self):
        while True:
            found = self._find_fold()
            if found is None:
                return
            node, (first, _), (second, key), direction = found
            if direction == "out":
                self.graph.remove_edge(node, second, key)
            else:
                self.graph.remove_edge(second, node, key)
            if first != second:
                keep, gone = (second, first) if second == self.base else (first, second)
                self._merge(keep, gone)
            self.folds += 1

    def _prune(self):
        G = self.graph
        while True:
            hanging = [n for n in G.nodes if n != self.base and G.degree(n) <= 1]
            if not hanging:
                return
            G.remove_nodes_from(hanging)

    @property
    def rank(self):
        return self.graph.number_of_edges() - self.graph.number_of_nodes() + 1

    def _step(self, node, letter):
        if letter.sign > 0:
            edges = self.graph.out_edges(node, data=True)
            return next((t for _, t, d in edges if d["label"] == letter.symbol), None)
        edges = self.graph.in_edges(node, data=True)
        return next((s for s, _, d in edges if d["label"] == letter.symbol), None)

    def contains(self, w):
        """True when the reduced word ``w`` reads a closed path at the base."""
        node = self.base
        for letter in as_word(w).letters:
            node = self._step(node, letter)
            if node is None:
                return False
        return node == self.base

    def canonical_form(self):
        """
        Breadth-first relabelling from the base, independent of fold order.

        Returns
        -------
        tuple
            ``(vertex_count, sorted edges (source, label, target))``.
        """
        G = self.graph
        numbering = {self.base: 0}
        queue = deque([self.base])
        while queue:
            node = queue.popleft()
            moves = [(d["label"].sort_key, 0, t) for _, t, d in G.out_edges(node, data=True)]
            moves += [(d["label"].sort_key, 1, s) for s, _, d in G.in_edges(node, data=True)]
            for _, _, other in sorted(moves, key=lambda m: (m[0], m[1])):
                if other not in numbering:
                    numbering[other] = len(numbering)
                    queue.append(other)
        edges = sorted((numbering[s], d["label"].name, numbering[t]) for s, t, d in G.edges(data=True))
        return len(numbering), tuple(edges)

    def fingerprint_id(self):
        return hashlib.sha256(repr(self.canonical_form()).encode()).hexdigest()[:16]


def folded_graph(generators, seed=None):
    return FoldedGraph(generators, seed=seed)


def contains(g, w):
    """Membership of ``w`` in a folded graph, or in the subgroup generated by a list of words."""
    graph = g if isinstance(g, FoldedGraph) else FoldedGraph(g)
    return graph.contains(w)


def same_subgroup(first, second):
    """True when two generating tuples generate the same subgroup of H."""
    return FoldedGraph(first).canonical_form() == FoldedGraph(second).canonical_form()


def _nontrivial_pair(u, v):
    u, v = as_word(u), as_word(v)
    if not len(u) or not len(v):
        raise DomainError("Nielsen reduction needs two nontrivial words.")
    return u, v


def nielsen_violations(u, v):
    """
    Conditions of Nielsen reducedness the pair ``(u, v)`` fails.

    Returns
    -------
    list of str
        Empty when the pair is Nielsen reduced. Entries name the failing
        condition and the words involved.
    """
    u, v = _nontrivial_pair(u, v)
    out = []
    if u == v or u == v.inverse():
        out.append(f"N0: {u} = {v}^±1")
    letters = [u, u.inverse(), v, v.inverse()]
    for p in letters:
        for q in letters:
            if p == q.inverse():
                continue
            if len(p * q) < max(len(p), len(q)):
                out.append(f"N1: |{p} {q}| < max(|{p}|, |{q}|)")
            for r in letters:
                if q == r.inverse():
                    continue
                if len(p * q * r) <= len(p) - len(q) + len(r):
                    out.append(f"N2: |{p} {q} {r}| <= |{p}| - |{q}| + |{r}|")
    return out


def is_nielsen_reduced_pair(u, v):
    return not nielsen_violations(u, v)


@dataclass(frozen=True)
class PrefixMembership:
    holds: bool
    offending_prefix: Optional[Word] = None


def verify_prefix_membership(u, v):
    """
    Check that no nontrivial proper prefix of ``u`` lies in ``<u, v>``.

    Returns
    -------
    PrefixMembership
        ``offending_prefix`` is the shortest prefix in the subgroup, if any.
    """
    u, v = _nontrivial_pair(u, v)
    graph = FoldedGraph((u, v))
    for k in range(1, len(u)):
        prefix = u[:k]
        if graph.contains(prefix):
            return PrefixMembership(False, prefix)
    return PrefixMembership(True)
