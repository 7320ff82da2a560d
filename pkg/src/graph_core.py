#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Finite simple graphs with bit-row adjacency.

Graph values are immutable.  Each row is a Python int whose bit j is set
when the vertex is adjacent to j; dense numpy views are derived on demand
for matrix-style computations.
"""

import logging
import time
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

logger = logging.getLogger(__name__)


class GraphError(ValueError):
    """Raised for malformed graphs, bad vertex indices and non-bijections."""


def _bits(mask: int) -> List[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _popcount(mask: int) -> int:
    return bin(mask).count("1")


class Graph:
    """Simple undirected graph on vertices 0..n-1."""

    def __init__(self, n: int, rows: Sequence[int]):
        if n < 0:
            raise GraphError(f"Vertex count must be nonnegative, got {n}")
        rows = tuple(int(r) for r in rows)
        if len(rows) != n:
            raise GraphError(f"Expected {n} adjacency rows, got {len(rows)}")
        full = (1 << n) - 1
        for u, r in enumerate(rows):
            if r & ~full:
                raise GraphError(f"Row {u} references vertices outside 0..{n - 1}")
            if r >> u & 1:
                raise GraphError(f"Diagonal entry at vertex {u}: loops are not allowed")
            for v in _bits(r):
                if not rows[v] >> u & 1:
                    raise GraphError(f"Adjacency is not symmetric at ({u}, {v})")
        self._n = n
        self._rows = rows

    # ------------------------------------------------------------------
    # Construction
    # ------------------------------------------------------------------

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"Edge ({u}, {v}) out of range for {n} vertices")
            if u == v:
                raise GraphError(f"Loop at vertex {u} is not allowed")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, rows)

    @classmethod
    def from_adjacency(cls, matrix) -> "Graph":
        """Build from a square 0/1 matrix; nonzero diagonal entries are rejected."""
        a = np.asarray(matrix)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise GraphError(f"Adjacency matrix must be square, got shape {a.shape}")
        if not np.isin(a, (0, 1)).all():
            raise GraphError("Adjacency matrix entries must be 0 or 1")
        if np.any(np.diag(a)):
            bad = int(np.flatnonzero(np.diag(a))[0])
            raise GraphError(f"Diagonal entry at vertex {bad}: loops are not allowed")
        if not np.array_equal(a, a.T):
            u, v = map(int, np.argwhere(a != a.T)[0])
            raise GraphError(f"Adjacency is not symmetric at ({u}, {v})")
        n = a.shape[0]
        rows = []
        for u in range(n):
            r = 0
            for v in np.flatnonzero(a[u]):
                r |= 1 << int(v)
            rows.append(r)
        return cls(n, rows)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        full = (1 << n) - 1
        return cls(n, [full & ~(1 << u) for u in range(n)])

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, [0] * n)

    @classmethod
    def from_networkx(cls, g: nx.Graph) -> "Graph":
        nodes = sorted(g.nodes())
        index = {v: i for i, v in enumerate(nodes)}
        return cls.from_edges(len(nodes), ((index[u], index[v]) for u, v in g.edges()))

    # ------------------------------------------------------------------
    # Accessors
    # ------------------------------------------------------------------

    @property
    def n(self) -> int:
        return self._n

    @property
    def rows(self) -> Tuple[int, ...]:
        return self._rows

    def has_edge(self, u: int, v: int) -> bool:
        self._check_vertex(u)
        self._check_vertex(v)
        return bool(self._rows[u] >> v & 1)

    def neighbors(self, u: int) -> List[int]:
        self._check_vertex(u)
        return _bits(self._rows[u])

    def degree(self, u: int) -> int:
        self._check_vertex(u)
        return _popcount(self._rows[u])

    def degrees(self) -> List[int]:
        return [_popcount(r) for r in self._rows]

    def edges(self) -> List[Tuple[int, int]]:
        return [(u, v) for u in range(self._n) for v in _bits(self._rows[u] >> (u + 1) << (u + 1))]

    @property
    def number_of_edges(self) -> int:
        return sum(self.degrees()) // 2

    @cached_property
    def adjacency(self) -> np.ndarray:
        """Read-only int64 adjacency matrix."""
        a = np.zeros((self._n, self._n), dtype=np.int64)
        for u, r in enumerate(self._rows):
            for v in _bits(r):
                a[u, v] = 1
        a.setflags(write=False)
        return a

    def complement(self) -> "Graph":
        full = (1 << self._n) - 1
        return Graph(self._n, [full & ~r & ~(1 << u) for u, r in enumerate(self._rows)])

    def induced_subgraph(self, vertices: Sequence[int]) -> "Graph":
        """Subgraph induced on ``vertices``; new vertex k is vertices[k]."""
        vertices = list(vertices)
        if len(set(vertices)) != len(vertices):
            raise GraphError("Induced subgraph vertices must be distinct")
        for v in vertices:
            self._check_vertex(v)
        rows = []
        for u in vertices:
            r = 0
            for k, v in enumerate(vertices):
                if self._rows[u] >> v & 1:
                    r |= 1 << k
            rows.append(r)
        return Graph(len(vertices), rows)

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Image graph under the bijection u -> perm[u]."""
        _check_bijection(perm, self._n)
        perm = [int(p) for p in perm]
        rows = [0] * self._n
        for u, r in enumerate(self._rows):
            image = 0
            for v in _bits(r):
                image |= 1 << perm[v]
            rows[perm[u]] = image
        return Graph(self._n, rows)

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self._n))
        g.add_edges_from(self.edges())
        return g

    def _check_vertex(self, v: int) -> None:
        if not isinstance(v, (int, np.integer)) or not 0 <= v < self._n:
            raise GraphError(f"Invalid vertex index {v!r} for a graph on {self._n} vertices")

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and self._rows == other._rows

    def __hash__(self):
        return hash((self._n, self._rows))

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, m={self.number_of_edges})"


def _check_bijection(perm: Sequence[int], n: int) -> None:
    if len(perm) != n or sorted(int(p) for p in perm) != list(range(n)):
        raise GraphError(f"Not a bijection on {n} vertices")


# ----------------------------------------------------------------------
# Regularity and distances
# ----------------------------------------------------------------------

def srg_parameters(g: Graph) -> Optional[Tuple[int, int, int, int]]:
    """(n, k, lambda, mu) if g is strongly regular, else None.

    A vacuous lambda (no edges) or mu (no non-adjacent pairs) is reported
    as 0.
    """
    degrees = set(g.degrees())
    if len(degrees) > 1:
        return None
    k = degrees.pop() if degrees else 0
    a = g.adjacency
    common = a @ a
    off_diag = ~np.eye(g.n, dtype=bool)
    on_edges = common[a == 1]
    on_non_edges = common[(a == 0) & off_diag]
    lam = set(on_edges.tolist())
    mu = set(on_non_edges.tolist())
    if len(lam) > 1 or len(mu) > 1:
        return None
    return g.n, k, (lam.pop() if lam else 0), (mu.pop() if mu else 0)


def complement_srg_parameters(params: Tuple[int, int, int, int]) -> Tuple[int, int, int, int]:
    """Parameters of the complement of an SRG(n, k, lambda, mu)."""
    n, k, lam, mu = params
    return n, n - k - 1, n - 2 - 2 * k + mu, n - 2 * k + lam


def distance(g: Graph, u: int, v: int) -> Optional[int]:
    """Shortest-path length between u and v, or None if unreachable."""
    g._check_vertex(u)
    g._check_vertex(v)
    if u == v:
        return 0
    seen = 1 << u
    frontier = 1 << u
    d = 0
    target = 1 << v
    while frontier:
        d += 1
        nxt = 0
        for w in _bits(frontier):
            nxt |= g.rows[w]
        nxt &= ~seen
        if nxt & target:
            return d
        seen |= nxt
        frontier = nxt
    return None


def distance_matrix(g: Graph) -> np.ndarray:
    """All-pairs BFS distances; -1 marks unreachable pairs."""
    out = np.full((g.n, g.n), -1, dtype=np.int64)
    for s in range(g.n):
        out[s, s] = 0
        seen = frontier = 1 << s
        d = 0
        while frontier:
            d += 1
            nxt = 0
            for w in _bits(frontier):
                nxt |= g.rows[w]
            nxt &= ~seen
            for w in _bits(nxt):
                out[s, w] = d
            seen |= nxt
            frontier = nxt
    return out


def is_isomorphism(g: Graph, h: Graph, perm: Sequence[int]) -> bool:
    """True iff u -> perm[u] maps g onto h, preserving edges and non-edges."""
    if g.n != h.n:
        return False
    _check_bijection(perm, g.n)
    p = np.asarray(perm, dtype=np.int64)
    return bool(np.array_equal(h.adjacency[np.ix_(p, p)], g.adjacency))


def is_automorphism(g: Graph, perm: Sequence[int]) -> bool:
    """True iff perm preserves adjacency in both directions."""
    return is_isomorphism(g, g, perm)


def is_independent_set(g: Graph, vertices: Iterable[int]) -> bool:
    vertices = list(vertices)
    mask = 0
    for v in vertices:
        g._check_vertex(v)
        mask |= 1 << v
    return all(not (g.rows[v] & mask) for v in vertices)


def is_clique(g: Graph, vertices: Iterable[int]) -> bool:
    vertices = list(vertices)
    mask = 0
    for v in vertices:
        g._check_vertex(v)
        mask |= 1 << v
    return all((g.rows[v] | (1 << v)) & mask == mask for v in vertices)


# ----------------------------------------------------------------------
# Independence and clique numbers
# ----------------------------------------------------------------------

MODE_EXACT = "exact"
MODE_LOWER_WITNESS = "lower_witness"
MODE_UPPER_ONLY = "upper_only"


@dataclass(frozen=True)
class IndependenceResult:
    """Outcome of an independence-number computation.

    ``value`` is exact when ``exact`` is true; otherwise it is a lower bound
    (with witness) or, in upper_only mode, an upper bound.
    """

    value: int
    witness: Optional[Tuple[int, ...]]
    exact: bool
    upper_bound: int
    nodes: int
    seconds: float


class _BudgetExhausted(Exception):
    pass


def _color_sort(rows: Sequence[int], candidates: int) -> Tuple[List[int], List[int]]:
    """Greedy sequential coloring of the candidate set.

    Returns vertices in color order with the color number (1-based) of
    each, so the last color is an upper bound on any clique in candidates.
    """
    order: List[int] = []
    colors: List[int] = []
    uncolored = candidates
    color = 0
    while uncolored:
        color += 1
        available = uncolored
        while available:
            low = available & -available
            v = low.bit_length() - 1
            order.append(v)
            colors.append(color)
            uncolored &= ~low
            available &= ~low & ~rows[v]
    return order, colors


def _max_clique(rows: Sequence[int], budget: Optional[int]) -> Tuple[List[int], bool, int]:
    """Branch-and-bound maximum clique on bit rows already in search order.

    Returns (best clique, finished, nodes).
    """
    best: List[int] = []
    nodes = 0

    def expand(current: List[int], candidates: int) -> None:
        nonlocal best, nodes
        nodes += 1
        if budget is not None and nodes > budget:
            raise _BudgetExhausted
        order, colors = _color_sort(rows, candidates)
        for idx in range(len(order) - 1, -1, -1):
            if len(current) + colors[idx] <= len(best):
                return
            v = order[idx]
            current.append(v)
            nxt = candidates & rows[v]
            if nxt:
                expand(current, nxt)
            elif len(current) > len(best):
                best = list(current)
            current.pop()
            candidates &= ~(1 << v)

    n = len(rows)
    try:
        if n:
            expand([], (1 << n) - 1)
        return best, True, nodes
    except _BudgetExhausted:
        return best, False, nodes


def _clique_search_order(g: Graph) -> List[int]:
    """Vertices by degree descending, ties by index."""
    degrees = g.degrees()
    return sorted(range(g.n), key=lambda v: (-degrees[v], v))


def _relabelled_rows(g: Graph, order: List[int]) -> List[int]:
    pos = {v: i for i, v in enumerate(order)}
    rows = []
    for v in order:
        r = 0
        for w in _bits(g.rows[v]):
            r |= 1 << pos[w]
        rows.append(r)
    return rows


def clique_search(g: Graph, mode: str = MODE_EXACT, budget: Optional[int] = None) -> IndependenceResult:
    """Maximum clique of g by bit-parallel branch and bound."""
    start = time.time()
    order = _clique_search_order(g)
    rows = _relabelled_rows(g, order)
    _, colors = _color_sort(rows, (1 << g.n) - 1) if g.n else ([], [0])
    upper = max(colors) if colors else 0
    if mode == MODE_UPPER_ONLY:
        return IndependenceResult(upper, None, False, upper, 0, time.time() - start)
    if mode not in (MODE_EXACT, MODE_LOWER_WITNESS):
        raise ValueError(f"Unknown mode {mode!r}")
    limit = None if mode == MODE_EXACT else budget
    clique, finished, nodes = _max_clique(rows, limit)
    witness = tuple(sorted(order[i] for i in clique))
    elapsed = time.time() - start
    logger.debug(f"Clique search on {g.n} vertices: size {len(witness)}, {nodes} nodes, "
                 f"finished={finished}, {elapsed * 1000:.1f}ms")
    if not finished:
        logger.warning("Clique search budget of %s nodes exhausted; result is a lower bound", limit)
    return IndependenceResult(len(witness), witness, finished,
                              len(witness) if finished else upper, nodes, elapsed)


def independence_number(g: Graph, mode: str = MODE_EXACT, budget: Optional[int] = None) -> IndependenceResult:
    """Independence number as a maximum clique of the complement.

    Args:
        g: The graph.
        mode: ``exact`` searches to completion; ``lower_witness`` stops
            after ``budget`` nodes and returns the best independent set seen;
            ``upper_only`` returns a coloring bound without search.
        budget: Node limit for lower_witness mode.
    """
    return clique_search(g.complement(), mode, budget)


def clique_number(g: Graph, mode: str = MODE_EXACT, budget: Optional[int] = None) -> IndependenceResult:
    return clique_search(g, mode, budget)


def count_cliques(g: Graph, k: int) -> int:
    """Number of k-cliques of g."""
    if k < 0:
        raise ValueError("Clique size must be nonnegative")
    if k == 0:
        return 1
    total = 0

    def extend(size: int, candidates: int) -> None:
        nonlocal total
        if size == k:
            total += 1
            return
        need = k - size
        if _popcount(candidates) < need:
            return
        if need > 2:
            _, colors = _color_sort(g.rows, candidates)
            if colors[-1] < need:
                return
        while candidates:
            low = candidates & -candidates
            v = low.bit_length() - 1
            candidates ^= low
            # only later vertices, so each clique is counted once
            extend(size + 1, candidates & g.rows[v])

    extend(0, (1 << g.n) - 1)
    return total
