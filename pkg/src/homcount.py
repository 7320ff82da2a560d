#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Homomorphism counts from small pattern graphs.

Counts are exact Python integers.  Patterns of elimination width at most 3
are counted by variable elimination with numpy einsum over the target's
adjacency matrix; wider patterns fall back to bitset backtracking.
"""

import itertools
import logging
import math
import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from graph_core import Graph, _bits, _popcount, count_cliques, independence_number, MODE_LOWER_WITNESS
from graph_io import graph6_encode
from workers import run_parallel

logger = logging.getLogger(__name__)

MAX_PATTERN_VERTICES = 7
MAX_PLANARITY_VERTICES = 8
DEFAULT_PATTERN_CAP = 5
MAX_ELIMINATION_WIDTH = 3
BRUTEFORCE_LIMIT = 50_000_000
INT64_HEADROOM = 2 ** 62


class PatternCapError(ValueError):
    """Pattern size exceeds the supported cap."""


# ----------------------------------------------------------------------
# Patterns
# ----------------------------------------------------------------------

def _is_connected(g: Graph) -> bool:
    if g.n == 0:
        return False
    seen = 1
    frontier = 1
    while frontier:
        reach = 0
        for v in _bits(frontier):
            reach |= g.rows[v]
        frontier = reach & ~seen
        seen |= reach
    return seen == (1 << g.n) - 1


def _upper_bits(g: Graph, perm: Sequence[int]) -> Tuple[int, ...]:
    return tuple(g.rows[perm[j]] >> perm[i] & 1 for j in range(1, g.n) for i in range(j))


def canonical_form(g: Graph) -> Graph:
    """Relabel g so its upper-triangle bit string is lexicographically minimal
    among labelings that list vertices by decreasing degree.
    """
    if g.n > MAX_PATTERN_VERTICES + 1:
        raise PatternCapError(f"Canonical form supports at most {MAX_PATTERN_VERTICES + 1} vertices")
    degrees = g.degrees()
    classes: Dict[int, List[int]] = {}
    for v in range(g.n):
        classes.setdefault(degrees[v], []).append(v)
    groups = [classes[d] for d in sorted(classes, reverse=True)]
    best, best_perm = None, None
    for choice in itertools.product(*(itertools.permutations(grp) for grp in groups)):
        perm = [v for part in choice for v in part]
        key = _upper_bits(g, perm)
        if best is None or key < best:
            best, best_perm = key, perm
    if best_perm is None:
        return g
    # best_perm[new] = old; relabel expects old -> new
    inverse = [0] * g.n
    for new, old in enumerate(best_perm):
        inverse[old] = new
    return g.relabel(inverse)


def canonical_id(g: Graph) -> str:
    return graph6_encode(canonical_form(g))


@dataclass(frozen=True)
class PatternGraph:
    graph: Graph
    pattern_id: str
    connected: bool
    planar: bool

    @property
    def n(self) -> int:
        return self.graph.n

    @classmethod
    def from_graph(cls, g: Graph) -> "PatternGraph":
        canon = canonical_form(g)
        return cls(canon, graph6_encode(canon), _is_connected(canon), is_planar_small(canon))


def cycle_pattern(k: int) -> PatternGraph:
    return PatternGraph.from_graph(Graph.from_edges(k, [(i, (i + 1) % k) for i in range(k)]))


def path_pattern(k: int) -> PatternGraph:
    """Path on k vertices."""
    return PatternGraph.from_graph(Graph.from_edges(k, [(i, i + 1) for i in range(k - 1)]))


def complete_pattern(k: int) -> PatternGraph:
    return PatternGraph.from_graph(Graph.complete(k))


def enumerate_connected_graphs(n_max: int) -> List[PatternGraph]:
    """All connected graphs on 1..n_max vertices up to isomorphism.

    Raises:
        PatternCapError: n_max outside 1..7.
    """
    if not 1 <= n_max <= MAX_PATTERN_VERTICES:
        raise PatternCapError(f"n_max must lie in 1..{MAX_PATTERN_VERTICES}, got {n_max}")
    start = time.time()
    seen = set()
    patterns = []
    for h in nx.graph_atlas_g():
        n = h.number_of_nodes()
        if n == 0 or n > n_max or not nx.is_connected(h):
            continue
        pattern = PatternGraph.from_graph(Graph.from_networkx(h))
        if pattern.pattern_id in seen:
            continue
        seen.add(pattern.pattern_id)
        patterns.append(pattern)
    patterns.sort(key=lambda p: (p.n, p.graph.number_of_edges, p.pattern_id))
    elapsed = (time.time() - start) * 1000
    logger.debug(f"Enumerated {len(patterns)} connected patterns up to {n_max} vertices in {elapsed:.1f}ms")
    return patterns


# ----------------------------------------------------------------------
# Planarity
# ----------------------------------------------------------------------

def _connected_mask(g: Graph, mask: int) -> bool:
    low = mask & -mask
    seen = low
    frontier = low
    while frontier:
        reach = 0
        for v in _bits(frontier):
            reach |= g.rows[v]
        frontier = reach & mask & ~seen
        seen |= frontier
    return seen == mask


def _set_partitions(items: List[int]):
    """Set partitions of items as lists of bitmasks."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [part[i] | 1 << first] + part[i + 1:]
        yield part + [1 << first]


def _touching(g: Graph, a: int, b: int) -> bool:
    return any(g.rows[v] & b for v in _bits(a))


def _has_kuratowski_minor(g: Graph) -> bool:
    vertices = list(range(g.n))
    # each vertex either joins a branch set or is deleted
    for deleted_count in range(g.n - 4):
        for deleted in itertools.combinations(vertices, deleted_count):
            kept = [v for v in vertices if v not in deleted]
            for blocks in _set_partitions(kept):
                if len(blocks) not in (5, 6):
                    continue
                if not all(_connected_mask(g, b) for b in blocks):
                    continue
                touch = {(i, j): _touching(g, blocks[i], blocks[j])
                         for i, j in itertools.combinations(range(len(blocks)), 2)}
                if len(blocks) == 5 and all(touch.values()):
                    return True
                if len(blocks) == 6:
                    for side in itertools.combinations(range(1, 6), 2):
                        left = (0,) + side
                        right = [k for k in range(6) if k not in left]
                        if all(touch[(min(a, b), max(a, b))] for a in left for b in right):
                            return True
    return False


def is_planar_small(g: Graph) -> bool:
    """Planarity by edge count and an exhaustive K5/K3,3 minor search.

    Raises:
        PatternCapError: more than eight vertices.
    """
    if g.n > MAX_PLANARITY_VERTICES:
        raise PatternCapError(f"Planarity test supports at most {MAX_PLANARITY_VERTICES} vertices")
    if g.n <= 4:
        return True
    if g.number_of_edges > 3 * g.n - 6:
        return False
    return not _has_kuratowski_minor(g)


# ----------------------------------------------------------------------
# Counting
# ----------------------------------------------------------------------

def _neighbor_sets(h: Graph) -> Dict[int, set]:
    return {v: set(h.neighbors(v)) for v in range(h.n)}


def elimination_order(h: Graph) -> Tuple[List[int], int]:
    """Greedy min-fill order; returns the order and its width."""
    adj = _neighbor_sets(h)
    remaining = set(range(h.n))
    order, width = [], 0

    def fill(v):
        nb = adj[v] & remaining
        return sum(1 for a, b in itertools.combinations(sorted(nb), 2) if b not in adj[a])

    while remaining:
        v = min(remaining, key=lambda x: (fill(x), len(adj[x] & remaining), x))
        nb = adj[v] & remaining - {v}
        width = max(width, len(nb))
        for a, b in itertools.combinations(nb, 2):
            adj[a].add(b)
            adj[b].add(a)
        remaining.discard(v)
        order.append(v)
    return order, width


def _letters(variables: Sequence[int]) -> str:
    return "".join(chr(ord("a") + v) for v in variables)


def _count_by_elimination(h: Graph, g: Graph, order: List[int]) -> int:
    # every table entry counts partial maps, so it is at most g.n ** h.n
    adj = g.adjacency if g.n ** h.n < INT64_HEADROOM else g.adjacency.astype(object)
    factors: List[Tuple[Tuple[int, ...], np.ndarray]] = [((u, v), adj) for u, v in h.edges()]
    scalar = 1
    for v in order:
        involved = [f for f in factors if v in f[0]]
        factors = [f for f in factors if v not in f[0]]
        if not involved:
            scalar *= g.n
            continue
        scope = tuple(sorted({x for vars_, _ in involved for x in vars_} - {v}))
        subscripts = ",".join(_letters(vars_) for vars_, _ in involved) + "->" + _letters(scope)
        table = np.einsum(subscripts, *(arr for _, arr in involved), optimize=False)
        if scope:
            factors.append((scope, table))
        else:
            scalar *= int(table)
    return scalar


def hom_count_backtrack(h: Graph, g: Graph) -> int:
    """Bitset backtracking count; any pattern size."""
    if h.n == 0:
        return 1
    order: List[int] = []
    for start in range(h.n):
        if start in order:
            continue
        order.append(start)
        k = len(order) - 1
        while k < len(order):
            for w in h.neighbors(order[k]):
                if w not in order:
                    order.append(w)
            k += 1
    earlier = [[order.index(w) for w in h.neighbors(v) if order.index(w) < i]
               for i, v in enumerate(order)]
    full = (1 << g.n) - 1
    image = [0] * h.n

    def extend(i: int) -> int:
        cand = full
        for j in earlier[i]:
            cand &= g.rows[image[j]]
        if i == h.n - 1:
            return _popcount(cand)
        total = 0
        for x in _bits(cand):
            image[i] = x
            total += extend(i + 1)
        return total

    return extend(0)


def hom_count(h, g: Graph) -> int:
    """Exact number of homomorphisms h -> g.

    Args:
        h: PatternGraph or Graph.
    """
    pattern = h.graph if isinstance(h, PatternGraph) else h
    if pattern.n > MAX_PATTERN_VERTICES + 2:
        raise PatternCapError(f"Patterns are capped at {MAX_PATTERN_VERTICES + 2} vertices")
    order, width = elimination_order(pattern)
    if width > MAX_ELIMINATION_WIDTH:
        return hom_count_backtrack(pattern, g)
    return _count_by_elimination(pattern, g, order)


def _int_matrix_power(a: np.ndarray, k: int, bound: int) -> np.ndarray:
    dtype = np.int64 if bound < 2 ** 62 else object
    return np.linalg.matrix_power(a.astype(dtype), k)


def hom_cycle_trace(g: Graph, k: int) -> int:
    """hom(C_k, g) = trace(A^k), k >= 3."""
    if k < 3:
        raise ValueError("Cycles need at least three vertices")
    bound = g.n * max(g.degrees() or [0]) ** k
    return int(np.trace(_int_matrix_power(g.adjacency, k, bound)))


def hom_path_sum(g: Graph, k: int) -> int:
    """hom(P_k, g) = sum of the entries of A^{k-1}, P_k with k vertices."""
    if k < 1:
        raise ValueError("Paths need at least one vertex")
    if k == 1:
        return g.n
    bound = g.n * g.n * max(g.degrees() or [0]) ** (k - 1)
    return int(_int_matrix_power(g.adjacency, k - 1, bound).sum())


def hom_count_bruteforce(h, g: Graph) -> int:
    """Enumerate all n^k maps at once; only for tiny instances."""
    pattern = h.graph if isinstance(h, PatternGraph) else h
    k = pattern.n
    if g.n ** k > BRUTEFORCE_LIMIT:
        raise PatternCapError(f"{g.n}^{k} maps exceed the brute-force limit")
    if k == 0:
        return 1
    total = np.ones((g.n,) * k, dtype=np.int64)
    for u, v in pattern.edges():
        shape = [1] * k
        shape[u] = shape[v] = g.n
        total = total * g.adjacency.reshape(shape)
    return int(total.sum())


# ----------------------------------------------------------------------
# Profiles
# ----------------------------------------------------------------------

@dataclass
class HomRow:
    pattern_id: str
    n: int
    planar: bool
    count_left: int
    count_right: int

    @property
    def equal(self) -> bool:
        return self.count_left == self.count_right


@dataclass
class HomProfileReport:
    n_max: int
    planar_only: bool
    rows: List[HomRow] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def differences(self) -> List[HomRow]:
        return [r for r in self.rows if not r.equal]

    @property
    def planar_differences(self) -> List[HomRow]:
        return [r for r in self.differences if r.planar]

    @property
    def all_equal(self) -> bool:
        return not self.differences

    def profile(self, side: str = "left") -> List[Tuple[str, int]]:
        attr = "count_left" if side == "left" else "count_right"
        return [(r.pattern_id, getattr(r, attr)) for r in self.rows]

    def to_text(self) -> str:
        lines = [f"{r.pattern_id} {r.count_left} {r.count_right} {'true' if r.equal else 'false'}"
                 for r in self.rows]
        return "\n".join(lines) + "\n"


def hom_profile_compare(g1: Graph, g2: Graph, n_max: int = DEFAULT_PATTERN_CAP,
                        planar_only: bool = True, threads: int = 1) -> HomProfileReport:
    """Count homomorphisms from every connected pattern up to n_max into both graphs."""
    start = time.time()
    patterns = [p for p in enumerate_connected_graphs(n_max) if p.planar or not planar_only]

    def _row(p: PatternGraph) -> HomRow:
        return HomRow(p.pattern_id, p.n, p.planar, hom_count(p, g1), hom_count(p, g2))

    report = HomProfileReport(n_max, planar_only, run_parallel(_row, patterns, threads))
    report.seconds = time.time() - start
    logger.info(f"Hom profile over {len(patterns)} patterns: {len(report.differences)} differences "
                f"in {report.seconds * 1000:.1f}ms")
    return report


@dataclass
class DistinguisherResult:
    k: int
    count_left: Optional[int]
    count_right: Optional[int]
    witness_right: Optional[Tuple[int, ...]] = None

    @property
    def distinguishes(self) -> bool:
        if self.count_left is None:
            return False
        if self.count_right is None and not self.witness_right:
            return False
        right_positive = (self.count_right or 0) > 0 or bool(self.witness_right)
        return (self.count_left == 0) == right_positive


def complement_clique_distinguisher(g1: Graph, g2: Graph, k: int = 9,
                                    exact_right: bool = False,
                                    budget: Optional[int] = None) -> DistinguisherResult:
    """hom(K_k, complement(g)) = k! times the number of independent k-sets of g.

    The left side is counted exactly.  The right side is counted exactly when
    ``exact_right`` is set, otherwise an independent k-set witness is found.
    """
    fact = math.factorial(k)
    left = fact * count_cliques(g1.complement(), k)
    result = DistinguisherResult(k, left, None)
    if exact_right:
        result.count_right = fact * count_cliques(g2.complement(), k)
    else:
        alpha = independence_number(g2, MODE_LOWER_WITNESS, budget)
        if alpha.value >= k:
            result.witness_right = alpha.witness[:k]
    logger.info("K%d distinguisher on complements: left=%s right=%s", k, result.count_left,
                result.count_right if result.count_right is not None else f"witness {result.witness_right}")
    return result


def nonplanar_sweep(g1: Graph, g2: Graph, n_max: int = 6, threads: int = 1) -> HomProfileReport:
    """Compare hom counts from non-planar connected patterns only."""
    start = time.time()
    patterns = [p for p in enumerate_connected_graphs(n_max) if not p.planar]

    def _row(p: PatternGraph) -> HomRow:
        return HomRow(p.pattern_id, p.n, p.planar, hom_count(p, g1), hom_count(p, g2))

    report = HomProfileReport(n_max, False, run_parallel(_row, patterns, threads))
    report.seconds = time.time() - start
    return report
