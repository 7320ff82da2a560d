#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Graph isomorphism testing with sound non-isomorphism certificates.

The test tries invariants in increasing cost order: degree sequence,
triangles per edge, colour refinement, independence number, and the
profile of refinements after individualizing single vertices.  If all of
them agree, an individualization-refinement search looks for an explicit
isomorphism within a node budget.  The result never claims more than was
shown: a budget that runs out yields ``inconclusive``.
"""

import logging
import time
from collections import Counter
from dataclasses import dataclass, field
from typing import Any, List, Optional, Tuple

import numpy as np
from cryptography.hazmat.primitives import hashes

from graph_core import (
    MODE_LOWER_WITNESS, Graph, independence_number, is_independent_set,
    is_isomorphism,
)

logger = logging.getLogger(__name__)

ISOMORPHIC = "isomorphic"
NON_ISOMORPHIC = "non_isomorphic"
INCONCLUSIVE = "inconclusive"

DEFAULT_SEARCH_BUDGET = 20000
DEFAULT_ALPHA_BUDGET = 2000000
PROBE_BUDGET = 200


@dataclass(frozen=True)
class NonIsoCertificate:
    """A named isomorphism invariant that differs between the two graphs."""

    kind: str
    value_left: Any
    value_right: Any
    witness_left: Optional[Tuple[int, ...]] = None
    witness_right: Optional[Tuple[int, ...]] = None

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "value_left": _jsonable(self.value_left),
            "value_right": _jsonable(self.value_right),
            "witness_left": list(self.witness_left) if self.witness_left else None,
            "witness_right": list(self.witness_right) if self.witness_right else None,
        }


@dataclass
class IsomorphismResult:
    status: str
    mapping: Optional[List[int]] = None
    certificate: Optional[NonIsoCertificate] = None
    nodes: int = 0
    seconds: float = 0.0
    notes: List[str] = field(default_factory=list)

    @property
    def is_isomorphic(self) -> bool:
        return self.status == ISOMORPHIC

    @property
    def is_non_isomorphic(self) -> bool:
        return self.status == NON_ISOMORPHIC


def _jsonable(value):
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (np.integer,)):
        return int(value)
    return value


def _digest(payload: bytes) -> str:
    h = hashes.Hash(hashes.SHA256())
    h.update(payload)
    return h.finalize().hex()


# ----------------------------------------------------------------------
# Invariants
# ----------------------------------------------------------------------

def degree_sequence(g: Graph) -> List[int]:
    return sorted(g.degrees(), reverse=True)


def triangles_per_edge(g: Graph) -> List[Tuple[int, int]]:
    """Histogram of common-neighbour counts over edges, as sorted pairs."""
    a = g.adjacency
    common = (a @ a)[a == 1]
    return sorted(Counter(common.tolist()).items())


def _onehot(colors: np.ndarray, k: int) -> np.ndarray:
    out = np.zeros((colors.shape[0], k), dtype=np.int64)
    out[np.arange(colors.shape[0]), colors] = 1
    return out


def _refine_step(adjs: List[np.ndarray], colors: List[np.ndarray]):
    """One joint refinement round; returns new colors and the signature table."""
    k = int(max(c.max() for c in colors)) + 1
    sigs = [np.column_stack([c, a @ _onehot(c, k)]) for a, c in zip(adjs, colors)]
    stacked = np.vstack(sigs)
    uniq, inv = np.unique(stacked, axis=0, return_inverse=True)
    inv = np.asarray(inv).reshape(-1)
    out = []
    start = 0
    for c in colors:
        out.append(inv[start:start + c.shape[0]].astype(np.int64))
        start += c.shape[0]
    return out, uniq


def refine(adjs: List[np.ndarray], colors: List[np.ndarray]) -> Optional[List[np.ndarray]]:
    """Joint colour refinement to a stable colouring.

    Colour numbers are ranks of signatures across all graphs, so equal
    numbers mean equal refinement history.  Returns None as soon as the
    colour histograms of the graphs differ.
    """
    colors = [c.copy() for c in colors]
    while True:
        before = len(np.unique(np.concatenate(colors)))
        colors, _ = _refine_step(adjs, colors)
        hists = [np.bincount(c, minlength=int(max(x.max() for x in colors)) + 1) for c in colors]
        if any(not np.array_equal(hists[0], h) for h in hists[1:]):
            return None
        if len(np.unique(np.concatenate(colors))) == before:
            return colors


def refinement_trace(g: Graph, individualized: Optional[int] = None) -> str:
    """Digest of the refinement history of a single graph.

    Signatures are ranked within the graph alone, so the trace is an
    isomorphism invariant and can be compared across graphs.
    """
    colors = np.zeros(g.n, dtype=np.int64)
    if individualized is not None:
        colors[individualized] = 1
    adj = g.adjacency
    h = hashes.Hash(hashes.SHA256())
    while True:
        before = len(np.unique(colors))
        (colors,), table = _refine_step([adj], [colors])
        counts = np.bincount(colors)
        h.update(table.astype(np.int64).tobytes())
        h.update(counts.astype(np.int64).tobytes())
        h.update(str(table.shape).encode())
        if len(np.unique(colors)) == before:
            return h.finalize().hex()


def individualized_profile(g: Graph) -> str:
    """Digest of the multiset of refinement traces over individualized vertices."""
    traces = sorted(refinement_trace(g, v) for v in range(g.n))
    return _digest("\n".join(traces).encode())


# ----------------------------------------------------------------------
# Search
# ----------------------------------------------------------------------

class _Budget(Exception):
    pass


class _Search:
    def __init__(self, g: Graph, h: Graph, budget: int):
        self.g, self.h = g, h
        self.adjs = [g.adjacency, h.adjacency]
        self.budget = budget
        self.nodes = 0

    def run(self) -> Optional[List[int]]:
        zero = np.zeros(self.g.n, dtype=np.int64)
        return self._descend(zero, zero.copy())

    def _descend(self, cg: np.ndarray, ch: np.ndarray) -> Optional[List[int]]:
        self.nodes += 1
        if self.nodes > self.budget:
            raise _Budget
        refined = refine(self.adjs, [cg, ch])
        if refined is None:
            return None
        cg, ch = refined
        counts = np.bincount(cg)
        if counts.max() <= 1:
            mapping = [0] * self.g.n
            where_h = {int(c): v for v, c in enumerate(ch)}
            for v, c in enumerate(cg):
                mapping[v] = where_h[int(c)]
            return mapping if is_isomorphism(self.g, self.h, mapping) else None
        target = int(min((c for c in range(len(counts)) if counts[c] > 1), key=lambda c: (counts[c], c)))
        v = int(np.flatnonzero(cg == target)[0])
        fresh = int(max(cg.max(), ch.max())) + 1
        for x in np.flatnonzero(ch == target):
            cg2, ch2 = cg.copy(), ch.copy()
            cg2[v] = fresh
            ch2[int(x)] = fresh
            found = self._descend(cg2, ch2)
            if found is not None:
                return found
        return None


def search_isomorphism(g: Graph, h: Graph, budget: int) -> Tuple[Optional[List[int]], bool, int]:
    """(mapping or None, finished, nodes) from individualization-refinement."""
    if g.n != h.n:
        return None, True, 0
    search = _Search(g, h, budget)
    try:
        mapping = search.run()
        return mapping, True, search.nodes
    except _Budget:
        return None, False, search.nodes


def _independence_certificate(g: Graph, h: Graph, budget: int) -> Optional[NonIsoCertificate]:
    left = independence_number(g, MODE_LOWER_WITNESS, budget)
    right = independence_number(h, MODE_LOWER_WITNESS, budget)
    separated = ((left.exact and right.value > left.value)
                 or (right.exact and left.value > right.value)
                 or (left.exact and right.exact and left.value != right.value))
    if separated:
        return NonIsoCertificate("independence_number", left.value, right.value,
                                 left.witness, right.witness)
    return None


def are_isomorphic(g: Graph, h: Graph, budget: int = DEFAULT_SEARCH_BUDGET,
                   alpha_budget: int = DEFAULT_ALPHA_BUDGET) -> IsomorphismResult:
    """Decide isomorphism of g and h within the given budgets.

    Args:
        g: Left graph.
        h: Right graph.
        budget: Node limit of the individualization-refinement search.
        alpha_budget: Node limit of each independence-number search.

    Returns:
        An IsomorphismResult with a verified mapping, a certificate, or
        status ``inconclusive``.
    """
    start = time.time()

    def done(status, **kwargs) -> IsomorphismResult:
        result = IsomorphismResult(status, seconds=time.time() - start, **kwargs)
        logger.info(f"Isomorphism test on {g.n} vertices: {status} in {result.seconds * 1000:.1f}ms")
        return result

    if g.n != h.n:
        return done(NON_ISOMORPHIC, certificate=NonIsoCertificate("vertex_count", g.n, h.n))
    if degree_sequence(g) != degree_sequence(h):
        return done(NON_ISOMORPHIC, certificate=NonIsoCertificate(
            "degree_sequence", degree_sequence(g), degree_sequence(h)))
    tg, th = triangles_per_edge(g), triangles_per_edge(h)
    if tg != th:
        return done(NON_ISOMORPHIC, certificate=NonIsoCertificate("triangles_per_edge", tg, th))
    rg, rh = refinement_trace(g), refinement_trace(h)
    if rg != rh:
        return done(NON_ISOMORPHIC, certificate=NonIsoCertificate("color_refinement", rg, rh))

    mapping, _, probe_nodes = search_isomorphism(g, h, min(PROBE_BUDGET, budget))
    if mapping is not None:
        return done(ISOMORPHIC, mapping=mapping, nodes=probe_nodes)

    cert = _independence_certificate(g, h, alpha_budget)
    if cert is not None:
        return done(NON_ISOMORPHIC, certificate=cert, nodes=probe_nodes)

    pg, ph = individualized_profile(g), individualized_profile(h)
    if pg != ph:
        return done(NON_ISOMORPHIC, certificate=NonIsoCertificate("individualized_refinement", pg, ph),
                    nodes=probe_nodes)

    mapping, finished, nodes = search_isomorphism(g, h, budget)
    if mapping is not None:
        return done(ISOMORPHIC, mapping=mapping, nodes=nodes)
    if finished:
        return done(NON_ISOMORPHIC, certificate=NonIsoCertificate("exhaustive_search", nodes, 0), nodes=nodes)
    logger.warning("Isomorphism search budget of %d nodes exhausted", budget)
    return done(INCONCLUSIVE, nodes=nodes, notes=[f"search budget {budget} exhausted"])


def verify_certificate(g: Graph, h: Graph, cert: NonIsoCertificate,
                       alpha_budget: Optional[int] = None) -> bool:
    """Independently re-check that the certified invariant differs."""
    kind = cert.kind
    if kind == "vertex_count":
        return g.n == cert.value_left and h.n == cert.value_right and g.n != h.n
    if kind == "degree_sequence":
        return (degree_sequence(g) == list(cert.value_left) and degree_sequence(h) == list(cert.value_right)
                and cert.value_left != cert.value_right)
    if kind == "triangles_per_edge":
        return (triangles_per_edge(g) == [tuple(p) for p in cert.value_left]
                and triangles_per_edge(h) == [tuple(p) for p in cert.value_right]
                and cert.value_left != cert.value_right)
    if kind == "color_refinement":
        return refinement_trace(g) == cert.value_left and refinement_trace(h) == cert.value_right \
            and cert.value_left != cert.value_right
    if kind == "individualized_refinement":
        return individualized_profile(g) == cert.value_left and individualized_profile(h) == cert.value_right \
            and cert.value_left != cert.value_right
    if kind == "independence_number":
        lo, hi = (g, h) if cert.value_left < cert.value_right else (h, g)
        small, large = sorted((cert.value_left, cert.value_right))
        witness = cert.witness_right if lo is g else cert.witness_left
        if witness is None or len(witness) != large or not is_independent_set(hi, witness):
            return False
        exact = independence_number(lo, MODE_LOWER_WITNESS, alpha_budget) if alpha_budget \
            else independence_number(lo)
        return exact.exact and exact.value == small
    if kind == "exhaustive_search":
        mapping, finished, _ = search_isomorphism(g, h, max(int(cert.value_left) * 2, 1))
        return finished and mapping is None
    raise ValueError(f"Unknown certificate kind {kind!r}")
