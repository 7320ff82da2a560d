#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Godsil-McKay switching, its matrix form Q and its interaction with the
magic unitary.
"""

import logging
import time
from dataclasses import dataclass, field
from functools import reduce
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from exact_arith import RationalMatrix, char_poly_int
from graph_core import (
    Graph, MODE_EXACT, MODE_LOWER_WITNESS, IndependenceResult, independence_number,
    is_independent_set, srg_parameters,
)
from magic import MagicUnitary, verify_intertwiner
from roots import OrbitPartition, WChoice

logger = logging.getLogger(__name__)


class NotAPartitionError(ValueError):
    """Cells and D do not partition the vertex set."""


class InvalidPartitionError(ValueError):
    """The partition violates the switching conditions."""


class PartitionAlignmentError(ValueError):
    """A switching cell is not a union of orbit cells."""

    def __init__(self, message: str, cell: str):
        self.cell = cell
        super().__init__(message)


@dataclass(frozen=True)
class GmPartition:
    """Cells C_1..C_k plus the switching set D."""

    cells: Tuple[Tuple[int, ...], ...]
    d: Tuple[int, ...]

    @classmethod
    def create(cls, cells: Sequence[Sequence[int]], d: Sequence[int]) -> "GmPartition":
        return cls(tuple(tuple(sorted(int(v) for v in c)) for c in cells),
                   tuple(sorted(int(v) for v in d)))

    def check_partitions(self, n: int) -> None:
        """Raises NotAPartitionError unless cells and D partition 0..n-1."""
        seen: Dict[int, str] = {}
        for name, block in self.named_blocks():
            if name != "D" and not block:
                raise NotAPartitionError(f"Cell {name} is empty")
            for v in block:
                if not 0 <= v < n:
                    raise NotAPartitionError(f"Vertex {v} in {name} is out of range for n={n}")
                if v in seen:
                    raise NotAPartitionError(f"Vertex {v} lies in both {seen[v]} and {name}")
                seen[v] = name
        if len(seen) != n:
            missing = sorted(set(range(n)) - set(seen))
            raise NotAPartitionError(f"Vertices {missing[:10]} are not covered")

    def named_blocks(self) -> List[Tuple[str, Tuple[int, ...]]]:
        out = [(f"C{i + 1}", c) for i, c in enumerate(self.cells)]
        out.append(("D", self.d))
        return out

    def to_dict(self) -> dict:
        return {"cells": [list(c) for c in self.cells], "d": list(self.d)}


def v15_partition(partition: OrbitPartition) -> GmPartition:
    """Cells V1..V14 with D = V15."""
    return GmPartition.create(partition.cells[:-1], partition.cells[-1])


# ----------------------------------------------------------------------
# Validation and switching
# ----------------------------------------------------------------------

@dataclass
class GmValidation:
    """Violations of both switching conditions; empty lists mean valid."""

    equitable_violations: List[dict] = field(default_factory=list)
    d_violations: List[dict] = field(default_factory=list)
    half_joins: Dict[int, List[int]] = field(default_factory=dict)
    _half_counts: List[int] = field(default_factory=list, repr=False)

    @property
    def valid(self) -> bool:
        return not self.equitable_violations and not self.d_violations

    def half_join_sizes(self) -> List[int]:
        """Distinct neighbor counts over all half-joined (v, cell) pairs."""
        return sorted(set(self._half_counts))

    def to_dict(self) -> dict:
        return {
            "valid": self.valid,
            "equitable_violations": self.equitable_violations,
            "d_violations": self.d_violations,
            "half_joined_pairs": sum(len(c) for c in self.half_joins.values()),
            "half_join_neighbor_counts": self.half_join_sizes(),
        }


def validate_gm_partition(g: Graph, p: GmPartition) -> GmValidation:
    """Check both switching conditions and list every violation.

    Raises:
        NotAPartitionError: p does not partition the vertices of g.
    """
    p.check_partitions(g.n)
    adj = g.adjacency
    report = GmValidation()
    cell_idx = [np.asarray(c, dtype=np.int64) for c in p.cells]
    for i, ci in enumerate(cell_idx):
        for j, cj in enumerate(cell_idx):
            counts = adj[np.ix_(ci, cj)].sum(axis=1)
            if len(set(counts.tolist())) > 1:
                report.equitable_violations.append({
                    "cell": i + 1, "into": j + 1, "counts": sorted(set(counts.tolist()))})
    for v in p.d:
        for j, cj in enumerate(cell_idx):
            count = int(adj[v, cj].sum())
            size = len(cj)
            if count in (0, size):
                continue
            if 2 * count == size:
                report.half_joins.setdefault(v, []).append(j)
                report._half_counts.append(count)
            else:
                report.d_violations.append({"vertex": v, "cell": j + 1, "neighbors": count, "size": size})
    logger.debug("GM validation: %d equitable violations, %d D violations",
                 len(report.equitable_violations), len(report.d_violations))
    return report


def gm_switch(g: Graph, p: GmPartition) -> Graph:
    """Complement the neighborhood of each D vertex inside its half-joined cells.

    Raises:
        InvalidPartitionError: the switching conditions fail.
    """
    report = validate_gm_partition(g, p)
    if not report.valid:
        first = (report.equitable_violations + report.d_violations)[0]
        raise InvalidPartitionError(f"Partition is not a switching partition: {first}")
    adj = np.array(g.adjacency)
    for v, cells in report.half_joins.items():
        for j in cells:
            c = np.asarray(p.cells[j], dtype=np.int64)
            adj[v, c] = 1 - adj[v, c]
            adj[c, v] = adj[v, c]
    return Graph.from_adjacency(adj)


# ----------------------------------------------------------------------
# The matrix Q
# ----------------------------------------------------------------------

def _lcm_sizes(p: GmPartition) -> int:
    return reduce(lambda a, b: a * b // gcd(a, b), (len(c) for c in p.cells), 1)


def _q_scaled(p: GmPartition, n: int, order: Optional[Sequence[int]] = None) -> Tuple[int, np.ndarray]:
    den = _lcm_sizes(p)
    if order is None:
        position = np.arange(n)
    else:
        position = np.empty(n, dtype=np.int64)
        position[np.asarray(order)] = np.arange(n)
    q = np.zeros((n, n), dtype=np.int64)
    for cell in p.cells:
        idx = position[np.asarray(cell, dtype=np.int64)]
        q[np.ix_(idx, idx)] = 2 * den // len(cell)
        q[idx, idx] -= den
    d_idx = position[np.asarray(p.d, dtype=np.int64)]
    q[d_idx, d_idx] = den
    return den, q


def build_Q(p: GmPartition, n: int) -> RationalMatrix:
    """Block diagonal (2/m)J_m - I_m on each cell, identity on D, native order."""
    p.check_partitions(n)
    den, q = _q_scaled(p, n)
    return RationalMatrix.from_numpy(q, den)


def display_order(p: GmPartition) -> List[int]:
    """Vertices sorted cell by cell with D last."""
    return [v for c in p.cells for v in c] + list(p.d)


def build_display_Q(p: GmPartition, n: int) -> RationalMatrix:
    """Q written in display_order (consecutive diagonal blocks)."""
    p.check_partitions(n)
    den, q = _q_scaled(p, n, display_order(p))
    return RationalMatrix.from_numpy(q, den)


def check_display_equivalence(p: GmPartition, n: int) -> bool:
    """P Q P^T equals the display matrix for the reordering permutation P."""
    native = build_Q(p, n).to_fractions()
    display = build_display_Q(p, n).to_fractions()
    order = display_order(p)
    return all(display[a][b] == native[order[a]][order[b]] for a in range(n) for b in range(n))


def check_Q_involution(q: RationalMatrix) -> Tuple[bool, bool]:
    """(Q^2 = I, Q^T = Q)."""
    return q.matmul(q) == RationalMatrix.identity(q.rows), q.transpose() == q


def _int_dtype(bound: int):
    return np.int64 if bound < 2 ** 62 else object


def verify_QAQ(g: Graph, p: GmPartition) -> bool:
    """Exact test that Q A_g Q equals the adjacency of gm_switch(g, p)."""
    switched = gm_switch(g, p)
    den, q = _q_scaled(p, g.n)
    dtype = _int_dtype(den * den * g.n * g.n)
    q = q.astype(dtype)
    lhs = q @ g.adjacency.astype(dtype) @ q
    return bool(np.array_equal(lhs, switched.adjacency.astype(dtype) * (den * den)))


def check_alignment(u: MagicUnitary, p: GmPartition) -> None:
    """Raises PartitionAlignmentError unless every block of p is a union of u's cells."""
    p.check_partitions(u.n)
    cell_of = {}
    for c, cell in enumerate(u.cells):
        for v in cell:
            cell_of[v] = c
    for name, block in p.named_blocks():
        members = set(block)
        for c in {cell_of[v] for v in block}:
            if not set(u.cells[c]) <= members:
                raise PartitionAlignmentError(
                    f"Switching block {name} splits orbit cell {u.labels[c]}", name)


def verify_uQ_commute(u: MagicUnitary, p: GmPartition) -> bool:
    """Exact comparison of uQ and Qu with Q acting as Q tensor I_8.

    Raises:
        PartitionAlignmentError: p is not aligned with the orbit cells.
    """
    check_alignment(u, p)
    start = time.time()
    den, q = _q_scaled(p, u.n)
    big = u.scaled_dense
    uq = np.einsum("acxy,cb->abxy", big, q)
    qu = np.einsum("ac,cbxy->abxy", q, big)
    ok = bool(np.array_equal(uq, qu))
    logger.debug(f"uQ = Qu check over {u.n * u.dim} rows in {(time.time() - start) * 1000:.1f}ms")
    return ok


def cospectral(g: Graph, h: Graph) -> bool:
    """Equality of characteristic polynomials over the integers."""
    if g.n != h.n:
        raise ValueError(f"Cospectrality needs equal sizes, got {g.n} and {h.n}")
    return char_poly_int(g.adjacency) == char_poly_int(h.adjacency)


# ----------------------------------------------------------------------
# Independence bounds after switching
# ----------------------------------------------------------------------

@dataclass
class SwitchedAlpha:
    upper_left: IndependenceResult
    witness_right: Tuple[int, ...]
    witness_right_valid: bool
    exact_right: Optional[IndependenceResult] = None

    @property
    def left_at_most_nine(self) -> bool:
        return self.upper_left.exact and self.upper_left.value <= 9

    @property
    def right_at_least_fourteen(self) -> bool:
        return self.witness_right_valid and len(self.witness_right) >= 14


def switched_alpha_bounds(sw1: Graph, sw2: Graph, partition: OrbitPartition, w: WChoice,
                          budget: Optional[int] = None, exact_right: bool = False) -> SwitchedAlpha:
    """alpha of the switched G_E8 exactly, and a 14-set witness on the switched G^w.

    The witness is the set of representative vertices of V1..V14.
    """
    upper = independence_number(sw1, MODE_EXACT, budget)
    witness = tuple(w.vertices(partition)[:-1])
    result = SwitchedAlpha(upper, witness, is_independent_set(sw2, witness))
    if exact_right:
        result.exact_right = independence_number(sw2, MODE_LOWER_WITNESS, budget)
    logger.info("Switched alpha: left=%s (exact=%s), right witness size %d",
                upper.value, upper.exact, len(witness))
    return result


def switched_subpair(cells: Sequence[int], sw1: Graph, sw2: Graph, u: MagicUnitary) -> bool:
    """Intertwiner check on the switched pair restricted to V_T plus the last cell.

    Args:
        cells: 1-based cell numbers drawn from the non-D cells.
    """
    chosen = sorted(set(int(c) - 1 for c in cells) | {len(u.cells) - 1})
    sub_u, vertices = u.restrict(chosen)
    return verify_intertwiner(sub_u, sw1.induced_subgraph(vertices), sw2.induced_subgraph(vertices))


# ----------------------------------------------------------------------
# Certificate
# ----------------------------------------------------------------------

@dataclass
class SwitchCertificate:
    partition: GmPartition
    condition_report: Dict[str, dict]
    q_matrix_check: bool
    q_symmetric_check: bool
    qaq_check: Dict[str, bool]
    uq_commute_check: bool
    intertwiner_check: bool
    srg_check: Dict[str, Optional[Tuple[int, int, int, int]]]
    srg_expected: Dict[str, Optional[Tuple[int, int, int, int]]] = field(default_factory=dict)
    cospectral_check: Optional[Dict[str, bool]] = None
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        checks = [self.q_matrix_check, self.q_symmetric_check, self.uq_commute_check,
                  self.intertwiner_check, *self.qaq_check.values()]
        checks += [r["valid"] for r in self.condition_report.values()]
        # switching keeps strong regularity and its parameters
        checks += [self.srg_check.get(k) == v for k, v in self.srg_expected.items()]
        if self.cospectral_check:
            checks += list(self.cospectral_check.values())
        return all(checks)

    def to_dict(self) -> dict:
        return {
            "partition": self.partition.to_dict(),
            "condition_report": self.condition_report,
            "q_squared_identity": self.q_matrix_check,
            "q_symmetric": self.q_symmetric_check,
            "qaq": self.qaq_check,
            "uq_commute": self.uq_commute_check,
            "switched_intertwiner": self.intertwiner_check,
            "switched_srg": {k: list(v) if v else None for k, v in self.srg_check.items()},
            "original_srg": {k: list(v) if v else None for k, v in self.srg_expected.items()},
            "cospectral": self.cospectral_check,
        }


def certify_switch(g1: Graph, g2: Graph, u: MagicUnitary, p: GmPartition,
                   check_cospectral: bool = True) -> Tuple[SwitchCertificate, Graph, Graph]:
    """Run every switching check on a quantum isomorphic pair.

    Returns:
        The certificate and the two switched graphs.
    """
    start = time.time()
    reports = {"g1": validate_gm_partition(g1, p), "g2": validate_gm_partition(g2, p)}
    sw1, sw2 = gm_switch(g1, p), gm_switch(g2, p)
    q = build_Q(p, g1.n)
    q_square, q_sym = check_Q_involution(q)
    cert = SwitchCertificate(
        partition=p,
        condition_report={k: r.to_dict() for k, r in reports.items()},
        q_matrix_check=q_square,
        q_symmetric_check=q_sym,
        qaq_check={"g1": verify_QAQ(g1, p), "g2": verify_QAQ(g2, p)},
        uq_commute_check=verify_uQ_commute(u, p),
        intertwiner_check=verify_intertwiner(u, sw1, sw2),
        srg_check={"g1": srg_parameters(sw1), "g2": srg_parameters(sw2)},
        srg_expected={"g1": srg_parameters(g1), "g2": srg_parameters(g2)},
    )
    if check_cospectral:
        cert.cospectral_check = {"g1": cospectral(g1, sw1), "g2": cospectral(g2, sw2)}
    cert.seconds = time.time() - start
    logger.info(f"Switching certificate assembled in {cert.seconds * 1000:.1f}ms, passed={cert.passed}")
    return cert, sw1, sw2
