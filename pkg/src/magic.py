#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
The block quantum permutation matrix u between G_E8 and G^w.

For cell V_i with representative w_i and lines y, z in V_i the entry
u^{(i)}_{yz} is the rank-1 projection onto M_yz w_i, where M_yz is the
lexicographically least element of L carrying y to z.  Entries are kept as
exact RationalMatrix values; the verification sweeps run on integer numpy
arrays scaled by the common denominator.
"""

import itertools
import logging
import time
from dataclasses import dataclass, field
from functools import cached_property, reduce
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from exact_arith import (
    PROJECTION_DENOMINATOR_BOUND, RationalMatrix, check_denominator_bound,
    mat_is_projection,
)
from graph_core import (
    Graph, MODE_EXACT, distance_matrix, independence_number, is_independent_set,
)
from lines import DIMENSION, Line
from pauli import (
    PauliWord, act_on_line, action_table, group_mul, transporters, word_matrix,
)
from roots import (
    OrbitPartition, WChoice, build_Gw, build_orthogonality_graph, cell_stabilizer,
    default_partition, default_w_choice,
)
from workers import run_parallel

logger = logging.getLogger(__name__)

MIN_SUBPAIR_CELLS = 9


class DifferentOrbitsError(ValueError):
    """No element of L carries one line to the other."""


class MagicUnitaryError(ValueError):
    """A magic-unitary invariant failed; names the block and entry."""

    def __init__(self, message: str, cell: Optional[int] = None,
                 row: Optional[int] = None, col: Optional[int] = None):
        self.cell, self.row, self.col = cell, row, col
        super().__init__(message)


class SubpairSizeError(ValueError):
    """Induced subpairs need at least nine cells."""


@dataclass(frozen=True)
class Transporter:
    word: PauliWord
    source: Line
    target: Line


def find_transporter(y: Line, z: Line) -> Transporter:
    """Least element of L (I < X < Y < Z) carrying y to z.

    Raises:
        DifferentOrbitsError: y and z lie in different orbits.
    """
    candidates = transporters(y, z)
    if not candidates:
        raise DifferentOrbitsError(f"No element of L maps {y} to {z}")
    return Transporter(candidates[0], y, z)


# ----------------------------------------------------------------------
# Magic unitary
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class MagicUnitary:
    """Block-diagonal magic unitary over the cells of a vertex partition.

    ``blocks[c][a][b]`` is the entry for rows cells[c][a] and column
    cells[c][b]; entries between different cells are zero.
    """

    n: int
    cells: Tuple[Tuple[int, ...], ...]
    labels: Tuple[str, ...]
    blocks: Tuple[Tuple[Tuple[RationalMatrix, ...], ...], ...]
    w: Optional[Tuple[Line, ...]] = None
    transporter_words: Optional[Tuple[Tuple[Tuple[str, ...], ...], ...]] = field(default=None, compare=False)
    dim: int = DIMENSION

    def entry(self, cell: int, a: int, b: int) -> RationalMatrix:
        return self.blocks[cell][a][b]

    def entries(self):
        """Yield (cell, a, b, matrix) in index order."""
        for c, block in enumerate(self.blocks):
            for a, row in enumerate(block):
                for b, m in enumerate(row):
                    yield c, a, b, m

    @classmethod
    def identity(cls, cells: Sequence[Sequence[int]], n: int, dim: int = DIMENSION,
                 labels: Optional[Sequence[str]] = None) -> "MagicUnitary":
        """The classical magic unitary of the identity permutation."""
        one = RationalMatrix.identity(dim)
        zero = RationalMatrix.zeros(dim, dim)
        blocks = tuple(
            tuple(tuple(one if a == b else zero for b in range(len(cell))) for a in range(len(cell)))
            for cell in cells
        )
        labels = tuple(labels) if labels else tuple(f"C{c + 1}" for c in range(len(cells)))
        return cls(n, tuple(tuple(c) for c in cells), labels, blocks, dim=dim)

    def with_entry(self, cell: int, a: int, b: int, value: RationalMatrix) -> "MagicUnitary":
        blocks = [list(list(r) for r in blk) for blk in self.blocks]
        blocks[cell][a][b] = value
        return self._replace_blocks(blocks)

    def swap_entries(self, cell_a: int, pos_a: Tuple[int, int],
                     cell_b: int, pos_b: Tuple[int, int]) -> "MagicUnitary":
        blocks = [list(list(r) for r in blk) for blk in self.blocks]
        x = blocks[cell_a][pos_a[0]][pos_a[1]]
        blocks[cell_a][pos_a[0]][pos_a[1]] = blocks[cell_b][pos_b[0]][pos_b[1]]
        blocks[cell_b][pos_b[0]][pos_b[1]] = x
        return self._replace_blocks(blocks)

    def _replace_blocks(self, blocks) -> "MagicUnitary":
        frozen = tuple(tuple(tuple(r) for r in blk) for blk in blocks)
        return MagicUnitary(self.n, self.cells, self.labels, frozen, self.w, self.transporter_words, self.dim)

    def restrict(self, cell_indices: Sequence[int]) -> Tuple["MagicUnitary", List[int]]:
        """Sub-unitary on the chosen cells, reindexed to 0..m-1.

        Returns the new unitary and the old vertex index of each new vertex.
        """
        cell_indices = sorted(cell_indices)
        vertices = sorted(v for c in cell_indices for v in self.cells[c])
        pos = {v: k for k, v in enumerate(vertices)}
        cells = tuple(tuple(pos[v] for v in self.cells[c]) for c in cell_indices)
        blocks = tuple(self.blocks[c] for c in cell_indices)
        w = tuple(self.w[c] for c in cell_indices) if self.w else None
        words = tuple(self.transporter_words[c] for c in cell_indices) if self.transporter_words else None
        labels = tuple(self.labels[c] for c in cell_indices)
        return MagicUnitary(len(vertices), cells, labels, blocks, w, words, self.dim), vertices

    @cached_property
    def common_denominator(self) -> int:
        dens = (m.denominator() for _, _, _, m in self.entries())
        return reduce(lambda a, b: a * b // gcd(a, b), dens, 1)

    @cached_property
    def scaled_dense(self) -> np.ndarray:
        """(n, n, dim, dim) int64 array equal to common_denominator * u."""
        den = self.common_denominator
        out = np.zeros((self.n, self.n, self.dim, self.dim), dtype=np.int64)
        for c, a, b, m in self.entries():
            _, arr = m.scaled_int(den)
            out[self.cells[c][a], self.cells[c][b]] = arr
        out.setflags(write=False)
        return out

    def scaled_block(self, c: int) -> np.ndarray:
        """(m, m, dim, dim) scaled entries of one block in cell order."""
        cell = np.asarray(self.cells[c], dtype=np.int64)
        return self.scaled_dense[np.ix_(cell, cell)]


def build_magic_unitary(partition: Optional[OrbitPartition] = None,
                        w: Optional[WChoice] = None,
                        validate: bool = True) -> MagicUnitary:
    """Construct u from the orbit partition and representatives.

    Raises:
        MagicUnitaryError: a constructed entry violates the magic axioms.
    """
    start = time.time()
    partition = partition or default_partition()
    w = w or default_w_choice()
    w.validate(partition)
    projections: Dict[Line, RationalMatrix] = {}
    blocks = []
    words = []
    for c, cell in enumerate(partition.cells):
        block_rows, word_rows = [], []
        for y in cell:
            row, wrow = [], []
            for z in cell:
                t = find_transporter(partition.lines[y], partition.lines[z])
                target = act_on_line(t.word, w.reps[c])
                if target not in projections:
                    projections[target] = target.projection()
                row.append(projections[target])
                wrow.append(str(t.word))
            block_rows.append(tuple(row))
            word_rows.append(tuple(wrow))
        blocks.append(tuple(block_rows))
        words.append(tuple(word_rows))
    u = MagicUnitary(partition.n, partition.cells, partition.labels, tuple(blocks),
                     tuple(w.reps), tuple(words))
    if validate:
        report = verify_magic_axioms(u)
        if not report.passed:
            first = report.failures[0]
            raise MagicUnitaryError(f"Magic unitary invariant failed: {first}",
                                    *first.get("where", (None, None, None)))
    elapsed = (time.time() - start) * 1000
    logger.debug(f"Built magic unitary with {len(blocks)} blocks in {elapsed:.1f}ms")
    return u


# ----------------------------------------------------------------------
# Reports
# ----------------------------------------------------------------------

@dataclass
class VerificationReport:
    """Named boolean checks plus a list of concrete failures."""

    checks: List[Tuple[str, bool]] = field(default_factory=list)
    failures: List[dict] = field(default_factory=list)
    seconds: float = 0.0
    stats: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(ok for _, ok in self.checks)

    def failed_checks(self) -> List[str]:
        return [name for name, ok in self.checks if not ok]

    def add(self, name: str, ok: bool) -> None:
        self.checks.append((name, bool(ok)))


def verify_magic_axioms(u: MagicUnitary) -> VerificationReport:
    """Projection property of every entry and all block row/column sums."""
    start = time.time()
    report = VerificationReport()
    ident = RationalMatrix.identity(u.dim)
    for c, block in enumerate(u.blocks):
        label = u.labels[c]
        proj_ok = True
        for a, row in enumerate(block):
            for b, m in enumerate(row):
                if not mat_is_projection(m):
                    proj_ok = False
                    report.failures.append({"check": f"projection {label}", "where": (c, a, b),
                                            "detail": f"entry ({a}, {b}) of {label} is not a projection"})
        report.add(f"projection entries of {label}", proj_ok)

        row_ok = col_ok = True
        size = len(block)
        for a in range(size):
            total = reduce(RationalMatrix.add, (block[a][b] for b in range(size)))
            if total != ident:
                row_ok = False
                report.failures.append({"check": f"row sums {label}", "where": (c, a, None),
                                        "detail": f"row {a} of {label} does not sum to the identity"})
        for b in range(size):
            total = reduce(RationalMatrix.add, (block[a][b] for a in range(size)))
            if total != ident:
                col_ok = False
                report.failures.append({"check": f"column sums {label}", "where": (c, None, b),
                                        "detail": f"column {b} of {label} does not sum to the identity"})
        report.add(f"row sums of {label}", row_ok)
        report.add(f"column sums of {label}", col_ok)
    report.seconds = time.time() - start
    report.stats["entries"] = sum(len(b) ** 2 for b in u.blocks)
    return report


def verify_intertwiner(u: MagicUnitary, g1: Graph, g2: Graph) -> bool:
    """Exact test of A_{g1} u = u A_{g2}.

    Raises:
        ValueError: graph sizes differ from the unitary.
    """
    if g1.n != u.n or g2.n != u.n:
        raise ValueError(f"Graph sizes {g1.n}, {g2.n} do not match the {u.n}-vertex magic unitary")
    big = u.scaled_dense
    left = np.tensordot(g1.adjacency, big, axes=(1, 0))
    right = np.tensordot(big, g2.adjacency, axes=(1, 0)).transpose(0, 3, 1, 2)
    return bool(np.array_equal(left, right))


def _cell_pair_sweep(args):
    u, i, j, a1, a2, d1, orth, mode = args
    ci = np.asarray(u.cells[i])
    cj = np.asarray(u.cells[j])
    adj1 = a1[np.ix_(ci, cj)]
    adj2 = a2[np.ix_(ci, cj)]
    # disagree[k, s, l, t] = A1[k, l] != A2[s, t]
    disagree = adj1[:, None, :, None] != adj2[None, :, None, :]
    dist = d1[np.ix_(ci, cj)]
    same_distance = dist[:, None, :, None] == d1[np.ix_(ci, cj)][None, :, None, :]
    predicted = same_distance if orth else ~same_distance

    result = {"pair": (i, j), "quadruples": int(disagree.size)}
    if mode == "blockwise":
        zero = predicted
    else:
        bi, bj = u.scaled_block(i), u.scaled_block(j)
        prod = np.einsum("ksab,ltbc->ksltac", bi, bj)
        zero = ~prod.any(axis=(4, 5))
        annihilated = zero.sum(axis=3)
        result["annihilation_counts"] = sorted(set(annihilated.reshape(-1).tolist()))
    result["relation_failures"] = int(np.count_nonzero(zero != disagree))
    result["dichotomy_failures"] = int(np.count_nonzero(zero != predicted))
    result["zero_products"] = int(zero.sum())
    if result["relation_failures"]:
        k, s, l, t = map(int, np.argwhere(zero != disagree)[0])
        result["first_failure"] = (ci[k].item(), ci[s].item(), cj[l].item(), cj[t].item())
    return result


def verify_product_relations(u: MagicUnitary, g1: Graph, g2: Graph,
                             mode: str = "full", threads: int = 1) -> VerificationReport:
    """Zero pattern of cross-block products against the two adjacencies.

    For k, s in cell i and l, t in cell j (i != j) the product
    u_ks u_lt must vanish exactly when g1(k, l) and g2(s, t) disagree, and
    the zeros must sit at equal distances d(k, l) = d(s, t) when the cell
    representatives are orthogonal and at unequal distances otherwise.

    Args:
        mode: ``full`` multiplies every pair of entries exactly;
            ``blockwise`` uses only the representatives' orthogonality.
        threads: Worker threads over cell pairs.
    """
    if mode not in ("full", "blockwise"):
        raise ValueError(f"Unknown mode {mode!r}")
    if u.w is None:
        raise ValueError("Product relations need the cell representatives of u")
    start = time.time()
    a1, a2 = g1.adjacency, g2.adjacency
    d1 = distance_matrix(g1)
    items = []
    for i, j in itertools.permutations(range(len(u.cells)), 2):
        orth = u.w[i].is_orthogonal(u.w[j])
        items.append((u, i, j, a1, a2, d1, orth, mode))
    results = run_parallel(_cell_pair_sweep, items, threads)

    report = VerificationReport()
    relation_fail = [r for r in results if r["relation_failures"]]
    dichotomy_fail = [r for r in results if r["dichotomy_failures"]]
    report.add("products vanish exactly where adjacency disagrees", not relation_fail)
    report.add("zero pattern follows the orthogonality dichotomy", not dichotomy_fail)
    if mode == "full":
        per_projection = {c for r in results for c in r["annihilation_counts"]}
        report.add("each projection annihilates exactly four of another cell", per_projection == {4})
        report.stats["annihilation_counts"] = sorted(per_projection)
    for r in relation_fail:
        report.failures.append({"check": "product relations", "where": r["pair"],
                                "detail": f"{r['relation_failures']} quadruples wrong, first {r.get('first_failure')}"})
    for r in dichotomy_fail:
        report.failures.append({"check": "dichotomy", "where": r["pair"],
                                "detail": f"{r['dichotomy_failures']} quadruples off the predicted pattern"})
    report.stats["quadruples"] = sum(r["quadruples"] for r in results)
    report.stats["zero_products"] = sum(r["zero_products"] for r in results)
    report.stats["mode"] = mode
    report.seconds = time.time() - start
    logger.info(f"Product relation sweep ({mode}) over {report.stats['quadruples']} quadruples "
                f"in {report.seconds * 1000:.1f}ms")
    return report


# ----------------------------------------------------------------------
# Further exhaustive properties
# ----------------------------------------------------------------------

def check_conjugation_consistency(u: MagicUnitary, partition: OrbitPartition) -> List[Tuple[int, int, int]]:
    """Entries where M P_w M^T differs from the stored P_{M w}."""
    bad = []
    for c, a, b, m in u.entries():
        word = PauliWord.parse(u.transporter_words[c][a][b])
        mw = word_matrix(word)
        conj = mw.matmul(u.w[c].projection()).matmul(mw.transpose())
        direct = act_on_line(word, u.w[c]).projection()
        if conj != direct or direct != m:
            bad.append((c, a, b))
    return bad


def check_transporter_cosets(partition: OrbitPartition, w: WChoice) -> List[Tuple[int, int, int]]:
    """(cell, a, b) where the transporters y -> z are not a coset of Stab(w_i) of size 8."""
    bad = []
    for c, cell in enumerate(partition.cells):
        stab = cell_stabilizer(partition, c)
        for a, y in enumerate(cell):
            for b, z in enumerate(cell):
                found = transporters(partition.lines[y], partition.lines[z])
                coset = {group_mul(found[0], s) for s in stab}
                if len(found) != 8 or set(found) != coset:
                    bad.append((c, a, b))
    return bad


def check_transporter_choice_invariance(partition: OrbitPartition, w: WChoice) -> List[Tuple[int, int, int]]:
    """Entries that change when another valid transporter is used."""
    bad = []
    for c, cell in enumerate(partition.cells):
        for a, y in enumerate(cell):
            for b, z in enumerate(cell):
                images = {act_on_line(t, w.reps[c]) for t in transporters(partition.lines[y], partition.lines[z])}
                if len(images) != 1:
                    bad.append((c, a, b))
    return bad


def check_edge_permutation_property(partition: OrbitPartition, g: Graph) -> int:
    """Number of (k, s, l, t) with d(k, l) = d(s, t) that no element of L realizes.

    k, s range over one cell and l, t over another.
    """
    table = action_table(partition.lines)
    d = distance_matrix(g)
    missing = 0
    for i, j in itertools.permutations(range(len(partition.cells)), 2):
        for k in partition.cells[i]:
            for s in partition.cells[i]:
                movers = np.flatnonzero(table[:, k] == s)
                for l in partition.cells[j]:
                    reachable = set(int(x) for x in table[movers, l])
                    for t in partition.cells[j]:
                        if d[k, l] == d[s, t] and t not in reachable:
                            missing += 1
    return missing


def check_denominators(u: MagicUnitary) -> bool:
    """Every pairwise product of entries has denominator dividing 64."""
    return check_denominator_bound((m for _, _, _, m in u.entries())) and \
        PROJECTION_DENOMINATOR_BOUND % (u.common_denominator ** 2) == 0


# ----------------------------------------------------------------------
# Induced subpairs
# ----------------------------------------------------------------------

@dataclass
class SubpairReport:
    cells: Tuple[int, ...]
    intertwiner: bool
    alpha_left: int
    alpha_left_exact: bool
    witness_right: Tuple[int, ...]
    witness_right_valid: bool

    @property
    def separated(self) -> bool:
        return (self.alpha_left_exact and self.alpha_left <= 8
                and self.witness_right_valid and len(self.witness_right) >= len(self.cells))


def induced_subpair(cells: Sequence[int], partition: Optional[OrbitPartition] = None,
                    w: Optional[WChoice] = None, u: Optional[MagicUnitary] = None):
    """Induced subgraphs of G_E8 and G^w on the union of the chosen cells.

    Args:
        cells: 1-based cell numbers, at least nine of them.

    Returns:
        (G_E8 side, G^w side, restricted magic unitary, old vertex indices).

    Raises:
        SubpairSizeError: fewer than nine cells were chosen.
    """
    chosen = sorted(set(int(c) for c in cells))
    if len(chosen) < MIN_SUBPAIR_CELLS:
        raise SubpairSizeError(f"Induced subpairs need at least {MIN_SUBPAIR_CELLS} cells, got {len(chosen)}")
    if chosen[0] < 1 or chosen[-1] > 15:
        raise ValueError(f"Cell numbers must lie in 1..15, got {chosen}")
    partition = partition or default_partition()
    w = w or default_w_choice()
    u = u or build_magic_unitary(partition, w)
    g1 = build_orthogonality_graph(partition.lines)
    g2 = build_Gw(partition.lines, partition, w)
    sub_u, vertices = u.restrict([c - 1 for c in chosen])
    return g1.induced_subgraph(vertices), g2.induced_subgraph(vertices), sub_u, vertices


def induced_subpair_report(cells: Sequence[int], partition: Optional[OrbitPartition] = None,
                           w: Optional[WChoice] = None, u: Optional[MagicUnitary] = None) -> SubpairReport:
    """Intertwiner and independence separation on an induced subpair."""
    partition = partition or default_partition()
    w = w or default_w_choice()
    h1, h2, sub_u, vertices = induced_subpair(cells, partition, w, u)
    pos = {v: k for k, v in enumerate(vertices)}
    chosen = sorted(set(int(c) for c in cells))
    witness = tuple(pos[partition.index_of(w.reps[c - 1])] for c in chosen)
    alpha = independence_number(h1, MODE_EXACT)
    return SubpairReport(
        cells=tuple(chosen),
        intertwiner=verify_intertwiner(sub_u, h1, h2),
        alpha_left=alpha.value,
        alpha_left_exact=alpha.exact,
        witness_right=witness,
        witness_right_valid=is_independent_set(h2, witness),
    )
