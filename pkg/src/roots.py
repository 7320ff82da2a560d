#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
E8 root lines, the orthogonality graph G_E8, its orbit partition under L,
the edge-flipped graph G^w and the clique graph Gamma_1.
"""

import itertools
import logging
from collections import Counter
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from exact_arith import RationalMatrix
from graph_core import Graph, is_automorphism, is_isomorphism
from lines import DIMENSION, Line, parse_line
from pauli import (
    IDENTITY, PauliWord, act_on_line, action_table, bits_to_word, enumerate_L,
    group_mul, transporters, transvection, word_matrix,
    word_to_bits,
)

logger = logging.getLogger(__name__)

CELL_COUNT = 15
CELL_SIZE = 8


class OrbitStructureError(RuntimeError):
    """The L-orbits on the root lines are not 15 cells of size 8."""


class VerificationError(RuntimeError):
    """A constructed map failed its exhaustive check."""


# Reference orbit listing, cell by cell.  x{S} is negated on S.
REFERENCE_ORBIT_LISTING: Tuple[Tuple[str, ...], ...] = (
    ("e1+e2", "e1-e2", "e3+e4", "e3-e4", "e5+e6", "e5-e6", "e7+e8", "e7-e8"),
    ("e1+e3", "e1-e3", "e2+e4", "e2-e4", "e5+e7", "e5-e7", "e6+e8", "e6-e8"),
    ("e1+e4", "e1-e4", "e2+e3", "e2-e3", "e5+e8", "e5-e8", "e6+e7", "e6-e7"),
    ("e1+e5", "e1-e5", "e2+e6", "e2-e6", "e3+e7", "e3-e7", "e4+e8", "e4-e8"),
    ("e1+e6", "e1-e6", "e2+e5", "e2-e5", "e3+e8", "e3-e8", "e4+e7", "e4-e7"),
    ("e1+e7", "e1-e7", "e2+e8", "e2-e8", "e3+e5", "e3-e5", "e4+e6", "e4-e6"),
    ("e1+e8", "e1-e8", "e2+e7", "e2-e7", "e3+e6", "e3-e6", "e4+e5", "e4-e5"),
    ("x{1,2}", "x{3,4}", "x{5,6}", "x{7,8}", "x{1,4,6,8}", "x{2,3,6,8}", "x{2,4,5,8}", "x{2,4,6,7}"),
    ("x{1,3}", "x{2,4}", "x{5,7}", "x{6,8}", "x{1,4,7,8}", "x{1,4,5,6}", "x{1,2,6,7}", "x{1,2,5,8}"),
    ("x{1,4}", "x{2,3}", "x{5,8}", "x{6,7}", "x{1,3,7,8}", "x{1,3,5,6}", "x{1,2,5,7}", "x{1,2,6,8}"),
    ("x{1,5}", "x{2,6}", "x{3,7}", "x{4,8}", "x{1,6,7,8}", "x{2,5,7,8}", "x{4,5,6,7}", "x{1,2,4,7}"),
    ("x{1,6}", "x{2,5}", "x{3,8}", "x{4,7}", "x{1,5,7,8}", "x{2,6,7,8}", "x{3,5,6,7}", "x{4,5,6,8}"),
    ("x{1,7}", "x{2,8}", "x{3,5}", "x{4,6}", "x{1,5,6,8}", "x{3,6,7,8}", "x{2,5,6,7}", "x{4,5,7,8}"),
    ("x{1,8}", "x{2,7}", "x{3,6}", "x{4,5}", "x{1,5,6,7}", "x{4,6,7,8}", "x{2,5,6,8}", "x{3,5,7,8}"),
    ("x{}", "x{5,6,7,8}", "x{3,4,7,8}", "x{2,4,6,8}", "x{3,4,5,6}", "x{2,4,5,7}", "x{2,3,6,7}", "x{2,3,5,8}"),
)

# Generators of the common stabilizer of each cell.
REFERENCE_STABILIZER_GENERATORS: Tuple[Tuple[str, str, str], ...] = (
    ("IIX", "IZI", "ZII"), ("ZII", "IXI", "IIZ"), ("ZII", "IXX", "IZZ"),
    ("XII", "IIZ", "IZI"), ("XIX", "IZI", "ZIZ"), ("XXI", "IIZ", "ZZI"),
    ("XXX", "ZZI", "IZZ"), ("IIX", "ZXI", "XZI"), ("IXI", "ZIX", "XIZ"),
    ("IXX", "ZXI", "XZZ"), ("XII", "IXZ", "IZX"), ("XIX", "IZX", "ZXZ"),
    ("XXI", "IXZ", "ZZX"), ("XXX", "ZZX", "XZZ"), ("XII", "IXI", "IIX"),
)


def distinguished_lines() -> List[Line]:
    """One member per cell fixing the labels V1..V15."""
    out = [Line.e_pair(1, j, 1) for j in range(2, 9)]
    out += [Line.x_set((1, j)) for j in range(2, 9)]
    out.append(Line.x_set(()))
    return out


# ----------------------------------------------------------------------
# Lines and G_E8
# ----------------------------------------------------------------------

@lru_cache(maxsize=1)
def _root_lines() -> Tuple[Line, ...]:
    short = []
    for i, j in itertools.combinations(range(1, DIMENSION + 1), 2):
        short.append(Line.e_pair(i, j, 1))
        short.append(Line.e_pair(i, j, -1))
    long_ = []
    for mask in range(1 << (DIMENSION - 1)):
        minus = [k + 2 for k in range(DIMENSION - 1) if mask >> k & 1]
        if len(minus) % 2 == 0:
            long_.append(Line.x_set(minus))
    return tuple(short + long_)


def build_root_lines() -> List[Line]:
    """The 120 canonical E8 root lines: 56 of type e_i +- e_j, then 64 all-+-1.

    Short lines are ordered by (i, j, +/-); long lines by the bitmask of
    their negated coordinates among 2..8.
    """
    return list(_root_lines())


def line_index(lines: Sequence[Line]) -> Dict[Line, int]:
    return {line: i for i, line in enumerate(lines)}


def build_orthogonality_graph(lines: Sequence[Line]) -> Graph:
    """Lines adjacent iff their representatives are orthogonal."""
    v = np.array([line.coords for line in lines], dtype=np.int64)
    gram = v @ v.T
    adj = (gram == 0) & ~np.eye(len(lines), dtype=bool)
    return Graph.from_adjacency(adj.astype(np.int64))


# ----------------------------------------------------------------------
# Orbits
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class OrbitPartition:
    """The 15 L-orbits, labelled V1..V15 by their distinguished members."""

    lines: Tuple[Line, ...]
    cells: Tuple[Tuple[int, ...], ...]
    labels: Tuple[str, ...]

    @property
    def n(self) -> int:
        return len(self.lines)

    @cached_property
    def cell_of(self) -> Tuple[int, ...]:
        out = [0] * len(self.lines)
        for c, cell in enumerate(self.cells):
            for v in cell:
                out[v] = c
        return tuple(out)

    def cell_lines(self, c: int) -> List[Line]:
        return [self.lines[v] for v in self.cells[c]]

    @cached_property
    def _index(self) -> Dict[Line, int]:
        return line_index(self.lines)

    def index_of(self, line: Line) -> int:
        return self._index[line]


def compute_orbits(lines: Sequence[Line]) -> OrbitPartition:
    """Orbits of L on the lines, ordered to match V1..V15.

    Raises:
        OrbitStructureError: orbits are not 15 cells of 8 pairwise
            orthogonal lines, or a distinguished member is missing.
    """
    lines = tuple(lines)
    index = line_index(lines)
    table = action_table(lines)
    seen = set()
    orbits = []
    for v in range(len(lines)):
        if v in seen:
            continue
        orbit = tuple(sorted(set(int(x) for x in table[:, v])))
        seen.update(orbit)
        orbits.append(orbit)
    sizes = Counter(len(o) for o in orbits)
    if len(orbits) != CELL_COUNT or sizes != Counter({CELL_SIZE: CELL_COUNT}):
        raise OrbitStructureError(f"Expected 15 orbits of size 8, got sizes {dict(sizes)}")

    ordered = []
    for d in distinguished_lines():
        if d not in index:
            raise OrbitStructureError(f"Distinguished line {d} is not among the lines")
        ordered.append(next(o for o in orbits if index[d] in o))
    if len(set(ordered)) != CELL_COUNT:
        raise OrbitStructureError("Distinguished lines do not pick 15 distinct orbits")

    for c, cell in enumerate(ordered):
        for a, b in itertools.combinations(cell, 2):
            if not lines[a].is_orthogonal(lines[b]):
                raise OrbitStructureError(f"Cell V{c + 1} lines {lines[a]} and {lines[b]} are not orthogonal")
    labels = tuple(f"V{c + 1}" for c in range(CELL_COUNT))
    logger.debug("Computed %d orbits of the L action", len(ordered))
    return OrbitPartition(lines, tuple(ordered), labels)


@lru_cache(maxsize=1)
def default_partition() -> OrbitPartition:
    return compute_orbits(build_root_lines())


def compare_with_reference_listing(partition: OrbitPartition) -> List[str]:
    """Every difference between the computed cells and the reference listing."""
    problems = []
    for c, names in enumerate(REFERENCE_ORBIT_LISTING):
        expected = {parse_line(name) for name in names}
        actual = set(partition.cell_lines(c))
        for line in sorted(expected - actual):
            problems.append(f"V{c + 1}: listed line {line} is not in the computed orbit")
        for line in sorted(actual - expected):
            problems.append(f"V{c + 1}: computed line {line} is missing from the listing")
    return problems


def stabilizer(x: Line) -> List[PauliWord]:
    """Elements of L fixing line x, in lexicographic order."""
    return [g for g in enumerate_L() if act_on_line(g, x) == x]


def subgroup_closure(generators: Sequence[PauliWord]) -> List[PauliWord]:
    elements = {IDENTITY}
    frontier = [IDENTITY]
    while frontier:
        nxt = []
        for e in frontier:
            for g in generators:
                p = group_mul(e, g)
                if p not in elements:
                    elements.add(p)
                    nxt.append(p)
        frontier = nxt
    return sorted(elements, key=lambda e: e.letters)


def stabilizer_generators(x: Line) -> List[PauliWord]:
    """Three independent generators of Stab(x): first in lexicographic order."""
    chosen: List[PauliWord] = []
    span = {IDENTITY}
    for g in stabilizer(x):
        if g not in span:
            chosen.append(g)
            span = set(subgroup_closure(chosen))
    return chosen


def cell_stabilizer(partition: OrbitPartition, c: int) -> List[PauliWord]:
    """Common stabilizer of all lines of a cell."""
    common = None
    for line in partition.cell_lines(c):
        s = set(stabilizer(line))
        common = s if common is None else common & s
    return sorted(common, key=lambda e: e.letters)


def compare_with_reference_stabilizers(partition: OrbitPartition) -> List[str]:
    problems = []
    for c, gens in enumerate(REFERENCE_STABILIZER_GENERATORS):
        expected = set(subgroup_closure([PauliWord(g) for g in gens]))
        for line in partition.cell_lines(c):
            actual = set(stabilizer(line))
            if actual != expected:
                problems.append(f"V{c + 1}: stabilizer of {line} differs from <{', '.join(gens)}>")
    return problems


def check_stabilizer_intersections(partition: OrbitPartition) -> List[Tuple[int, int, int]]:
    """(i, j, size) for every pair of cells whose stabilizers do not meet in 2 elements."""
    stabs = [set(cell_stabilizer(partition, c)) for c in range(len(partition.cells))]
    bad = []
    for i, j in itertools.combinations(range(len(stabs)), 2):
        size = len(stabs[i] & stabs[j])
        if size != 2:
            bad.append((i, j, size))
    return bad


def check_neighbor_split(partition: OrbitPartition, g: Graph) -> List[Tuple[int, int, int]]:
    """(vertex, cell, neighbours) wherever a vertex does not see exactly 4 of another cell."""
    cell_of = partition.cell_of
    bad = []
    for v in range(g.n):
        for c, cell in enumerate(partition.cells):
            if c == cell_of[v]:
                continue
            count = sum(1 for u in cell if g.rows[v] >> u & 1)
            if count != CELL_SIZE // 2:
                bad.append((v, c, count))
    return bad


def projection_sign_pattern(x: Line) -> Optional[Tuple[int, int, int]]:
    """Signs (s1, s2, s3) with P_x = (1/8)(1 + s1 N1)(1 + s2 N2)(1 + s3 N3).

    N1..N3 are :func:`stabilizer_generators` of x.  Returns None if no sign
    pattern reproduces the projection.
    """
    target = x.projection()
    ident = RationalMatrix.identity(DIMENSION)
    gens = [word_matrix(g) for g in stabilizer_generators(x)]
    for signs in itertools.product((1, -1), repeat=3):
        acc = ident
        for s, n in zip(signs, gens):
            acc = acc.matmul(ident.add(n.scale(s)))
        if acc.scale((1, 8)) == target:
            return signs
    return None


# ----------------------------------------------------------------------
# Choice of representatives and G^w
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class WChoice:
    """One representative line per cell."""

    reps: Tuple[Line, ...]

    def validate(self, partition: OrbitPartition) -> None:
        if len(self.reps) != len(partition.cells):
            raise ValueError(f"Expected {len(partition.cells)} representatives, got {len(self.reps)}")
        for c, rep in enumerate(self.reps):
            if rep not in partition.cell_lines(c):
                raise ValueError(f"Representative {rep} is not in cell {partition.labels[c]}")

    def vertices(self, partition: OrbitPartition) -> List[int]:
        return [partition.index_of(rep) for rep in self.reps]


def default_w_choice() -> WChoice:
    """e1-e_j for V1..V7, x{1,j} for V8..V14, x{} for V15."""
    reps = [Line.e_pair(1, j, -1) for j in range(2, 9)]
    reps += [Line.x_set((1, j)) for j in range(2, 9)]
    reps.append(Line.x_set(()))
    return WChoice(tuple(reps))


def flipped_cell_pairs(partition: OrbitPartition, w: WChoice) -> List[Tuple[int, int]]:
    """Cell pairs (i < j, 0-based) whose representatives are orthogonal."""
    return [(i, j) for i, j in itertools.combinations(range(len(partition.cells)), 2)
            if w.reps[i].is_orthogonal(w.reps[j])]


def build_Gw(lines: Sequence[Line], partition: OrbitPartition, w: WChoice) -> Graph:
    """G_E8 with adjacency complemented between cells of orthogonal representatives."""
    w.validate(partition)
    g = build_orthogonality_graph(lines)
    cell_of = partition.cell_of
    flip = np.zeros((len(partition.cells), len(partition.cells)), dtype=bool)
    for i, j in flipped_cell_pairs(partition, w):
        flip[i, j] = flip[j, i] = True
    c = np.asarray(cell_of)
    mask = flip[np.ix_(c, c)]
    adj = np.where(mask, 1 - g.adjacency, g.adjacency)
    logger.debug("Flipped %d cell pairs building G^w", int(flip.sum()) // 2)
    return Graph.from_adjacency(adj)


def gw_choice_isomorphism(partition: OrbitPartition, w1: WChoice, w2: WChoice) -> List[int]:
    """Explicit isomorphism G^{w1} -> G^{w2}, v_x in V_i -> v_{N_i x}.

    Raises:
        VerificationError: the map does not preserve adjacency.
    """
    w1.validate(partition)
    w2.validate(partition)
    perm = [0] * partition.n
    for c, cell in enumerate(partition.cells):
        n_c = transporters(w1.reps[c], w2.reps[c])[0]
        for v in cell:
            perm[v] = partition.index_of(act_on_line(n_c, partition.lines[v]))
    g1 = build_Gw(partition.lines, partition, w1)
    g2 = build_Gw(partition.lines, partition, w2)
    if not is_isomorphism(g1, g2, perm):
        raise VerificationError("Transporter map is not an isomorphism between the two G^w graphs")
    return perm


def check_non_edge_criterion(partition: OrbitPartition, w: WChoice, gw: Graph) -> List[Tuple[int, int]]:
    """Cell pairs where L-images of (w_i, w_j) differ from the non-edges of G^w."""
    table = action_table(partition.lines)
    reps = w.vertices(partition)
    bad = []
    for i, j in itertools.permutations(range(len(partition.cells)), 2):
        images = {(int(table[g, reps[i]]), int(table[g, reps[j]])) for g in range(table.shape[0])}
        non_edges = {(x, y) for x in partition.cells[i] for y in partition.cells[j]
                     if not gw.rows[x] >> y & 1}
        if images != non_edges:
            bad.append((i, j))
    return bad


def l_permutations(lines: Sequence[Line]) -> List[List[int]]:
    """Every element of L as a permutation of line indices."""
    return [list(map(int, row)) for row in action_table(lines)]


# ----------------------------------------------------------------------
# Gamma_1
# ----------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class CliqueLabel:
    """A coset N.C(i) as a sorted tuple of unsigned word strings."""

    words: Tuple[str, ...]
    cell: int

    def __post_init__(self):
        object.__setattr__(self, "words", tuple(sorted(self.words)))
        if len(set(self.words)) != CELL_SIZE:
            raise ValueError(f"A clique label needs {CELL_SIZE} distinct words, got {self.words}")

    def as_set(self) -> frozenset:
        return frozenset(self.words)

    def __str__(self) -> str:
        return "{" + ",".join(self.words) + "}"


def base_cliques(partition: OrbitPartition) -> List[frozenset]:
    """C(i): the words of L stabilizing the lines of V_i."""
    return [frozenset(g.letters for g in cell_stabilizer(partition, c))
            for c in range(len(partition.cells))]


def translate_clique(n: PauliWord, clique: frozenset) -> frozenset:
    return frozenset(group_mul(n, PauliWord(m)).letters for m in clique)


def vo6_adjacent(a: str, b: str) -> bool:
    """Adjacency in VO6+(2): the product contains Y zero or two times."""
    return a != b and group_mul(PauliWord(a), PauliWord(b)).y_count in (0, 2)


def is_vo6_clique(words) -> bool:
    return all(vo6_adjacent(a, b) for a, b in itertools.combinations(sorted(words), 2))


def clique_intersection_histogram(labels: Sequence[CliqueLabel]) -> Dict[int, int]:
    sets = [lab.as_set() for lab in labels]
    hist = Counter(len(a & b) for a, b in itertools.combinations(sets, 2))
    return dict(sorted(hist.items()))


def build_gamma1(partition: Optional[OrbitPartition] = None) -> Tuple[Graph, List[CliqueLabel]]:
    """The 120 cliques N.C(i) adjacent when they share exactly two words.

    Vertices are ordered by cell, base clique first, remaining cosets by
    their sorted word tuples.

    Raises:
        OrbitStructureError: cosets collide or the count is not 120.
    """
    partition = partition or default_partition()
    labels: List[CliqueLabel] = []
    for c, base in enumerate(base_cliques(partition)):
        cosets = {translate_clique(n, base) for n in enumerate_L()}
        ordered = [base] + sorted((s for s in cosets if s != base), key=lambda s: sorted(s))
        labels.extend(CliqueLabel(tuple(s), c) for s in ordered)
    sets = [lab.as_set() for lab in labels]
    if len(set(sets)) != len(sets) or len(sets) != CELL_COUNT * CELL_SIZE:
        raise OrbitStructureError(f"Expected 120 distinct cliques, got {len(set(sets))} of {len(sets)}")

    hist = clique_intersection_histogram(labels)
    unexpected = {k: v for k, v in hist.items() if k not in (0, 2)}
    if unexpected:
        logger.warning("Unexpected clique intersection sizes in Gamma_1: %s", unexpected)

    edges = [(a, b) for a, b in itertools.combinations(range(len(sets)), 2)
             if len(sets[a] & sets[b]) == 2]
    return Graph.from_edges(len(sets), edges), labels


def gamma1_isomorphism_witness(gw: Graph, partition: OrbitPartition, w: WChoice,
                               gamma1: Optional[Tuple[Graph, List[CliqueLabel]]] = None) -> List[int]:
    """Map v_x in V_i to M_{w_i x} C(i), verified as complement(G^w) -> Gamma_1.

    Raises:
        VerificationError: the relabelling is not a bijection or not an
            isomorphism.
    """
    w.validate(partition)
    graph, labels = gamma1 or build_gamma1(partition)
    position = {lab.as_set(): k for k, lab in enumerate(labels)}
    bases = base_cliques(partition)
    perm = [0] * partition.n
    for c, cell in enumerate(partition.cells):
        for v in cell:
            m = transporters(w.reps[c], partition.lines[v])[0]
            image = translate_clique(m, bases[c])
            if image not in position:
                raise VerificationError(f"Vertex {v} maps to a clique outside Gamma_1")
            perm[v] = position[image]
    if sorted(perm) != list(range(partition.n)):
        raise VerificationError("Relabelling onto Gamma_1 is not a bijection")
    if not is_isomorphism(gw.complement(), graph, perm):
        raise VerificationError("Relabelling is not an isomorphism complement(G^w) -> Gamma_1")
    return perm


def check_transvection_maps_c1_to_c2(partition: Optional[OrbitPartition] = None) -> bool:
    """t_v o t_w with v = (001100), w = (000011) carries C(1) onto C(2)."""
    partition = partition or default_partition()
    bases = base_cliques(partition)
    t_v = transvection((0, 0, 1, 1, 0, 0))
    t_w = transvection((0, 0, 0, 0, 1, 1))
    image = frozenset(bits_to_word(t_v(t_w(word_to_bits(m)))).letters for m in bases[0])
    return image == bases[1]


def signed_orbit_matrix(partition: OrbitPartition, c: int) -> np.ndarray:
    """8x8 integer matrix whose columns are the representatives of cell c."""
    return np.array([line.coords for line in partition.cell_lines(c)], dtype=np.int64).T


def check_cells_are_bases(partition: OrbitPartition) -> List[int]:
    """Cells whose lines do not form an orthogonal basis of R^8."""
    bad = []
    for c in range(len(partition.cells)):
        m = signed_orbit_matrix(partition, c)
        gram = m.T @ m
        if np.count_nonzero(gram - np.diag(np.diag(gram))) or np.any(np.diag(gram) == 0):
            bad.append(c)
    return bad


def check_l_is_automorphism_group(g: Graph, lines: Sequence[Line]) -> List[str]:
    """Elements of L (as words) that are not automorphisms of g."""
    return [g_word.letters for g_word, perm in zip(enumerate_L(), l_permutations(lines))
            if not is_automorphism(g, perm)]

