#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Command-line front end: build graphs, run verification suites and compare
homomorphism counts.  Every run writes a certificate into the output
directory.

Exit codes: 0 all checks pass, 1 a check failed, 2 usage or input error.
"""

import argparse
import itertools
import json
import logging
import time
from functools import cached_property
from typing import Callable, Dict, List, Optional

import numpy as np

from certificate_manager import (
    Certificate, CertificateManager, InputFileError, STATUS_INCONCLUSIVE,
    graph_digest, graph_sidecar, load_partition, load_w_choice, read_magic_unitary,
    write_magic_unitary,
)
from config_manager import ConfigManager
from exact_arith import DimensionError
from graph_core import (
    Graph, GraphError, MODE_EXACT, independence_number, is_clique, is_independent_set,
    is_isomorphism, srg_parameters,
)
from graph_io import DimacsFormatError, Graph6FormatError, load_graph
from homcount import (
    MAX_PATTERN_VERTICES, PatternCapError, complement_clique_distinguisher,
    cycle_pattern, enumerate_connected_graphs, hom_count, hom_count_bruteforce,
    hom_cycle_trace, hom_path_sum, hom_profile_compare, path_pattern,
)
from isomorphism import NonIsoCertificate, are_isomorphic, verify_certificate
from lines import NotARootError
from magic import (
    MagicUnitary, build_magic_unitary, check_conjugation_consistency, check_denominators,
    check_edge_permutation_property, check_transporter_choice_invariance,
    check_transporter_cosets, induced_subpair_report, verify_intertwiner,
    verify_magic_axioms, verify_product_relations,
)
from pauli import enumerate_L, group_mul
from roots import (
    OrbitPartition, WChoice, VerificationError, build_Gw, build_gamma1,
    build_orthogonality_graph, build_root_lines, check_cells_are_bases,
    check_l_is_automorphism_group, check_neighbor_split, check_non_edge_criterion,
    check_stabilizer_intersections, check_transvection_maps_c1_to_c2,
    clique_intersection_histogram, base_cliques, cell_stabilizer,
    compare_with_reference_listing, compare_with_reference_stabilizers,
    compute_orbits, default_w_choice, gamma1_isomorphism_witness,
    gw_choice_isomorphism, is_vo6_clique, projection_sign_pattern,
)
from switching import (
    GmPartition, PartitionAlignmentError, check_alignment, check_display_equivalence,
    certify_switch, gm_switch, switched_alpha_bounds, switched_subpair, v15_partition,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2

E8_PARAMETERS = (120, 63, 30, 36)
GAMMA1_PARAMETERS = (120, 56, 28, 24)
SUITES = ("srg", "orbits", "projections", "magic", "intertwiner", "gamma1",
          "independence", "switching", "subpairs")
SUBPAIR_SIZES = (9, 12, 15)
DEFAULT_PATTERN_CAP = 5
LONG_RUN_PATTERN_CAP = MAX_PATTERN_VERTICES

INPUT_ERRORS = (InputFileError, Graph6FormatError, DimacsFormatError, GraphError,
                NotARootError, PatternCapError, PartitionAlignmentError, DimensionError,
                FileNotFoundError)


# ----------------------------------------------------------------------
# Shared state
# ----------------------------------------------------------------------

class Workspace:
    """Lazily built objects shared by the suites, honouring input overrides."""

    def __init__(self, args, config: ConfigManager):
        self.args = args
        self.config = config

    @cached_property
    def partition(self) -> OrbitPartition:
        return compute_orbits(build_root_lines())

    @cached_property
    def w(self) -> WChoice:
        if getattr(self.args, "w_choice", None):
            return load_w_choice(self.args.w_choice, self.partition)
        return default_w_choice()

    @cached_property
    def g1(self) -> Graph:
        if getattr(self.args, "graph1", None):
            return self._load(self.args.graph1)
        return build_orthogonality_graph(self.partition.lines)

    @cached_property
    def g2(self) -> Graph:
        if getattr(self.args, "graph2", None):
            return self._load(self.args.graph2)
        return build_Gw(self.partition.lines, self.partition, self.w)

    @cached_property
    def u(self) -> MagicUnitary:
        if getattr(self.args, "magic", None):
            return read_magic_unitary(self.args.magic)
        return build_magic_unitary(self.partition, self.w)

    @cached_property
    def gm_partition(self) -> GmPartition:
        path = getattr(self.args, "partition", None)
        if path and path != "v15":
            return load_partition(path, self.partition.n, self.partition)
        return v15_partition(self.partition)

    @property
    def threads(self) -> int:
        return self.args.threads or self.config.get_threads()

    @property
    def iso_budget(self) -> int:
        return self.args.budget or self.config.get_iso_budget()

    @property
    def alpha_budget(self) -> int:
        return self.args.alpha_budget or self.config.get_alpha_budget()

    @property
    def seed(self) -> int:
        return self.args.seed if self.args.seed is not None else self.config.get_seed()

    @staticmethod
    def _load(path: str) -> Graph:
        try:
            return load_graph(path)
        except OSError as e:
            raise InputFileError(f"Cannot read graph: {e}", path)


def _timed(cert: Certificate, name: str, anchor: str, func: Callable[[], tuple]) -> None:
    """Run func -> (ok, details) and record it with its elapsed time."""
    start = time.time()
    ok, details = func()
    cert.add(name, anchor, ok, details, time.time() - start)


# ----------------------------------------------------------------------
# Suites
# ----------------------------------------------------------------------

def suite_srg(ws: Workspace, cert: Certificate) -> None:
    _timed(cert, "e8_srg_parameters", "G_E8 is strongly regular with parameters (120, 63, 30, 36)",
           lambda: (srg_parameters(ws.g1) == E8_PARAMETERS,
                    {"parameters": srg_parameters(ws.g1), "sha256": graph_digest(ws.g1)}))
    _timed(cert, "gw_srg_parameters", "G^w is strongly regular with parameters (120, 63, 30, 36)",
           lambda: (srg_parameters(ws.g2) == E8_PARAMETERS,
                    {"parameters": srg_parameters(ws.g2), "sha256": graph_digest(ws.g2)}))

    def _aut():
        bad = check_l_is_automorphism_group(ws.g1, ws.partition.lines)
        return not bad, {"failing_words": bad}
    _timed(cert, "l_acts_by_automorphisms", "every element of L is an automorphism of G_E8", _aut)


def suite_orbits(ws: Workspace, cert: Certificate) -> None:
    p = ws.partition

    def _group():
        elements = enumerate_L()
        members = set(elements)
        closed = all(group_mul(a, b) in members for a in elements for b in elements)
        abelian = all(group_mul(a, b) == group_mul(b, a) for a, b in itertools.combinations(elements, 2))
        return len(elements) == 64 and closed and abelian, {"order": len(elements), "closed": closed,
                                                          "abelian": abelian}
    _timed(cert, "l_is_elementary_abelian", "L is an abelian group of order 64", _group)

    def _cells():
        sizes = [len(c) for c in p.cells]
        cliques = [is_clique(ws.g1, c) for c in p.cells]
        bases = check_cells_are_bases(p)
        return sizes == [8] * 15 and all(cliques) and not bases, \
            {"sizes": sizes, "non_clique_cells": [i + 1 for i, ok in enumerate(cliques) if not ok],
             "non_basis_cells": bases}
    _timed(cert, "orbit_cells", "the 15 orbits have 8 pairwise orthogonal lines each", _cells)

    def _listing():
        diff = compare_with_reference_listing(p)
        return not diff, {"differences": diff}
    _timed(cert, "orbit_listing", "orbit contents match the reference V1..V15 listing", _listing)

    def _stabs():
        diff = compare_with_reference_stabilizers(p)
        orders = [len(cell_stabilizer(p, c)) for c in range(len(p.cells))]
        return not diff and orders == [8] * 15, {"differences": diff, "orders": orders}
    _timed(cert, "stabilizers", "each cell stabilizer has order 8 and matches the reference generators", _stabs)

    def _intersections():
        bad = check_stabilizer_intersections(p)
        return not bad, {"violations": bad}
    _timed(cert, "stabilizer_intersections", "distinct cell stabilizers intersect in a group of order 2",
           _intersections)

    def _split():
        bad = check_neighbor_split(p, ws.g1)
        return not bad, {"violations": bad[:20], "count": len(bad)}
    _timed(cert, "neighbor_split", "each vertex outside a cell has exactly 4 neighbors in it", _split)

    _timed(cert, "transvection_c1_c2", "the transvection pair maps the base clique C(1) to C(2)",
           lambda: (check_transvection_maps_c1_to_c2(p), {}))


def suite_projections(ws: Workspace, cert: Certificate) -> None:
    p = ws.partition

    def _rank_one():
        missing = [line.label for line in p.lines if projection_sign_pattern(line) is None]
        return not missing, {"lines_without_pattern": missing}
    _timed(cert, "rank_one_projections",
           "each line projection is (1/8)(1 +- N1)(1 +- N2)(1 +- N3) over its stabilizer", _rank_one)

    def _conj():
        bad = check_conjugation_consistency(ws.u, p)
        return not bad, {"entries": bad[:20], "count": len(bad)}
    _timed(cert, "conjugation_consistency", "M P_w M^T equals P_{Mw} for every entry", _conj)

    _timed(cert, "denominator_bound", "entries and their products have denominators dividing 64",
           lambda: (check_denominators(ws.u), {"common_denominator": ws.u.common_denominator}))


def suite_magic(ws: Workspace, cert: Certificate) -> None:
    def _axioms():
        report = verify_magic_axioms(ws.u)
        return report.passed, {"failed": report.failed_checks(), "failures": report.failures[:20],
                               "entries": report.stats.get("entries")}
    _timed(cert, "magic_axioms", "u is a magic unitary: projection entries, rows and columns sum to I",
           _axioms)

    mode = getattr(ws.args, "product_mode", "full")

    def _products():
        try:
            report = verify_product_relations(ws.u, ws.g1, ws.g2, mode, ws.threads)
        except ValueError as e:
            return False, {"error": str(e)}
        return report.passed, {"failed": report.failed_checks(), "failures": report.failures[:20],
                               **report.stats}
    _timed(cert, "product_relations",
           "u_ks u_lt = 0 exactly when adjacency of (k, l) and (s, t) disagrees", _products)

    if ws.u.w is not None and not getattr(ws.args, "magic", None):
        def _cosets():
            bad = check_transporter_cosets(ws.partition, ws.w)
            invariant = check_transporter_choice_invariance(ws.partition, ws.w)
            return not bad and not invariant, {"coset_failures": bad[:20], "choice_dependent": invariant[:20]}
        _timed(cert, "transporter_cosets", "transporters form a coset of the stabilizer; u does not depend on "
               "the choice", _cosets)

        def _edges():
            missing = check_edge_permutation_property(ws.partition, ws.g1)
            return missing == 0, {"unrealized_quadruples": missing}
        _timed(cert, "edge_permutation_property",
               "pairs at equal distance across two cells are related by an element of L", _edges)


def suite_intertwiner(ws: Workspace, cert: Certificate) -> None:
    def _main():
        try:
            return verify_intertwiner(ws.u, ws.g1, ws.g2), {}
        except ValueError as e:
            return False, {"error": str(e)}
    _timed(cert, "intertwiner", "A_{G_E8} u = u A_{G^w}", _main)

    def _criterion():
        bad = check_non_edge_criterion(ws.partition, ws.w, ws.g2)
        return not bad, {"violations": bad[:20]}
    _timed(cert, "gw_non_edge_criterion",
           "across flipped cells, G^w adjacency is non-orthogonality", _criterion)

    def _choice():
        other = WChoice(tuple(ws.partition.cell_lines(c)[1] for c in range(len(ws.partition.cells))))
        try:
            perm = gw_choice_isomorphism(ws.partition, ws.w, other)
        except VerificationError as e:
            return False, {"error": str(e)}
        g_other = build_Gw(ws.partition.lines, ws.partition, other)
        return is_isomorphism(ws.g2, g_other, perm), {"alternative_w": [r.label for r in other.reps]}
    _timed(cert, "w_choice_independence", "G^w does not depend on the choice of w up to isomorphism", _choice)


def suite_gamma1(ws: Workspace, cert: Certificate) -> None:
    state: Dict[str, object] = {}

    def _build():
        gamma1, labels = build_gamma1(ws.partition)
        state["gamma1"], state["labels"] = gamma1, labels
        distinct = len(set(labels)) == 120
        vo6 = all(is_vo6_clique(label.words) for label in labels)
        return distinct and vo6, {"labels": len(labels), "distinct": distinct, "vo6_cliques": vo6,
                                  "intersection_histogram": clique_intersection_histogram(labels)}
    _timed(cert, "gamma1_labels", "Gamma_1 has 120 distinct 8-clique labels of VO6+(2)", _build)

    def _base():
        bases = base_cliques(ws.partition)
        sizes = sorted({len(a & b) for a, b in itertools.combinations(bases, 2)})
        return sizes == [2], {"intersection_sizes": sizes}
    _timed(cert, "base_clique_intersections", "distinct base cliques C(i), C(j) share two words", _base)

    _timed(cert, "gamma1_srg", "Gamma_1 is strongly regular with parameters (120, 56, 28, 24)",
           lambda: (srg_parameters(state["gamma1"]) == GAMMA1_PARAMETERS,
                    {"parameters": srg_parameters(state["gamma1"])}))

    def _iso():
        try:
            perm = gamma1_isomorphism_witness(ws.g2, ws.partition, ws.w, (state["gamma1"], state["labels"]))
        except VerificationError as e:
            return False, {"error": str(e)}
        ok = is_isomorphism(ws.g2.complement(), state["gamma1"], perm)
        return ok, {"pairs_checked": 120 * 119 // 2}
    _timed(cert, "gamma1_isomorphism", "the complement of G^w is isomorphic to Gamma_1", _iso)


def suite_independence(ws: Workspace, cert: Certificate) -> None:
    state: Dict[str, object] = {}

    def _left():
        result = independence_number(ws.g1, MODE_EXACT)
        state["left"] = result
        valid = is_independent_set(ws.g1, result.witness)
        return result.exact and result.value == 8 and valid, \
            {"alpha": result.value, "witness": result.witness, "nodes": result.nodes}
    _timed(cert, "alpha_e8", "G_E8 has independence number 8", _left)

    def _right():
        witness = tuple(ws.w.vertices(ws.partition))
        state["right"] = witness
        return is_independent_set(ws.g2, witness) and len(witness) == 15, {"witness": witness}
    _timed(cert, "alpha_gw_witness", "G^w has an independent set of size 15", _right)

    def _noniso():
        left = state["left"]
        nic = NonIsoCertificate("independence_number", left.value, len(state["right"]),
                                left.witness, state["right"])
        ok = verify_certificate(ws.g1, ws.g2, nic)
        return ok, nic.to_dict()
    _timed(cert, "non_isomorphism_certificate", "G_E8 and G^w are not isomorphic", _noniso)


def suite_switching(ws: Workspace, cert: Certificate) -> None:
    p = ws.gm_partition
    state: Dict[str, object] = {}

    def _certify():
        skip = getattr(ws.args, "skip_cospectral", False)
        sc, sw1, sw2 = certify_switch(ws.g1, ws.g2, ws.u, p, check_cospectral=not skip)
        state["sc"], state["sw1"], state["sw2"] = sc, sw1, sw2
        return sc.passed, sc.to_dict()
    _timed(cert, "switching_certificate",
           "the partition switches both graphs; Q^2 = I; QAQ is the switched adjacency; uQ = Qu; "
           "u intertwines the switched pair", _certify)

    def _counts():
        counts = state["sc"].condition_report
        sizes = {k: r["half_join_neighbor_counts"] for k, r in counts.items()}
        return all(v == [4] for v in sizes.values()), {"half_join_neighbor_counts": sizes}
    _timed(cert, "half_join_counts", "every D-vertex has 4 neighbors in each half-joined cell", _counts)

    _timed(cert, "switched_srg", "both switched graphs are strongly regular (120, 63, 30, 36)",
           lambda: (all(v == E8_PARAMETERS for v in state["sc"].srg_check.values()),
                    {k: v for k, v in state["sc"].srg_check.items()}))

    _timed(cert, "display_order_equivalence", "native-order Q is a permutation conjugate of the display matrix",
           lambda: (check_display_equivalence(p, ws.g1.n), {}))

    def _alpha():
        bounds = switched_alpha_bounds(state["sw1"], state["sw2"], ws.partition, ws.w)
        ok = bounds.left_at_most_nine and bounds.right_at_least_fourteen
        return ok, {"alpha_switched_e8": bounds.upper_left.value, "exact": bounds.upper_left.exact,
                    "witness_switched_gw": bounds.witness_right}
    _timed(cert, "switched_alpha_bounds",
           "alpha of switched G_E8 is at most 9 and alpha of switched G^w is at least 14", _alpha)

    def _misaligned():
        cells = [list(c) for c in p.cells]
        if len(cells) < 2 or not p.d:
            return STATUS_INCONCLUSIVE, {"reason": "partition too small to misalign"}
        # move one vertex of the first cell into D
        bad = GmPartition.create([cells[0][1:]] + cells[1:], list(p.d) + [cells[0][0]])
        try:
            check_alignment(ws.u, bad)
        except PartitionAlignmentError as e:
            return True, {"rejected_block": e.cell}
        return False, {"error": "misaligned partition accepted"}
    _timed(cert, "alignment_precondition", "switching partitions must be unions of orbit cells", _misaligned)

    def _cospectral():
        checks = state["sc"].cospectral_check
        if checks is None:
            return STATUS_INCONCLUSIVE, {"reason": "skipped with --skip-cospectral"}
        return all(checks.values()), dict(checks)
    _timed(cert, "switched_cospectral", "switching preserves the characteristic polynomial", _cospectral)

    def _noniso():
        result = are_isomorphic(ws.g1, state["sw1"], ws.iso_budget, ws.alpha_budget)
        if result.is_non_isomorphic:
            return True, {"certificate": result.certificate.to_dict()}
        if result.is_isomorphic:
            return False, {"mapping": result.mapping}
        return STATUS_INCONCLUSIVE, {"notes": result.notes}
    _timed(cert, "switched_differs_from_original", "switched G_E8 is not isomorphic to G_E8", _noniso)

    _timed(cert, "switched_subpair", "induced subpairs of the switched pair keep the intertwiner",
           lambda: (switched_subpair(range(1, 10), state["sw1"], state["sw2"], ws.u), {"cells": list(range(1, 10))}))


def suite_subpairs(ws: Workspace, cert: Certificate) -> None:
    rng = np.random.default_rng(ws.seed)
    for size in SUBPAIR_SIZES:
        cells = sorted(int(c) + 1 for c in rng.choice(15, size=size, replace=False))

        def _check(cells=cells):
            report = induced_subpair_report(cells, ws.partition, ws.w, ws.u)
            return report.intertwiner and report.separated, {
                "cells": cells, "intertwiner": report.intertwiner, "alpha_e8_side": report.alpha_left,
                "witness_gw_side": report.witness_right}
        _timed(cert, f"subpair_{size}", f"the induced subpair on {size} cells is quantum isomorphic and "
               f"separated by independence number", _check)


SUITE_FUNCS = {
    "srg": suite_srg,
    "orbits": suite_orbits,
    "projections": suite_projections,
    "magic": suite_magic,
    "intertwiner": suite_intertwiner,
    "gamma1": suite_gamma1,
    "independence": suite_independence,
    "switching": suite_switching,
    "subpairs": suite_subpairs,
}


# ----------------------------------------------------------------------
# Commands
# ----------------------------------------------------------------------

def _manager(args, config: ConfigManager) -> CertificateManager:
    fmt = "yaml" if args.yaml else config.get_certificate_format()
    return CertificateManager(args.out or config.get_output_dir(), fmt)


def _report(cert: Certificate, args) -> int:
    if args.json:
        print(json.dumps(cert.to_dict(), indent=2, sort_keys=True))
    else:
        print(cert.to_text())
    return EXIT_OK if cert.passed else EXIT_CHECK_FAILED


def cmd_build(args, config: ConfigManager) -> int:
    ws = Workspace(args, config)
    manager = _manager(args, config)
    fmt = args.format or config.get_graph_format()
    cert = Certificate("build " + args.target, {"format": fmt, "base": args.base})
    start = time.time()
    if args.target == "e8":
        paths = manager.write_graph(ws.g1, "g_e8", fmt, graph_sidecar(ws.partition))
    elif args.target == "gw":
        paths = manager.write_graph(ws.g2, "g_w", fmt, graph_sidecar(ws.partition, ws.w))
    elif args.target == "gamma1":
        gamma1, labels = build_gamma1(ws.partition)
        paths = manager.write_graph(gamma1, "gamma1", fmt, graph_sidecar(labels=[str(x) for x in labels]))
    elif args.target == "switched":
        base = ws.g1 if args.base == "e8" else ws.g2
        switched = gm_switch(base, ws.gm_partition)
        paths = manager.write_graph(switched, f"{args.base}_switched", fmt, graph_sidecar(
            ws.partition, ws.w if args.base == "gw" else None,
            extra={"switching_partition": ws.gm_partition.to_dict()}))
    else:
        ext = "yaml" if manager.fmt == "yaml" else "json"
        paths = [write_magic_unitary(ws.u, manager.path(f"magic_unitary.{ext}"), manager.fmt)]
    cert.add("build_" + args.target, "artifact written", True, {"files": paths}, time.time() - start)
    manager.write_certificate(cert, f"certificate-build-{args.target}")
    return _report(cert, args)


def cmd_verify(args, config: ConfigManager) -> int:
    ws = Workspace(args, config)
    manager = _manager(args, config)
    suites = SUITES if args.suite == "all" else (args.suite,)
    params = {"suite": args.suite, "seed": ws.seed, "iso_budget": ws.iso_budget,
              "alpha_budget": ws.alpha_budget, "product_mode": args.product_mode,
              "inputs": {k: getattr(args, k) for k in ("graph1", "graph2", "magic", "partition", "w_choice")}}
    cert = Certificate(f"verify {args.suite}", params)
    for name in suites:
        logger.info(f"Running suite {name}")
        SUITE_FUNCS[name](ws, cert)
    manager.write_certificate(cert, f"certificate-{args.suite}")
    return _report(cert, args)


def cmd_homcount(args, config: ConfigManager) -> int:
    ws = Workspace(args, config)
    manager = _manager(args, config)
    n_max = args.nmax or config.get_hom_nmax()
    cap = LONG_RUN_PATTERN_CAP if args.long_run else DEFAULT_PATTERN_CAP
    if n_max > cap:
        raise PatternCapError(f"n_max {n_max} exceeds the cap {cap}; use --long-run for up to "
                              f"{LONG_RUN_PATTERN_CAP}")
    planar_only = not args.all_patterns
    cert = Certificate("homcount", {"n_max": n_max, "planar_only": planar_only,
                                    "distinguisher": args.distinguisher,
                                    "graph1": graph_digest(ws.g1), "graph2": graph_digest(ws.g2)})

    state: Dict[str, object] = {}

    def _profile():
        report = hom_profile_compare(ws.g1, ws.g2, n_max, planar_only, ws.threads)
        state["report"] = report
        path = manager.write_text("hom-profile.txt", report.to_text())
        return not report.planar_differences, {"patterns": len(report.rows), "profile": path,
                                               "differences": [r.pattern_id for r in report.differences]}
    _timed(cert, "hom_profile", "equal homomorphism counts from every connected planar pattern", _profile)

    def _oracles():
        mismatches = []
        for g, side in ((ws.g1, "g1"), (ws.g2, "g2")):
            for k in range(3, 7):
                if hom_count(cycle_pattern(k), g) != hom_cycle_trace(g, k):
                    mismatches.append(f"{side} C{k}")
            for k in range(2, 7):
                if hom_count(path_pattern(k), g) != hom_path_sum(g, k):
                    mismatches.append(f"{side} P{k}")
        return not mismatches, {"mismatches": mismatches}
    _timed(cert, "shortcut_oracles", "elimination counts equal trace(A^k) and walk sums", _oracles)

    def _brute():
        mismatches = [p.pattern_id for p in enumerate_connected_graphs(min(3, n_max))
                      if hom_count(p, ws.g1) != hom_count_bruteforce(p, ws.g1)]
        return not mismatches, {"mismatches": mismatches}
    _timed(cert, "bruteforce_oracle", "elimination counts equal brute force on patterns up to 3 vertices", _brute)

    if args.distinguisher:
        def _dist():
            result = complement_clique_distinguisher(ws.g1, ws.g2, 9, exact_right=args.long_run,
                                                     budget=ws.alpha_budget)
            return result.distinguishes, {"hom_k9_complement_g1": result.count_left,
                                          "hom_k9_complement_g2": result.count_right,
                                          "witness_g2": result.witness_right}
        _timed(cert, "complement_k9_distinguisher",
               "hom(K9, complement) is 0 for G_E8 and positive for G^w", _dist)

    manager.write_certificate(cert, "certificate-homcount")
    return _report(cert, args)


# ----------------------------------------------------------------------
# Parser
# ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", metavar="DIR", help="output directory")
    common.add_argument("--format", choices=("graph6", "dimacs"), help="graph file format")
    common.add_argument("--w-choice", dest="w_choice", metavar="FILE", help="YAML w choice")
    common.add_argument("--partition", metavar="FILE", help="YAML switching partition, or 'v15'")
    common.add_argument("--graph1", metavar="FILE", help="replace G_E8 by this graph")
    common.add_argument("--graph2", metavar="FILE", help="replace G^w by this graph")
    common.add_argument("--magic", metavar="FILE", help="magic unitary file written by 'build magic'")
    common.add_argument("--budget", type=int, help="isomorphism search node budget")
    common.add_argument("--alpha-budget", dest="alpha_budget", type=int, help="independence search node budget")
    common.add_argument("--seed", type=int, help="seed for sampled checks")
    common.add_argument("--threads", type=int, help="worker threads (default QISO_THREADS or config)")
    common.add_argument("--json", action="store_true", help="print the certificate as JSON")
    common.add_argument("--yaml", action="store_true", help="write certificates as YAML")
    common.add_argument("--debug", action="store_true", help="debug logging")

    parser = argparse.ArgumentParser(
        prog="qisosrg",
        description="Exact verification of a quantum isomorphic, non-isomorphic pair of SRG(120, 63, 30, 36).")
    sub = parser.add_subparsers(dest="command", required=True)

    build = sub.add_parser("build", parents=[common], help="write a graph or the magic unitary")
    build.add_argument("target", choices=("e8", "gw", "gamma1", "switched", "magic"))
    build.add_argument("--base", choices=("e8", "gw"), default="gw", help="graph to switch")
    build.set_defaults(func=cmd_build)

    verify = sub.add_parser("verify", parents=[common], help="run a verification suite")
    verify.add_argument("suite", choices=SUITES + ("all",))
    verify.add_argument("--product-mode", dest="product_mode", choices=("full", "blockwise"), default="full")
    verify.add_argument("--skip-cospectral", dest="skip_cospectral", action="store_true",
                        help="skip the 120x120 characteristic polynomial comparison after switching")
    verify.set_defaults(func=cmd_verify)

    hom = sub.add_parser("homcount", parents=[common], help="compare homomorphism counts")
    hom.add_argument("--nmax", type=int, help="largest pattern size")
    hom.add_argument("--all-patterns", dest="all_patterns", action="store_true",
                     help="include non-planar patterns")
    hom.add_argument("--distinguisher", action="store_true", help="add the complement K9 check")
    hom.add_argument("--long-run", dest="long_run", action="store_true",
                     help="allow patterns up to 7 vertices and exact K9 counts")
    hom.set_defaults(func=cmd_homcount)
    return parser


def run(argv: Optional[List[str]] = None, config: Optional[ConfigManager] = None) -> int:
    """Parse argv and dispatch; returns the exit code."""
    parser = build_parser()
    args = parser.parse_args(argv)
    config = config or ConfigManager()
    if args.debug or config.get_debug_mode():
        logging.getLogger().setLevel(logging.DEBUG)
    try:
        return args.func(args, config)
    except INPUT_ERRORS as e:
        logger.error(f"Input error: {e}")
        return EXIT_USAGE
