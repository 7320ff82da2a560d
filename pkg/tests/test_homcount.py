#!/usr/bin/env python
# -*- coding: utf-8 -*-

import networkx as nx
import numpy as np
import pytest

import homcount
from graph_core import Graph
from homcount import (
    DistinguisherResult, PatternCapError, PatternGraph, canonical_id, complement_clique_distinguisher,
    complete_pattern, cycle_pattern, elimination_order, enumerate_connected_graphs, hom_count,
    hom_count_backtrack, hom_count_bruteforce, hom_cycle_trace, hom_path_sum,
    hom_profile_compare, is_planar_small, nonplanar_sweep, path_pattern,
)


@pytest.mark.parametrize("n_max, expected", [(1, 1), (2, 2), (3, 4), (4, 10), (5, 31), (6, 143)])
def test_connected_graph_counts(n_max, expected):
    patterns = enumerate_connected_graphs(n_max)
    assert len(patterns) == expected
    assert len({p.pattern_id for p in patterns}) == expected
    assert all(p.connected for p in patterns)


def test_pattern_cap():
    with pytest.raises(PatternCapError):
        enumerate_connected_graphs(8)
    with pytest.raises(PatternCapError):
        enumerate_connected_graphs(0)


def test_canonical_id_ignores_labelling():
    g = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)])
    perm = [4, 2, 0, 1, 3]
    assert canonical_id(g) == canonical_id(g.relabel(perm))
    assert canonical_id(g) != canonical_id(cycle_pattern(5).graph)


def test_small_planarity_cases():
    assert is_planar_small(complete_pattern(4).graph)
    assert not is_planar_small(Graph.complete(5))
    k33 = Graph.from_networkx(nx.complete_bipartite_graph(3, 3))
    assert not is_planar_small(k33)
    assert is_planar_small(cycle_pattern(7).graph)
    with pytest.raises(PatternCapError):
        is_planar_small(Graph.complete(9))


def test_planarity_matches_networkx_up_to_six_vertices():
    for p in enumerate_connected_graphs(6):
        planar, _ = nx.check_planarity(p.graph.to_networkx())
        assert p.planar == planar, p.pattern_id


def test_elimination_width_of_small_patterns():
    assert elimination_order(path_pattern(6).graph)[1] == 1
    assert elimination_order(cycle_pattern(6).graph)[1] == 2
    assert elimination_order(complete_pattern(5).graph)[1] == 4


@pytest.mark.parametrize("seed", range(3))
def test_counting_methods_agree(seed, petersen):
    rng = np.random.default_rng(seed)
    target = Graph.from_networkx(nx.gnp_random_graph(9, 0.5, seed=seed))
    patterns = enumerate_connected_graphs(4)
    for idx in rng.choice(len(patterns), size=5, replace=False):
        p = patterns[int(idx)]
        expected = hom_count_bruteforce(p, target)
        assert hom_count(p, target) == expected
        assert hom_count_backtrack(p.graph, target) == expected


def test_wide_patterns_fall_back_to_backtracking(petersen):
    # K3 -> Petersen has no images; K5 is above the elimination width
    assert hom_count(complete_pattern(3), petersen) == 0
    assert hom_count(complete_pattern(5), Graph.complete(6)) == 6 * 5 * 4 * 3 * 2


def test_trace_and_walk_oracles(petersen):
    for k in range(3, 8):
        assert hom_count(cycle_pattern(k), petersen) == hom_cycle_trace(petersen, k)
    for k in range(1, 7):
        assert hom_count(path_pattern(k), petersen) == hom_path_sum(petersen, k)
    assert hom_path_sum(petersen, 2) == 30
    with pytest.raises(ValueError):
        hom_cycle_trace(petersen, 2)


def test_e8_graph_small_counts(g_e8):
    assert hom_count(PatternGraph.from_graph(Graph.empty(1)), g_e8) == 120
    assert hom_count(path_pattern(2), g_e8) == 7560
    assert hom_count(cycle_pattern(3), g_e8) == 226800


def test_profiles_agree_for_the_e8_pair(g_e8, g_w):
    report = hom_profile_compare(g_e8, g_w, n_max=4, planar_only=True, threads=2)
    assert len(report.rows) == 10
    assert report.all_equal
    lines = report.to_text().splitlines()
    assert len(lines) == 10
    assert all(line.endswith(" true") for line in lines)


@pytest.mark.slow
def test_planar_profile_up_to_five_vertices(g_e8, g_w):
    report = hom_profile_compare(g_e8, g_w, n_max=5)
    assert len(report.rows) == 30
    assert report.all_equal


def test_profile_difference_is_reported():
    c6 = Graph.from_edges(6, [(i, (i + 1) % 6) for i in range(6)])
    two_c3 = Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    report = hom_profile_compare(c6, two_c3, n_max=3)
    assert not report.all_equal
    assert [r.pattern_id for r in report.differences] == [cycle_pattern(3).pattern_id]
    assert "false" in report.to_text()


def test_complement_clique_distinguisher_on_small_graphs():
    c5 = Graph.from_edges(5, [(i, (i + 1) % 5) for i in range(5)])
    p5 = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4)])
    result = complement_clique_distinguisher(c5, p5, k=3)
    assert result.count_left == 0
    assert result.witness_right is not None and len(result.witness_right) == 3
    assert result.distinguishes
    exact = complement_clique_distinguisher(c5, p5, k=3, exact_right=True)
    assert exact.count_right == 6
    assert exact.distinguishes


def test_distinguisher_without_right_evidence_claims_nothing():
    assert not DistinguisherResult(9, 5, None).distinguishes
    assert DistinguisherResult(9, 0, 10).distinguishes
    assert not DistinguisherResult(9, 0, 0).distinguishes


def test_nonplanar_sweep_only_uses_nonplanar_patterns(petersen):
    report = nonplanar_sweep(petersen, petersen, n_max=5)
    assert len(report.rows) == 1
    assert report.all_equal


def test_planar_differences_ignore_nonplanar_rows():
    k5 = Graph.complete(5)
    k5_minus_edge = Graph.from_edges(5, [(i, j) for i in range(5) for j in range(i + 1, 5) if (i, j) != (0, 1)])
    report = hom_profile_compare(k5, k5_minus_edge, n_max=5, planar_only=False)
    nonplanar = [r for r in report.rows if not r.planar]
    assert len(nonplanar) == 1
    assert not nonplanar[0].equal
    assert not report.all_equal
    assert all(r.planar for r in report.planar_differences)


def test_elimination_switches_to_python_ints_past_int64_headroom(monkeypatch, petersen):
    expected = {k: hom_cycle_trace(petersen, k) for k in (3, 4, 5)}
    monkeypatch.setattr(homcount, "INT64_HEADROOM", 0)
    for k, count in expected.items():
        assert hom_count(cycle_pattern(k), petersen) == count
    assert hom_count(path_pattern(4), petersen) == hom_path_sum(petersen, 4)
