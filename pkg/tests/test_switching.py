#!/usr/bin/env python
# -*- coding: utf-8 -*-

import dataclasses
from fractions import Fraction

import pytest

from graph_core import Graph, srg_parameters
from magic import MagicUnitary
from switching import (
    GmPartition, InvalidPartitionError, NotAPartitionError, PartitionAlignmentError,
    build_display_Q, build_Q, certify_switch, check_alignment, check_display_equivalence,
    check_Q_involution, cospectral, gm_switch, switched_alpha_bounds, switched_subpair,
    v15_partition, validate_gm_partition, verify_QAQ, verify_uQ_commute,
)


def _square_with_pendant() -> Graph:
    # C4 on 0..3 as the cell, vertex 4 joined to half of it
    return Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 0), (4, 0), (4, 1)])


def test_q_for_a_two_vertex_cell_swaps():
    q = build_Q(GmPartition.create([[0, 1]], []), 2)
    assert q.to_fractions() == [[0, 1], [1, 0]]


def test_q_is_a_symmetric_involution():
    p = GmPartition.create([[0, 2, 4], [1, 5, 6, 7]], [3])
    q = build_Q(p, 8)
    assert q.entry(0, 2) == Fraction(2, 3)
    assert q.entry(0, 0) == Fraction(-1, 3)
    assert q.entry(3, 3) == 1
    assert check_Q_involution(q) == (True, True)
    assert check_display_equivalence(p, 8)
    assert build_display_Q(p, 8).entry(0, 1) == Fraction(2, 3)


def test_switch_on_small_graph():
    g = _square_with_pendant()
    p = GmPartition.create([[0, 1, 2, 3]], [4])
    report = validate_gm_partition(g, p)
    assert report.valid
    assert report.half_joins == {4: [0]}
    switched = gm_switch(g, p)
    assert sorted(switched.neighbors(4)) == [2, 3]
    assert sorted(switched.degrees()) == sorted(g.degrees())
    assert gm_switch(switched, p) == g
    assert verify_QAQ(g, p)
    assert cospectral(g, switched)


def test_invalid_partitions():
    g = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 0), (4, 0)])
    p = GmPartition.create([[0, 1, 2, 3]], [4])
    report = validate_gm_partition(g, p)
    assert report.d_violations == [{"vertex": 4, "cell": 1, "neighbors": 1, "size": 4}]
    with pytest.raises(InvalidPartitionError):
        gm_switch(g, p)

    path = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
    uneven = validate_gm_partition(path, GmPartition.create([[0, 1, 2, 3]], []))
    assert uneven.equitable_violations


def test_partition_must_cover_every_vertex_once():
    g = _square_with_pendant()
    with pytest.raises(NotAPartitionError):
        validate_gm_partition(g, GmPartition.create([[0, 1, 2, 3]], []))
    with pytest.raises(NotAPartitionError):
        validate_gm_partition(g, GmPartition.create([[0, 1, 2, 3], [3]], [4]))
    with pytest.raises(NotAPartitionError):
        validate_gm_partition(g, GmPartition.create([[0, 1, 2, 3]], [4, 5]))


def test_cospectral_rejects_size_mismatch_and_detects_difference():
    c4 = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    p4 = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
    assert not cospectral(c4, p4)
    with pytest.raises(ValueError):
        cospectral(c4, Graph.complete(3))


def test_v15_partition_switches_both_graphs(partition, g_e8, g_w):
    p = v15_partition(partition)
    assert len(p.cells) == 14 and len(p.d) == 8
    for g in (g_e8, g_w):
        report = validate_gm_partition(g, p)
        assert report.valid
        assert report.half_join_sizes() == [4]
        assert srg_parameters(gm_switch(g, p)) == (120, 63, 30, 36)


def test_qaq_and_commutation_on_the_e8_pair(partition, g_e8, g_w, magic_u):
    p = v15_partition(partition)
    assert verify_QAQ(g_e8, p)
    assert verify_QAQ(g_w, p)
    assert verify_uQ_commute(magic_u, p)


def test_misaligned_partition_is_rejected(partition, magic_u):
    p = v15_partition(partition)
    cells = [list(c) for c in p.cells]
    bad = GmPartition.create([cells[0][1:]] + cells[1:], list(p.d) + [cells[0][0]])
    with pytest.raises(PartitionAlignmentError) as exc:
        check_alignment(magic_u, bad)
    assert exc.value.cell in ("C1", "D")
    with pytest.raises(PartitionAlignmentError):
        verify_uQ_commute(magic_u, bad)


def test_switching_certificate(partition, g_e8, g_w, magic_u):
    p = v15_partition(partition)
    cert, sw1, sw2 = certify_switch(g_e8, g_w, magic_u, p, check_cospectral=False)
    assert cert.passed, cert.to_dict()
    assert cert.srg_check == {"g1": (120, 63, 30, 36), "g2": (120, 63, 30, 36)}
    assert cert.srg_expected == cert.srg_check
    assert switched_subpair(range(1, 10), sw1, sw2, magic_u)


@pytest.mark.slow
def test_switched_graphs_are_cospectral(partition, g_e8):
    p = v15_partition(partition)
    assert cospectral(g_e8, gm_switch(g_e8, p))


@pytest.mark.slow
def test_switched_independence_bounds(partition, w_choice, g_e8, g_w):
    p = v15_partition(partition)
    bounds = switched_alpha_bounds(gm_switch(g_e8, p), gm_switch(g_w, p), partition, w_choice)
    assert bounds.left_at_most_nine
    assert bounds.right_at_least_fourteen


def test_certificate_requires_switching_to_keep_srg_parameters(partition, g_e8, g_w, magic_u):
    cert, _, _ = certify_switch(g_e8, g_w, magic_u, v15_partition(partition), check_cospectral=False)
    assert cert.passed
    broken = dataclasses.replace(cert, srg_check={"g1": (120, 63, 30, 36), "g2": None})
    assert not broken.passed
    assert broken.to_dict()["original_srg"]["g2"] == [120, 63, 30, 36]


def test_certificate_on_non_regular_graphs_compares_like_with_like():
    g = _square_with_pendant()
    p = GmPartition.create([[0, 1, 2, 3]], [4])
    u = MagicUnitary.identity([[v] for v in range(g.n)], g.n, dim=1)
    cert, _, _ = certify_switch(g, g, u, p)
    assert cert.srg_check == cert.srg_expected == {"g1": None, "g2": None}
    assert cert.cospectral_check == {"g1": True, "g2": True}
