#!/usr/bin/env python
# -*- coding: utf-8 -*-

import pytest

from exact_arith import RationalMatrix, mat_is_projection
from lines import Line
from magic import (
    DifferentOrbitsError, MagicUnitary, MagicUnitaryError, SubpairSizeError,
    check_conjugation_consistency, check_denominators, check_edge_permutation_property,
    check_transporter_choice_invariance, check_transporter_cosets, find_transporter,
    induced_subpair, induced_subpair_report, verify_intertwiner, verify_magic_axioms,
    verify_product_relations,
)


def test_find_transporter_is_least_word():
    t = find_transporter(Line.e_pair(1, 2), Line.e_pair(1, 2))
    assert t.word.letters == "III"
    with pytest.raises(DifferentOrbitsError):
        find_transporter(Line.e_pair(1, 2), Line.e_pair(1, 3))


def test_shape_and_denominators(magic_u):
    assert magic_u.n == 120
    assert len(list(magic_u.entries())) == 15 * 64
    assert magic_u.common_denominator == 8
    assert check_denominators(magic_u)
    assert magic_u.scaled_dense.shape == (120, 120, 8, 8)


def test_diagonal_entries_project_onto_representatives(magic_u, w_choice):
    for c in range(15):
        assert magic_u.entry(c, 0, 0) == w_choice.reps[c].projection()
        assert mat_is_projection(magic_u.entry(c, 3, 5))


def test_magic_axioms_hold(magic_u):
    report = verify_magic_axioms(magic_u)
    assert report.passed
    assert report.stats["entries"] == 960


def test_corrupted_entries_are_reported(magic_u):
    broken = magic_u.with_entry(2, 1, 1, RationalMatrix.zeros(8, 8))
    report = verify_magic_axioms(broken)
    assert not report.passed
    assert "row sums of V3" in report.failed_checks()
    assert report.failures[0]["where"] == (2, 1, None)

    swapped = magic_u.swap_entries(0, (0, 0), 0, (0, 1))
    assert not verify_magic_axioms(swapped).passed


def test_intertwines_e8_with_gw(magic_u, g_e8, g_w):
    assert verify_intertwiner(magic_u, g_e8, g_w)


def test_identity_unitary_only_intertwines_equal_graphs(partition, g_e8, g_w):
    ident = MagicUnitary.identity(partition.cells, partition.n)
    assert verify_magic_axioms(ident).passed
    assert verify_intertwiner(ident, g_e8, g_e8)
    assert not verify_intertwiner(ident, g_e8, g_w)


def test_intertwiner_rejects_size_mismatch(magic_u, petersen):
    with pytest.raises(ValueError):
        verify_intertwiner(magic_u, petersen, petersen)


def test_blockwise_product_relations(magic_u, g_e8, g_w):
    report = verify_product_relations(magic_u, g_e8, g_w, mode="blockwise")
    assert report.passed, report.failures[:3]
    assert report.stats["quadruples"] == 15 * 14 * 8 ** 4


@pytest.mark.slow
def test_full_product_relations(magic_u, g_e8, g_w):
    report = verify_product_relations(magic_u, g_e8, g_w, mode="full", threads=2)
    assert report.passed, report.failures[:3]
    assert report.stats["annihilation_counts"] == [4]


def test_product_relations_need_representatives(partition, g_e8):
    ident = MagicUnitary.identity(partition.cells, partition.n)
    with pytest.raises(ValueError):
        verify_product_relations(ident, g_e8, g_e8)


def test_entries_are_conjugated_projections(magic_u, partition):
    assert check_conjugation_consistency(magic_u, partition) == []


def test_transporters(partition, w_choice):
    assert check_transporter_cosets(partition, w_choice) == []
    assert check_transporter_choice_invariance(partition, w_choice) == []


@pytest.mark.slow
def test_edge_permutation_property(partition, g_e8):
    assert check_edge_permutation_property(partition, g_e8) == 0


def test_subpairs_need_nine_cells(partition, w_choice, magic_u):
    with pytest.raises(SubpairSizeError):
        induced_subpair(range(1, 9), partition, w_choice, magic_u)
    with pytest.raises(ValueError):
        induced_subpair(range(8, 17), partition, w_choice, magic_u)


def test_restricted_unitary_is_still_magic(partition, w_choice, magic_u):
    h1, h2, sub_u, vertices = induced_subpair([1, 3, 5, 7, 9, 11, 13, 14, 15], partition, w_choice, magic_u)
    assert h1.n == h2.n == sub_u.n == 72 == len(vertices)
    assert verify_magic_axioms(sub_u).passed
    assert verify_intertwiner(sub_u, h1, h2)


@pytest.mark.slow
def test_subpair_is_separated_by_independence(partition, w_choice, magic_u):
    report = induced_subpair_report(range(2, 11), partition, w_choice, magic_u)
    assert report.intertwiner
    assert report.alpha_left_exact and report.alpha_left <= 8
    assert report.witness_right_valid and len(report.witness_right) == 9
    assert report.separated


def test_magic_unitary_error_carries_position():
    err = MagicUnitaryError("bad", 1, 2, 3)
    assert (err.cell, err.row, err.col) == (1, 2, 3)
