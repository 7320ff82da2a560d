#!/usr/bin/env python
# -*- coding: utf-8 -*-

import itertools

import numpy as np
import pytest

from lines import Line
from pauli import (
    IDENTITY, PauliWord, act_on_line, bits_to_word, commutes, enumerate_L, group_mul,
    polar_form, quadratic_form, signed_permutation, transporters, transvection,
    word_matrix, word_mul, word_to_bits,
)
from roots import build_root_lines


def test_L_has_64_unsigned_elements():
    elements = enumerate_L()
    assert len(elements) == 64
    assert len(set(elements)) == 64
    assert all(e.sign == 1 for e in elements)
    assert elements[0] == IDENTITY


def test_L_is_closed_abelian_and_of_exponent_two():
    elements = enumerate_L()
    members = set(elements)
    for a, b in itertools.product(elements, repeat=2):
        assert group_mul(a, b) in members
        assert group_mul(a, b) == group_mul(b, a)
    assert all(group_mul(a, a) == IDENTITY for a in elements)


def test_y_is_x_times_z_with_sign():
    assert word_mul("XII", "ZII") == PauliWord("YII")
    assert word_mul("ZII", "XII") == PauliWord("YII", -1)
    assert np.array_equal(signed_permutation("YII"),
                          signed_permutation("XII") @ signed_permutation("ZII"))


def test_parse_accepts_both_minus_signs():
    assert PauliWord.parse("-XYZ") == PauliWord("XYZ", -1)
    assert PauliWord.parse("−xyz") == PauliWord("XYZ", -1)
    assert str(PauliWord("XYZ", -1)) == "-XYZ"
    with pytest.raises(ValueError):
        PauliWord.parse("XQ")


def test_commutation_counts_letter_clashes():
    assert commutes("XXI", "ZZI")
    assert not commutes("XII", "ZII")
    assert commutes("III", "YYY")


def test_matrices_are_signed_permutations():
    for w in enumerate_L():
        m = signed_permutation(w)
        assert np.array_equal(m @ m.T, np.eye(8, dtype=np.int64))
        assert set(np.abs(m).sum(axis=0).tolist()) == {1}


def test_action_preserves_root_lines():
    x = Line.x_set(())
    image = act_on_line("ZII", x)
    assert image == Line.x_set((5, 6, 7, 8))


def test_transporters_form_a_coset_of_the_stabilizer():
    y = Line.e_pair(1, 2)
    z = Line.e_pair(3, 4)
    found = transporters(y, z)
    stab = transporters(y, y)
    assert len(found) == len(stab) == 8
    base = found[0]
    assert {group_mul(base, s) for s in stab} == set(found)


def test_bits_round_trip_and_quadratic_form_counts_y():
    for w in enumerate_L():
        bits = word_to_bits(w)
        assert bits_to_word(bits) == w
        assert quadratic_form(bits) == w.y_count % 2


def test_polar_form_is_symmetric_and_alternating():
    vectors = [word_to_bits(w) for w in enumerate_L()]
    for x in vectors[:16]:
        assert polar_form(x, x) == 0
        for v in vectors[::7]:
            assert polar_form(x, v) == polar_form(v, x)


def test_transvection_is_an_involution():
    t = transvection((0, 0, 1, 1, 0, 0))
    for w in enumerate_L():
        bits = word_to_bits(w)
        assert t(t(bits)) == bits


def test_word_matrix_is_a_homomorphism():
    elements = enumerate_L()
    for a, b in itertools.product(elements, repeat=2):
        assert word_matrix(a) @ word_matrix(b) == word_matrix(word_mul(a, b)), (a, b)
    assert word_matrix("-XII") @ word_matrix("ZII") == word_matrix(PauliWord("YII", -1))


def test_x_on_first_leg_swaps_coordinate_blocks():
    assert act_on_line("XII", Line.e_pair(1, 2)) == Line.e_pair(5, 6)
    assert act_on_line("XII", Line.e_pair(1, 6, -1)) == Line.e_pair(2, 5, -1)


def test_identity_fixes_every_line():
    lines = build_root_lines()
    assert all(act_on_line(IDENTITY, x) == x for x in lines)
    assert all(act_on_line(PauliWord("III", -1), x) == x for x in lines)


def test_action_preserves_orthogonality():
    lines = build_root_lines()
    coords = np.array([x.coords for x in lines], dtype=np.int64)
    orthogonal = coords @ coords.T == 0
    for g in enumerate_L():
        images = np.array([act_on_line(g, x).coords for x in lines], dtype=np.int64)
        assert np.array_equal(images @ images.T == 0, orthogonal), g
        assert len({act_on_line(g, x) for x in lines}) == 120
