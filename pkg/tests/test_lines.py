#!/usr/bin/env python
# -*- coding: utf-8 -*-

import pytest

from lines import Line, NotARootError, is_root_vector, parse_line


def test_canonical_sign_is_first_nonzero_positive():
    line = Line((0, -1, 0, 1, 0, 0, 0, 0))
    assert line.coords == (0, 1, 0, -1, 0, 0, 0, 0)
    assert line.label == "e2-e4"


def test_x_set_label_uses_minus_positions_of_canonical_vector():
    # negating coordinates 1 and 2 flips the leading sign, so the label
    # reports the complementary set
    assert Line.x_set((1, 2)).label == "x{3,4,5,6,7,8}"
    assert Line.x_set((3, 4)).label == "x{3,4}"
    assert Line.x_set(()).label == "x{}"


@pytest.mark.parametrize("text", ["e1+e2", "e3-e7", "x{}", "x{5,6,7,8}", "x{2,4,6,8}"])
def test_labels_parse_back(text):
    assert parse_line(text).label == text


def test_unicode_minus_is_accepted():
    assert parse_line("e1−e5") == Line.e_pair(1, 5, -1)


def test_coordinate_list_parses():
    assert parse_line("1,1,0,0,0,0,0,0") == Line.e_pair(1, 2)


@pytest.mark.parametrize("text", ["e1+e1x", "e9+e1", "x{1}", "1,1,1,0,0,0,0,0", "2,0,0,0,0,0,0,0"])
def test_non_roots_rejected(text):
    with pytest.raises(NotARootError):
        parse_line(text)


def test_odd_number_of_minus_signs_is_not_a_root():
    assert not is_root_vector((1, 1, 1, 1, 1, 1, 1, -1))
    assert is_root_vector((1, 1, 1, 1, 1, 1, -1, -1))


def test_inner_products():
    a = Line.e_pair(1, 2)
    b = Line.e_pair(1, 2, -1)
    x = Line.x_set(())
    assert a.is_orthogonal(b)
    assert abs(a.inner(x)) == 2
    assert x.norm2 == 8
    assert a.projection().denominator() == 2
