#!/usr/bin/env python
# -*- coding: utf-8 -*-

import math
from fractions import Fraction

import numpy as np
import pytest

from exact_arith import (
    DimensionError, IntPolynomial, NonIntegerEntryError, NotSquareError, RationalMatrix,
    char_poly, char_poly_int, check_denominator_bound, mat_is_projection, mat_mul,
)


def test_outer_projection_is_exact_projection():
    p = RationalMatrix.outer_projection([1, 1, 1, 1, 1, 1, 1, 1])
    assert p.entry(0, 0) == Fraction(1, 8)
    assert p.denominator() == 8
    assert mat_is_projection(p)


def test_sum_of_orthogonal_projections_is_identity():
    a = RationalMatrix.outer_projection([1, 1, 0, 0])
    b = RationalMatrix.outer_projection([1, -1, 0, 0])
    c = RationalMatrix.outer_projection([0, 0, 1, 0])
    d = RationalMatrix.outer_projection([0, 0, 0, 1])
    assert a.matmul(b).is_zero()
    assert a + b + c + d == RationalMatrix.identity(4)


def test_non_idempotent_matrix_is_not_projection():
    m = RationalMatrix.from_rows([[1, 1], [0, 1]])
    assert not mat_is_projection(m)


def test_scaled_int_round_trips_exactly():
    m = RationalMatrix.from_rows([[(1, 2), (-1, 4)], [0, 3]])
    den, arr = m.scaled_int()
    assert den == 4
    assert arr.tolist() == [[2, -1], [0, 12]]
    assert RationalMatrix.from_numpy(arr, den) == m
    with pytest.raises(ValueError):
        m.scaled_int(2)


def test_dimension_errors():
    a = RationalMatrix.zeros(2, 3)
    with pytest.raises(DimensionError):
        a.matmul(a)
    with pytest.raises(DimensionError):
        a.add(RationalMatrix.zeros(3, 2))
    with pytest.raises(NotSquareError):
        mat_is_projection(a)


def test_rows_of_unequal_length_rejected():
    with pytest.raises(ValueError):
        RationalMatrix.from_rows([[1, 2], [3]])


def test_denominator_bound():
    eighth = RationalMatrix.outer_projection([1] * 8)
    third = RationalMatrix.from_rows([[(1, 3)]])
    assert check_denominator_bound([eighth])
    assert not check_denominator_bound([eighth, third])


def test_char_poly_of_cycle_and_path():
    c4 = np.array([[0, 1, 0, 1], [1, 0, 1, 0], [0, 1, 0, 1], [1, 0, 1, 0]])
    p4 = np.array([[0, 1, 0, 0], [1, 0, 1, 0], [0, 1, 0, 1], [0, 0, 1, 0]])
    assert char_poly_int(c4).to_list() == [0, 0, -4, 0, 1]
    assert char_poly_int(p4).to_list() == [1, 0, -3, 0, 1]
    assert char_poly(RationalMatrix.from_numpy(c4)) == char_poly_int(c4)


def test_char_poly_rejects_fractions_and_rectangles():
    with pytest.raises(NonIntegerEntryError):
        char_poly(RationalMatrix.from_rows([[(1, 2)]]))
    with pytest.raises(NotSquareError):
        char_poly(RationalMatrix.zeros(1, 2))


def test_polynomial_from_roots():
    poly = IntPolynomial.from_roots([(2, 1), (-1, 2)])
    assert poly.degree == 3
    assert poly.evaluate(2) == 0
    assert poly.evaluate(-1) == 0
    assert poly.evaluate(0) == -2


def _random_rational(rng, rows, cols):
    return RationalMatrix.from_rows(
        [[(int(rng.integers(-9, 10)), int(rng.integers(1, 7))) for _ in range(cols)] for _ in range(rows)])


@pytest.mark.parametrize("seed", range(4))
def test_products_are_associative(seed):
    rng = np.random.default_rng(seed)
    a, b, c = _random_rational(rng, 3, 4), _random_rational(rng, 4, 2), _random_rational(rng, 2, 5)
    assert mat_mul(mat_mul(a, b), c) == mat_mul(a, mat_mul(b, c))
    assert (a @ b).shape == (3, 2)


@pytest.mark.parametrize("seed", range(4))
def test_char_poly_is_invariant_under_relabelling(seed):
    rng = np.random.default_rng(seed)
    n = 6
    upper = np.triu(rng.integers(0, 2, size=(n, n)), 1)
    a = upper + upper.T
    p = np.eye(n, dtype=np.int64)[rng.permutation(n)]
    relabelled = RationalMatrix.from_numpy(p.T @ a @ p)
    assert char_poly(relabelled) == char_poly(RationalMatrix.from_numpy(a))


def test_char_poly_small_cases():
    k2 = RationalMatrix.from_rows([[0, 1], [1, 0]])
    assert char_poly(k2).to_list() == [-1, 0, 1]
    assert char_poly(RationalMatrix.zeros(2, 2)).to_list() == [0, 0, 1]


@pytest.mark.slow
def test_char_poly_of_the_e8_graph(g_e8):
    n, k, lam, mu = 120, 63, 30, 36
    disc = math.isqrt((lam - mu) ** 2 + 4 * (k - mu))
    r, s = (lam - mu + disc) // 2, (lam - mu - disc) // 2
    spread = (2 * k + (n - 1) * (lam - mu)) // disc
    f, g = ((n - 1) - spread) // 2, ((n - 1) + spread) // 2
    assert (r, s, f, g) == (3, -9, 84, 35)
    expected = IntPolynomial.from_roots([(k, 1), (r, f), (s, g)])
    assert char_poly_int(g_e8.adjacency) == expected
