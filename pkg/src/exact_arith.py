#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Exact rational matrices and integer characteristic polynomials.

RationalMatrix wraps a dense sympy DomainMatrix over QQ.  Values are
immutable: every operation returns a fresh matrix.  Heavy sweeps elsewhere
in the package work on integer numpy arrays obtained from ``scaled_int``,
which multiplies through by the common denominator so that no rounding is
ever involved.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
from sympy import QQ, ZZ
from sympy.polys.matrices import DomainMatrix

logger = logging.getLogger(__name__)

# Entries of rank-1 line projections are multiples of 1/8, so products of two
# of them have denominators dividing 64.
PROJECTION_DENOMINATOR_BOUND = 64


class DimensionError(ValueError):
    """Raised when matrix shapes do not conform."""

    def __init__(self, operation: str, shape_left: Tuple[int, int], shape_right: Tuple[int, int]):
        self.operation = operation
        self.shape_left = shape_left
        self.shape_right = shape_right
        super().__init__(
            f"{operation}: incompatible shapes {shape_left[0]}x{shape_left[1]} "
            f"and {shape_right[0]}x{shape_right[1]}"
        )


class NotSquareError(ValueError):
    """Raised when an operation needs a square matrix."""


class NonIntegerEntryError(ValueError):
    """Raised when an integer matrix is required but a fraction is present."""


def _to_qq(value):
    """Convert int, Fraction or (num, den) to a QQ element."""
    if isinstance(value, tuple):
        num, den = value
        return QQ(int(num), int(den))
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    if isinstance(value, (int, np.integer)):
        return QQ(int(value))
    if hasattr(value, "numerator") and hasattr(value, "denominator"):
        return QQ(int(value.numerator), int(value.denominator))
    raise TypeError(f"Cannot convert {value!r} to an exact rational")


def _num_den(element) -> Tuple[int, int]:
    return int(element.numerator), int(element.denominator)


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


class RationalMatrix:
    """Dense exact-rational matrix with value semantics."""

    __slots__ = ("_dm",)

    def __init__(self, dm: DomainMatrix):
        if dm.domain != QQ:
            dm = dm.convert_to(QQ)
        rows, cols = dm.shape
        if rows <= 0 or cols <= 0:
            raise ValueError(f"Matrix dimensions must be positive, got {rows}x{cols}")
        self._dm = dm.to_dense()

    # ------------------------------------------------------------------
    # Construction
    # ------------------------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "RationalMatrix":
        """Build from nested rows of ints, Fractions or (num, den) pairs."""
        rows = [list(r) for r in rows]
        if not rows or not rows[0]:
            raise ValueError("Matrix must have at least one row and column")
        width = len(rows[0])
        for idx, r in enumerate(rows):
            if len(r) != width:
                raise ValueError(f"Row {idx} has length {len(r)}, expected {width}")
        data = [[_to_qq(v) for v in r] for r in rows]
        return cls(DomainMatrix(data, (len(rows), width), QQ))

    @classmethod
    def from_numpy(cls, array: np.ndarray, denominator: int = 1) -> "RationalMatrix":
        """Build from an integer array divided by a common denominator."""
        array = np.asarray(array)
        if array.ndim != 2:
            raise ValueError(f"Expected a 2-d array, got shape {array.shape}")
        den = int(denominator)
        return cls.from_rows([[(int(v), den) for v in row] for row in array.tolist()])

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls.from_rows([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls.from_rows([[0] * cols for _ in range(rows)])

    @classmethod
    def outer_projection(cls, vector: Sequence[int]) -> "RationalMatrix":
        """Rank-1 orthogonal projection x x^T / |x|^2 onto span(x)."""
        vec = [int(v) for v in vector]
        norm2 = sum(v * v for v in vec)
        if norm2 == 0:
            raise ValueError("Cannot project onto the zero vector")
        return cls.from_rows([[(a * b, norm2) for b in vec] for a in vec])

    # ------------------------------------------------------------------
    # Accessors
    # ------------------------------------------------------------------

    @property
    def shape(self) -> Tuple[int, int]:
        return self._dm.shape

    @property
    def rows(self) -> int:
        return self._dm.shape[0]

    @property
    def cols(self) -> int:
        return self._dm.shape[1]

    @property
    def domain_matrix(self) -> DomainMatrix:
        return self._dm

    def entry(self, i: int, j: int) -> Fraction:
        num, den = _num_den(self._dm.to_list()[i][j])
        return Fraction(num, den)

    def to_fractions(self) -> List[List[Fraction]]:
        return [[Fraction(*_num_den(e)) for e in row] for row in self._dm.to_list()]

    def denominator(self) -> int:
        """Least common denominator of all entries."""
        dens = (int(e.denominator) for row in self._dm.to_list() for e in row)
        return reduce(_lcm, dens, 1)

    def scaled_int(self, denominator: Optional[int] = None) -> Tuple[int, np.ndarray]:
        """Return (d, M) with M an int64 array and self == M / d exactly.

        Args:
            denominator: Common denominator to use; must be a multiple of
                every entry's denominator.  Defaults to the least one.
        """
        den = self.denominator() if denominator is None else int(denominator)
        out = np.zeros(self.shape, dtype=np.int64)
        for i, row in enumerate(self._dm.to_list()):
            for j, e in enumerate(row):
                num, d = _num_den(e)
                if den % d:
                    raise ValueError(f"Denominator {den} is not a multiple of {d}")
                out[i, j] = num * (den // d)
        return den, out

    # ------------------------------------------------------------------
    # Arithmetic
    # ------------------------------------------------------------------

    def matmul(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise DimensionError("matmul", self.shape, other.shape)
        return RationalMatrix(self._dm.matmul(other._dm))

    def add(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.shape != other.shape:
            raise DimensionError("add", self.shape, other.shape)
        return RationalMatrix(self._dm + other._dm)

    def sub(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.shape != other.shape:
            raise DimensionError("sub", self.shape, other.shape)
        return RationalMatrix(self._dm - other._dm)

    def scale(self, factor) -> "RationalMatrix":
        return RationalMatrix(self._dm * _to_qq(factor))

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(self._dm.transpose())

    def __matmul__(self, other):
        return self.matmul(other)

    def __add__(self, other):
        return self.add(other)

    def __sub__(self, other):
        return self.sub(other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.shape == other.shape and self._dm.to_list() == other._dm.to_list()

    def __hash__(self):
        return hash((self.shape, tuple(tuple(_num_den(e) for e in r) for r in self._dm.to_list())))

    def __repr__(self) -> str:
        return f"RationalMatrix({self.rows}x{self.cols})"

    def is_zero(self) -> bool:
        return all(e == QQ.zero for row in self._dm.to_list() for e in row)

    def is_square(self) -> bool:
        return self.rows == self.cols


def mat_mul(a: RationalMatrix, b: RationalMatrix) -> RationalMatrix:
    """Exact product a.b."""
    return a.matmul(b)


def mat_is_projection(a: RationalMatrix) -> bool:
    """True iff a is symmetric and idempotent, tested entrywise exactly."""
    if not a.is_square():
        raise NotSquareError(f"Projection test needs a square matrix, got {a.rows}x{a.cols}")
    return a == a.transpose() and a.matmul(a) == a


def check_denominator_bound(matrices: Iterable[RationalMatrix],
                            bound: int = PROJECTION_DENOMINATOR_BOUND) -> bool:
    """True iff every entry denominator of every matrix divides ``bound``."""
    for m in matrices:
        if bound % m.denominator():
            logger.warning("Denominator %d does not divide %d", m.denominator(), bound)
            return False
    return True


# ----------------------------------------------------------------------
# Integer polynomials
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial with coefficients in ascending degree order."""

    coefficients: Tuple[int, ...]

    def __post_init__(self):
        coeffs = [int(c) for c in self.coefficients]
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        if not coeffs:
            coeffs = [0]
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @property
    def degree(self) -> int:
        if self.coefficients == (0,):
            return -1
        return len(self.coefficients) - 1

    @classmethod
    def from_roots(cls, roots: Iterable[Tuple[int, int]]) -> "IntPolynomial":
        """Build prod (x - r)^m from (root, multiplicity) pairs."""
        poly = cls((1,))
        for root, mult in roots:
            for _ in range(mult):
                poly = poly * cls((-root, 1))
        return poly

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        out = [0] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            if a:
                for j, b in enumerate(other.coefficients):
                    out[i + j] += a * b
        return IntPolynomial(tuple(out))

    def evaluate(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def to_list(self) -> List[int]:
        return list(self.coefficients)


def char_poly(a: RationalMatrix) -> IntPolynomial:
    """Characteristic polynomial det(xI - a) of an integer matrix.

    Uses sympy's division-free Berkowitz algorithm over ZZ.

    Raises:
        NotSquareError: a is not square.
        NonIntegerEntryError: a has a non-integer entry.
    """
    if not a.is_square():
        raise NotSquareError(f"Characteristic polynomial needs a square matrix, got {a.rows}x{a.cols}")
    if a.denominator() != 1:
        raise NonIntegerEntryError("Characteristic polynomial requires integer entries")
    rows = [[int(e.numerator) for e in row] for row in a.domain_matrix.to_list()]
    dm = DomainMatrix([[ZZ(v) for v in r] for r in rows], a.shape, ZZ)
    descending = [int(c) for c in dm.charpoly()]
    return IntPolynomial(tuple(reversed(descending)))


def char_poly_int(array: np.ndarray) -> IntPolynomial:
    """Characteristic polynomial of an integer numpy matrix."""
    array = np.asarray(array)
    if array.ndim != 2 or array.shape[0] != array.shape[1]:
        raise NotSquareError(f"Characteristic polynomial needs a square matrix, got shape {array.shape}")
    n = array.shape[0]
    dm = DomainMatrix([[ZZ(int(v)) for v in row] for row in array.tolist()], (n, n), ZZ)
    descending = [int(c) for c in dm.charpoly()]
    return IntPolynomial(tuple(reversed(descending)))
