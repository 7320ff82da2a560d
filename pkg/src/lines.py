#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Lines spanned by E8 root vectors.

A line is stored by its canonical representative: the root vector whose
first nonzero coordinate is positive.
"""

import re
from dataclasses import dataclass
from typing import Iterable, Sequence, Tuple

from exact_arith import RationalMatrix

DIMENSION = 8

_E_PAIR_RE = re.compile(r'^e([1-8])([+-])e([1-8])$')


class NotARootError(ValueError):
    """Raised when a coordinate vector is not an E8 root."""


def is_root_vector(coords: Sequence[int]) -> bool:
    """True for +-e_i +- e_j and for all-+-1 vectors with an even number of -1."""
    if len(coords) != DIMENSION:
        return False
    nonzero = [c for c in coords if c != 0]
    if len(nonzero) == 2 and all(abs(c) == 1 for c in nonzero):
        return True
    if len(nonzero) == DIMENSION and all(abs(c) == 1 for c in nonzero):
        return sum(1 for c in nonzero if c < 0) % 2 == 0
    return False


@dataclass(frozen=True, order=True)
class Line:
    """An E8 root vector up to global sign."""

    coords: Tuple[int, ...]

    def __post_init__(self):
        coords = tuple(int(c) for c in self.coords)
        if not is_root_vector(coords):
            raise NotARootError(f"Not an E8 root: {coords!r}")
        first = next(c for c in coords if c != 0)
        if first < 0:
            coords = tuple(-c for c in coords)
        object.__setattr__(self, "coords", coords)

    # ------------------------------------------------------------------
    # Named constructors
    # ------------------------------------------------------------------

    @classmethod
    def e_pair(cls, i: int, j: int, sign: int = 1) -> "Line":
        """The line of e_i + sign * e_j (1-based coordinates)."""
        if i == j:
            raise ValueError("e_pair needs two distinct coordinates")
        vec = [0] * DIMENSION
        vec[i - 1] = 1
        vec[j - 1] = 1 if sign > 0 else -1
        return cls(tuple(vec))

    @classmethod
    def x_set(cls, minus: Iterable[int] = ()) -> "Line":
        """The line of the all-ones vector negated on ``minus`` (1-based)."""
        vec = [1] * DIMENSION
        for i in minus:
            vec[i - 1] = -1
        return cls(tuple(vec))

    # ------------------------------------------------------------------
    # Geometry
    # ------------------------------------------------------------------

    @property
    def is_short_type(self) -> bool:
        """True for lines of type +-e_i +- e_j."""
        return sum(1 for c in self.coords if c) == 2

    @property
    def norm2(self) -> int:
        return sum(c * c for c in self.coords)

    def inner(self, other: "Line") -> int:
        return sum(a * b for a, b in zip(self.coords, other.coords))

    def is_orthogonal(self, other: "Line") -> bool:
        return self.inner(other) == 0

    def projection(self) -> RationalMatrix:
        return RationalMatrix.outer_projection(self.coords)

    @property
    def label(self) -> str:
        """Readable name such as ``e1-e3`` or ``x{3,4}`` (minus positions)."""
        if self.is_short_type:
            (i, a), (j, b) = [(k + 1, c) for k, c in enumerate(self.coords) if c]
            return f"e{i}{'+' if b * a > 0 else '-'}e{j}"
        minus = [str(k + 1) for k, c in enumerate(self.coords) if c < 0]
        return "x{" + ",".join(minus) + "}"

    def __str__(self) -> str:
        return self.label


def parse_line(text: str) -> Line:
    """Parse a label produced by :attr:`Line.label` or a coordinate list.

    Accepted forms: ``e1+e2``, ``e1-e5``, ``x{}``, ``x{1,2}``,
    ``1,1,0,0,0,0,0,0``.
    """
    s = text.strip().replace(" ", "").replace("−", "-")
    if s.startswith("x{") and s.endswith("}"):
        inner = s[2:-1]
        minus = [int(t) for t in inner.split(",") if t]
        return Line.x_set(minus)
    match = _E_PAIR_RE.match(s)
    if match:
        i, op, j = match.groups()
        return Line.e_pair(int(i), int(j), 1 if op == "+" else -1)
    if s.startswith("e"):
        raise NotARootError(f"Cannot parse line label {text!r}")
    try:
        coords = tuple(int(t) for t in s.strip("()[]").split(","))
    except ValueError as exc:
        raise NotARootError(f"Cannot parse line {text!r}") from exc
    return Line(coords)
