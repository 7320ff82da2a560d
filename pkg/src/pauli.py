#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Three-leg Pauli words and the group L of signed permutations they generate.

Letters are the real 2x2 matrices I, X, Z and Y = XZ.  A word is the
Kronecker product of its three letters (leg 1 outermost) times a sign, so
every word is a signed 8x8 permutation matrix.  Elements of L are words
taken modulo sign; they are represented by PauliWord values with sign +1.
"""

import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple, Union

import numpy as np

from exact_arith import RationalMatrix
from lines import Line, NotARootError

logger = logging.getLogger(__name__)

LETTERS = "IXYZ"

_LETTER_MATRICES: Dict[str, np.ndarray] = {
    "I": np.array([[1, 0], [0, 1]], dtype=np.int64),
    "X": np.array([[0, 1], [1, 0]], dtype=np.int64),
    "Z": np.array([[1, 0], [0, -1]], dtype=np.int64),
}
_LETTER_MATRICES["Y"] = _LETTER_MATRICES["X"] @ _LETTER_MATRICES["Z"]


def _build_product_table() -> Dict[Tuple[str, str], Tuple[str, int]]:
    table = {}
    for a, b in itertools.product(LETTERS, repeat=2):
        prod = _LETTER_MATRICES[a] @ _LETTER_MATRICES[b]
        for c in LETTERS:
            for sign in (1, -1):
                if np.array_equal(prod, sign * _LETTER_MATRICES[c]):
                    table[(a, b)] = (c, sign)
    return table


# (a, b) -> (c, sign) with a.b = sign * c
_PRODUCT_TABLE = _build_product_table()

# Symplectic coordinates: letter = X^a Z^b up to sign.
_LETTER_BITS = {"I": (0, 0), "X": (1, 0), "Z": (0, 1), "Y": (1, 1)}
_BITS_LETTER = {bits: letter for letter, bits in _LETTER_BITS.items()}


@dataclass(frozen=True, order=True)
class PauliWord:
    """A signed three-letter word over {I, X, Y, Z}."""

    letters: str
    sign: int = 1

    def __post_init__(self):
        if len(self.letters) != 3 or any(c not in LETTERS for c in self.letters):
            raise ValueError(f"Invalid Pauli word letters: {self.letters!r}")
        if self.sign not in (1, -1):
            raise ValueError(f"Pauli word sign must be +1 or -1, got {self.sign!r}")

    @classmethod
    def parse(cls, text: str) -> "PauliWord":
        """Parse ``XIZ`` or ``-YYI`` (ASCII or U+2212 minus)."""
        s = text.strip()
        sign = 1
        if s[:1] in ("-", "−"):
            sign, s = -1, s[1:]
        elif s[:1] == "+":
            s = s[1:]
        return cls(s.upper(), sign)

    def unsigned(self) -> "PauliWord":
        return self if self.sign == 1 else PauliWord(self.letters, 1)

    def negate(self) -> "PauliWord":
        return PauliWord(self.letters, -self.sign)

    @property
    def is_identity(self) -> bool:
        return self.letters == "III"

    @property
    def y_count(self) -> int:
        return self.letters.count("Y")

    def __str__(self) -> str:
        return ("-" if self.sign < 0 else "") + self.letters


# Elements of L are unsigned words.
GroupElement = PauliWord

IDENTITY = PauliWord("III")
GENERATORS = tuple(PauliWord(w) for w in ("XII", "IXI", "IIX", "ZII", "IZI", "IIZ"))


def _as_word(w: Union[PauliWord, str]) -> PauliWord:
    return PauliWord.parse(w) if isinstance(w, str) else w


@lru_cache(maxsize=None)
def _unsigned_matrix(letters: str) -> np.ndarray:
    m = _LETTER_MATRICES[letters[0]]
    for c in letters[1:]:
        m = np.kron(m, _LETTER_MATRICES[c])
    m.setflags(write=False)
    return m


def signed_permutation(w: Union[PauliWord, str]) -> np.ndarray:
    """The 8x8 int64 signed permutation matrix of a word."""
    w = _as_word(w)
    m = _unsigned_matrix(w.letters)
    return m if w.sign == 1 else -m


def word_matrix(w: Union[PauliWord, str]) -> RationalMatrix:
    """Exact matrix of a word: sign times the Kronecker product of its letters."""
    return RationalMatrix.from_numpy(signed_permutation(w))


def word_mul(a: Union[PauliWord, str], b: Union[PauliWord, str]) -> PauliWord:
    """Letterwise product with exact sign tracking."""
    a, b = _as_word(a), _as_word(b)
    sign = a.sign * b.sign
    letters = []
    for x, y in zip(a.letters, b.letters):
        c, s = _PRODUCT_TABLE[(x, y)]
        letters.append(c)
        sign *= s
    return PauliWord("".join(letters), sign)


def group_mul(a: PauliWord, b: PauliWord) -> PauliWord:
    """Product in L, i.e. modulo sign."""
    return word_mul(a, b).unsigned()


def commutes(a: Union[PauliWord, str], b: Union[PauliWord, str]) -> bool:
    a, b = _as_word(a), _as_word(b)
    clashes = sum(1 for x, y in zip(a.letters, b.letters)
                  if x != "I" and y != "I" and x != y)
    return clashes % 2 == 0


@lru_cache(maxsize=1)
def _enumerate_L() -> Tuple[PauliWord, ...]:
    elements = set()
    for mask in range(1 << len(GENERATORS)):
        w = IDENTITY
        for k, g in enumerate(GENERATORS):
            if mask >> k & 1:
                w = word_mul(w, g)
        elements.add(w.unsigned())
    return tuple(sorted(elements, key=lambda e: e.letters))


def enumerate_L() -> List[PauliWord]:
    """All 64 elements of L, ordered lexicographically with I < X < Y < Z."""
    return list(_enumerate_L())


# ----------------------------------------------------------------------
# Action on lines
# ----------------------------------------------------------------------

def act_on_line(g: Union[PauliWord, str], x: Union[Line, Sequence[int]]) -> Line:
    """Canonical line of +-(word_matrix(g) . x)."""
    if not isinstance(x, Line):
        x = Line(tuple(x))
    image = signed_permutation(g) @ np.asarray(x.coords, dtype=np.int64)
    return Line(tuple(int(c) for c in image))


def transporters(y: Line, z: Line) -> List[PauliWord]:
    """Every element of L mapping y to z, in lexicographic order."""
    return [g for g in _enumerate_L() if act_on_line(g, y) == z]


def action_table(lines: Sequence[Line]) -> np.ndarray:
    """64 x len(lines) table: entry [g, v] is the index of g applied to line v."""
    index = {line: i for i, line in enumerate(lines)}
    elements = _enumerate_L()
    table = np.empty((len(elements), len(lines)), dtype=np.int64)
    coords = np.array([line.coords for line in lines], dtype=np.int64)
    for gi, g in enumerate(elements):
        images = coords @ signed_permutation(g).T
        for v, vec in enumerate(images):
            try:
                table[gi, v] = index[Line(tuple(int(c) for c in vec))]
            except (KeyError, NotARootError) as exc:
                raise ValueError(f"{g} does not permute the given lines (vertex {v})") from exc
    return table


# ----------------------------------------------------------------------
# Symplectic form
# ----------------------------------------------------------------------

def word_to_bits(w: Union[PauliWord, str]) -> Tuple[int, ...]:
    """Six bits (a1, b1, a2, b2, a3, b3) with leg k equal to X^ak Z^bk."""
    w = _as_word(w)
    return tuple(bit for c in w.letters for bit in _LETTER_BITS[c])


def bits_to_word(bits: Sequence[int]) -> PauliWord:
    if len(bits) != 6:
        raise ValueError(f"Expected 6 bits, got {len(bits)}")
    return PauliWord("".join(_BITS_LETTER[(bits[2 * k] & 1, bits[2 * k + 1] & 1)] for k in range(3)))


def quadratic_form(bits: Sequence[int]) -> int:
    """Q(z) = z1 z2 + z3 z4 + z5 z6 over F2; equals the Y count mod 2."""
    return (bits[0] * bits[1] + bits[2] * bits[3] + bits[4] * bits[5]) & 1


def polar_form(x: Sequence[int], v: Sequence[int]) -> int:
    """q(x, v) = Q(x + v) + Q(x) + Q(v) over F2."""
    s = [(a + b) & 1 for a, b in zip(x, v)]
    return (quadratic_form(s) + quadratic_form(x) + quadratic_form(v)) & 1


def transvection(v: Sequence[int]):
    """The map t_v(x) = x + q(x, v) v on F2^6."""
    v = tuple(int(b) & 1 for b in v)

    def t(x: Sequence[int]) -> Tuple[int, ...]:
        if polar_form(x, v):
            return tuple((a + b) & 1 for a, b in zip(x, v))
        return tuple(int(a) & 1 for a in x)

    return t
