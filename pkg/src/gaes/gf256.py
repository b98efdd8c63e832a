"""GF(2^8) arithmetic under the AES reduction polynomial 0x11B.

Bytes are treated as polynomials over GF(2): bit i is the coefficient of
x^i. Everything downstream (substitution tables, key expansion, column
mixing) is built on these operations, so they stay deliberately plain:
shift-and-XOR multiply, fold-based powers, no hardware intrinsics.

The modulus is fixed. This module intentionally offers no generic
GF(2^m) parameterization.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

# x^8 + x^4 + x^3 + x + 1, binary 1_0001_1011
REDUCTION_POLY = 0x11B

BitVec8 = tuple  # 8 bits, MSB first: index 0 is the x^7 coefficient
BitMatrix8 = tuple  # 8 rows of BitVec8


def _check_byte(v: int) -> int:
    if not 0 <= v <= 0xFF:
        raise ValueError(f"not a field element: {v!r}")
    return v


def gf_add(a: int, b: int) -> int:
    """Field addition: XOR of coefficient vectors (also subtraction)."""
    return _check_byte(a) ^ _check_byte(b)


def gf_mul(a: int, b: int) -> int:
    """Field multiplication: shift-and-XOR with interleaved reduction."""
    _check_byte(a)
    _check_byte(b)
    acc = 0
    while b:
        if b & 1:
            acc ^= a
        a <<= 1
        if a & 0x100:
            a ^= REDUCTION_POLY
        b >>= 1
    return acc


def gf_pow(a: int, e: int) -> int:
    """a raised to a non-negative integer power by repeated gf_mul."""
    _check_byte(a)
    if e < 0:
        raise ValueError("negative exponent")
    if a == 0 and e == 0:
        raise ValueError("0**0 is undefined in the field")
    acc = 1
    for _ in range(e):
        acc = gf_mul(acc, a)
    return acc


def gf_inv(a: int) -> int:
    """Multiplicative inverse, with gf_inv(0) = 0 by convention.

    The zero convention is load-bearing: the substitution-table builder
    maps 0 through "inversion" unchanged and relies on it.
    """
    _check_byte(a)
    if a == 0:
        return 0
    return gf_pow(a, 254)


def bits_of_byte(a: int) -> BitVec8:
    """Decompose a byte MSB first (index 0 = x^7 coefficient)."""
    _check_byte(a)
    return tuple((a >> (7 - i)) & 1 for i in range(8))


def byte_of_bits(bits: Sequence[int]) -> int:
    """Recompose an MSB-first bit vector into a byte."""
    if len(bits) != 8:
        raise ValueError("need exactly 8 bits")
    acc = 0
    for bit in bits:
        if bit not in (0, 1):
            raise ValueError(f"not a bit: {bit!r}")
        acc = (acc << 1) | bit
    return acc


def bit_circulant(row: Sequence[int]) -> BitMatrix8:
    """8x8 GF(2) circulant: row r is row r-1 cyclically shifted right."""
    if len(row) != 8:
        raise ValueError("need exactly 8 bits")
    rows = [tuple(row)]
    for _ in range(7):
        prev = rows[-1]
        rows.append((prev[-1],) + prev[:-1])
    return tuple(rows)


def gf2_affine(a: BitMatrix8, y: BitVec8, b: BitVec8) -> BitVec8:
    """Affine map over GF(2): z_i = (XOR_j a[i][j] & y[j]) ^ b[i]."""
    out = []
    for row, const in zip(a, b):
        acc = const
        for coeff, bit in zip(row, y):
            acc ^= coeff & bit
        out.append(acc)
    return tuple(out)


@dataclass(frozen=True)
class GFMatrix:
    """Row-major matrix of field elements."""

    rows: int
    cols: int
    data: tuple

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise ValueError("empty matrix")
        if len(self.data) != self.rows * self.cols:
            raise ValueError("data length does not match dimensions")
        for v in self.data:
            _check_byte(v)

    def at(self, r: int, c: int) -> int:
        return self.data[r * self.cols + c]

    def row(self, r: int) -> tuple:
        return self.data[r * self.cols:(r + 1) * self.cols]

    def to_array(self) -> np.ndarray:
        return np.array(self.data, dtype=np.uint8).reshape(self.rows, self.cols)


def gf_matmul(a: GFMatrix, b: GFMatrix) -> GFMatrix:
    """Matrix product with gf_mul/gf_add as scalar multiply/add."""
    if a.cols != b.rows:
        raise ValueError(f"dimension mismatch: {a.rows}x{a.cols} times {b.rows}x{b.cols}")
    out = []
    for i in range(a.rows):
        for j in range(b.cols):
            acc = 0
            for k in range(a.cols):
                acc ^= gf_mul(a.at(i, k), b.at(k, j))
            out.append(acc)
    return GFMatrix(a.rows, b.cols, tuple(out))


def circulant(row: Sequence[int]) -> GFMatrix:
    """Square circulant: row r is row r-1 cyclically shifted right."""
    n = len(row)
    rows = [tuple(row)]
    for _ in range(n - 1):
        prev = rows[-1]
        rows.append((prev[-1],) + prev[:-1])
    return GFMatrix(n, n, tuple(v for r in rows for v in r))


def identity(n: int) -> GFMatrix:
    return GFMatrix(n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))


@lru_cache(maxsize=None)
def mul_row(c: int) -> np.ndarray:
    """256-entry lookup row for multiplication by the constant c.

    Generated from gf_mul so the fast paths inherit the ground-truth
    semantics; returned read-only because callers share it.
    """
    row = np.array([gf_mul(c, x) for x in range(256)], dtype=np.uint8)
    row.setflags(write=False)
    return row


@lru_cache(maxsize=1)
def mul_table() -> np.ndarray:
    """Full 256x256 product table, generated from gf_mul. Read-only."""
    table = np.stack([mul_row(c) for c in range(256)])
    table.setflags(write=False)
    return table
