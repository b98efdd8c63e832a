"""Substitution tables generated from field inversion plus affine maps.

Nothing here is hard-coded: both the forward and the inverse table come
out of gf256 primitives at run time. The two tables are produced by
independent constructions (forward: invert then affine; inverse: inverse
affine then invert), which makes their agreement a free integrity check.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import gf256

FORWARD_AFFINE_ROW = (1, 1, 1, 1, 1, 0, 0, 0)
FORWARD_AFFINE_CONST = 0x63
INVERSE_AFFINE_ROW = (0, 1, 0, 1, 0, 0, 1, 0)
INVERSE_AFFINE_CONST = 0x05


def gen_sbox() -> bytes:
    """Forward table: v -> affine(inverse(v)), 256 entries.

    gf_inv(0) = 0 makes entry 0 come out as the affine constant 0x63
    with no special casing.
    """
    a = gf256.bit_circulant(FORWARD_AFFINE_ROW)
    b = gf256.bits_of_byte(FORWARD_AFFINE_CONST)
    out = bytearray(256)
    for v in range(256):
        y = gf256.bits_of_byte(gf256.gf_inv(v))
        out[v] = gf256.byte_of_bits(gf256.gf2_affine(a, y, b))
    return bytes(out)


def gen_sbox_inv() -> bytes:
    """Inverse table: v -> inverse(inverse_affine(v)), 256 entries.

    Exactly one input has affine image zero (it lands on output 0 via the
    gf_inv(0) = 0 convention); anything else signals a broken affine layer.
    """
    a = gf256.bit_circulant(INVERSE_AFFINE_ROW)
    b = gf256.bits_of_byte(INVERSE_AFFINE_CONST)
    out = bytearray(256)
    zero_slots = []
    for v in range(256):
        y = gf256.bits_of_byte(v)
        w = gf256.byte_of_bits(gf256.gf2_affine(a, y, b))
        if w == 0:
            zero_slots.append(v)
        out[v] = gf256.gf_inv(w)
    if len(zero_slots) != 1:
        raise ValueError(f"inverse affine map has {len(zero_slots)} zero slots, expected 1")
    return bytes(out)


@dataclass(frozen=True)
class SBoxPair:
    """Forward and inverse substitution tables, cross-checked at build."""

    forward: bytes
    inverse: bytes


def build_sbox_pair() -> SBoxPair:
    """Generate both tables and verify they invert each other.

    A mismatch means the field or affine layer is broken, so construction
    fails rather than handing out bad tables.
    """
    forward = gen_sbox()
    inverse = gen_sbox_inv()
    for i in range(256):
        if inverse[forward[i]] != i:
            raise ValueError(
                f"substitution tables are not mutual inverses at input {i:#04x}"
            )
    return SBoxPair(forward=forward, inverse=inverse)


@lru_cache(maxsize=1)
def default_pair() -> SBoxPair:
    """Process-wide pair; generation is deterministic so caching is safe."""
    return build_sbox_pair()
