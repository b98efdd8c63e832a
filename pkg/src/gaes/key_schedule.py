"""128-bit key expansion into 11 round keys.

A round key is 16 bytes laid out as four consecutive 4-byte words (the
column-major state order used throughout the cipher). Each expansion round
rotates the previous last word up by one byte, substitutes it, folds in
the round constant x^(r-1), then XOR-chains across the four words.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import gf256

NUM_ROUNDS = 10
KEY_BYTES = 16


@dataclass(frozen=True)
class KeySchedule:
    """11 rows of 16 bytes; row 0 is the raw key."""

    rounds: tuple

    def __post_init__(self):
        if len(self.rounds) != NUM_ROUNDS + 1:
            raise ValueError("schedule must have 11 rows")
        for row in self.rounds:
            if len(row) != KEY_BYTES:
                raise ValueError("round keys are 16 bytes")

    def to_array(self) -> np.ndarray:
        return np.frombuffer(b"".join(self.rounds), dtype=np.uint8).reshape(
            NUM_ROUNDS + 1, KEY_BYTES
        )


def round_constants() -> bytes:
    """First-byte constants for rounds 1..10: x^(r-1) in the field."""
    return bytes(gf256.gf_pow(0x02, r - 1) for r in range(1, NUM_ROUNDS + 1))


def _xor4(a: bytes, b: bytes) -> bytes:
    return bytes(x ^ y for x, y in zip(a, b))


def gen_keys(key: bytes, sbox: Sequence[int]) -> KeySchedule:
    """Expand a 16-byte key using the given forward substitution table."""
    key = bytes(key)
    if len(key) != KEY_BYTES:
        raise ValueError(f"key must be {KEY_BYTES} bytes, got {len(key)}")
    if len(sbox) != 256:
        raise ValueError("substitution table must have 256 entries")
    rcon = round_constants()
    rows = [key]
    for r in range(1, NUM_ROUNDS + 1):
        prev = rows[-1]
        # rotate the last word up by one, substitute, add round constant
        temp = prev[13:16] + prev[12:13]
        temp = bytes(sbox[v] for v in temp)
        temp = bytes([temp[0] ^ rcon[r - 1]]) + temp[1:]
        w0 = _xor4(prev[0:4], temp)
        w1 = _xor4(prev[4:8], w0)
        w2 = _xor4(prev[8:12], w1)
        w3 = _xor4(prev[12:16], w2)
        rows.append(w0 + w1 + w2 + w3)
    return KeySchedule(rounds=tuple(rows))
