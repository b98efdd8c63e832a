"""Batch AES-128-CBC over message grids, plus the scalar reference path.

A batch is an N x M byte grid, one zero-padded message per row. The
cipher state for all N messages lives in an N x 16 slab: byte 4c + r of a
row holds state cell (row r, column c). Encryption walks the grid one
16-byte block column at a time, carrying the CBC chain per row, and every
round step acts on the whole slab at once. The hot loop is delegated to
the selected kernel backend; the slab operations defined here are the
reference forms the kernels must match.

The scalar per-block functions are the same cipher without vectorization.
They serve as the equivalence oracle for the batch path and as the
benchmark baseline.

Padding is zero-fill to the block boundary; original lengths travel
out-of-band because zero padding is not self-delimiting.
"""

from __future__ import annotations

from collections import namedtuple
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from . import backend, gf256, sbox_gen
from .key_schedule import KeySchedule, gen_keys
from .sbox_gen import SBoxPair

BLOCK_BYTES = 16

# first rows of the circulant column-mix matrices
MIX_FORWARD_ROW = (2, 3, 1, 1)
MIX_INVERSE_ROW = (14, 11, 13, 9)

# Row permutations as full 16-entry source lists: output byte p takes input
# byte SRC[p]. Bytes 0, 4, 8, 12 (state row 0) stay put; state row r
# rotates left by r columns.
SHIFT_ROWS_SRC = (0, 5, 10, 15, 4, 9, 14, 3, 8, 13, 2, 7, 12, 1, 6, 11)
INV_SHIFT_ROWS_SRC = (0, 13, 10, 7, 4, 1, 14, 11, 8, 5, 2, 15, 12, 9, 6, 3)


@dataclass(frozen=True)
class MessageBatch:
    """N messages as an N x M uint8 grid plus their pre-padding lengths."""

    data: np.ndarray
    original_lens: tuple

    def __post_init__(self):
        data = np.asarray(self.data, dtype=np.uint8)
        object.__setattr__(self, "data", data)
        object.__setattr__(self, "original_lens", tuple(self.original_lens))
        if data.ndim != 2 or data.shape[0] == 0:
            raise ValueError("batch must be a non-empty 2-D grid")
        n, m = data.shape
        if m % BLOCK_BYTES != 0 or m < BLOCK_BYTES:
            raise ValueError(f"padded width must be a positive multiple of {BLOCK_BYTES}")
        if len(self.original_lens) != n:
            raise ValueError("one original length per message required")
        for i, length in enumerate(self.original_lens):
            if not 0 < length <= m:
                raise ValueError(f"message {i} has invalid length {length}")
            if data[i, length:].any():
                raise ValueError(f"message {i} has nonzero padding bytes")

    @property
    def n_messages(self) -> int:
        return self.data.shape[0]

    @property
    def padded_len(self) -> int:
        return self.data.shape[1]


IV_SHARED = "shared"
IV_PER_MESSAGE = "per-message"


@dataclass(frozen=True)
class IVSet:
    """One shared 16-byte IV broadcast to every row, or one IV per row."""

    mode: str
    data: np.ndarray

    @classmethod
    def shared(cls, iv: bytes) -> "IVSet":
        iv = bytes(iv)
        if len(iv) != BLOCK_BYTES:
            raise ValueError("IV must be 16 bytes")
        return cls(IV_SHARED, np.frombuffer(iv, dtype=np.uint8))

    @classmethod
    def per_message(cls, ivs) -> "IVSet":
        if isinstance(ivs, np.ndarray):
            arr = np.ascontiguousarray(ivs, dtype=np.uint8)
        else:
            arr = np.frombuffer(b"".join(bytes(iv) for iv in ivs), dtype=np.uint8)
            arr = arr.reshape(len(ivs), -1)
        if arr.ndim != 2 or arr.shape[1] != BLOCK_BYTES or arr.shape[0] == 0:
            raise ValueError("per-message IVs must form an N x 16 grid")
        return cls(IV_PER_MESSAGE, arr)

    def rows(self, n: int) -> np.ndarray:
        """Expand to a contiguous (n, 16) grid, checking the count."""
        if self.mode == IV_SHARED:
            return np.tile(self.data, (n, 1))
        if self.data.shape[0] != n:
            raise ValueError(
                f"IV count mismatch: {self.data.shape[0]} IVs for {n} messages"
            )
        return np.ascontiguousarray(self.data)


@dataclass(frozen=True)
class MixMatrices:
    """The forward/inverse circulant pair used by the column-mix step."""

    forward: gf256.GFMatrix
    inverse: gf256.GFMatrix


@lru_cache(maxsize=1)
def mix_matrices() -> MixMatrices:
    forward = gf256.circulant(MIX_FORWARD_ROW)
    inverse = gf256.circulant(MIX_INVERSE_ROW)
    if gf256.gf_matmul(forward, inverse) != gf256.identity(4):
        raise ValueError("mix matrices are not mutual inverses")
    return MixMatrices(forward=forward, inverse=inverse)


def pad_zero(messages: Sequence[bytes]) -> MessageBatch:
    """Zero-pad messages to one common width, a multiple of 16 bytes."""
    if len(messages) == 0:
        raise ValueError("empty batch")
    lens = []
    for i, msg in enumerate(messages):
        if len(msg) == 0:
            raise ValueError(f"message {i} is empty")
        lens.append(len(msg))
    width = BLOCK_BYTES * ((max(lens) + BLOCK_BYTES - 1) // BLOCK_BYTES)
    data = np.zeros((len(messages), width), dtype=np.uint8)
    for i, msg in enumerate(messages):
        data[i, : lens[i]] = np.frombuffer(bytes(msg), dtype=np.uint8)
    return MessageBatch(data=data, original_lens=tuple(lens))


# --- slab operations -------------------------------------------------------

def _as_slab(slab) -> np.ndarray:
    arr = np.asarray(slab, dtype=np.uint8)
    if arr.ndim != 2 or arr.shape[1] != BLOCK_BYTES:
        raise ValueError("slab must be an N x 16 grid")
    return arr


def _as_table(table) -> np.ndarray:
    arr = np.frombuffer(table, dtype=np.uint8) if isinstance(table, (bytes, bytearray)) \
        else np.asarray(table, dtype=np.uint8)
    if arr.shape != (256,):
        raise ValueError("substitution table must have 256 entries")
    return arr


def sub_bytes(slab, table) -> np.ndarray:
    """Replace every slab byte through the 256-entry table."""
    return _as_table(table)[_as_slab(slab)]


def shift_rows(slab) -> np.ndarray:
    return _as_slab(slab)[:, list(SHIFT_ROWS_SRC)]


def inv_shift_rows(slab) -> np.ndarray:
    return _as_slab(slab)[:, list(INV_SHIFT_ROWS_SRC)]


def mix_columns(slab, m) -> np.ndarray:
    """Multiply each 4-byte column group of each row by the 4x4 matrix m."""
    matrix = m.to_array() if isinstance(m, gf256.GFMatrix) else np.asarray(m, dtype=np.uint8)
    if matrix.shape != (4, 4):
        raise ValueError("mix matrix must be 4x4")
    slab = _as_slab(slab)
    lut = _mix_lut(tuple(int(v) for v in matrix.ravel()))
    cols = slab.reshape(slab.shape[0], 4, 4)
    out = np.empty_like(cols)
    for r in range(4):
        acc = lut[r, 0][cols[:, :, 0]]
        acc ^= lut[r, 1][cols[:, :, 1]]
        acc ^= lut[r, 2][cols[:, :, 2]]
        acc ^= lut[r, 3][cols[:, :, 3]]
        out[:, :, r] = acc
    return out.reshape(slab.shape)


def add_round_key(slab, round_key) -> np.ndarray:
    """XOR one 16-byte round key into every row."""
    rk = np.frombuffer(bytes(round_key), dtype=np.uint8)
    if rk.shape != (BLOCK_BYTES,):
        raise ValueError("round key must be 16 bytes")
    return _as_slab(slab) ^ rk


@lru_cache(maxsize=None)
def _mix_lut(flat_matrix: tuple) -> np.ndarray:
    # (4, 4, 256): entry [r, j] is the multiply-by-m[r][j] lookup row
    lut = np.stack(
        [np.stack([gf256.mul_row(flat_matrix[4 * r + j]) for j in range(4)]) for r in range(4)]
    )
    lut.setflags(write=False)
    return lut


@lru_cache(maxsize=None)
def _scalar_mix_rows(first_row: tuple) -> tuple:
    matrix = gf256.circulant(first_row)
    return tuple(
        tuple(gf256.mul_row(matrix.at(r, j)).tolist() for j in range(4)) for r in range(4)
    )


# --- scalar reference path -------------------------------------------------

def encrypt_block_scalar(key_schedule: KeySchedule, boxes: SBoxPair, block: bytes) -> bytes:
    """One 16-byte block through the 10 rounds, no chaining."""
    if len(block) != BLOCK_BYTES:
        raise ValueError("block must be 16 bytes")
    rows = key_schedule.rounds
    fwd = boxes.forward
    lut = _scalar_mix_rows(MIX_FORWARD_ROW)
    s = [b ^ k for b, k in zip(block, rows[0])]
    for r in range(1, 11):
        s = [fwd[v] for v in s]
        s = [s[p] for p in SHIFT_ROWS_SRC]
        if r < 10:
            ns = [0] * 16
            for c in (0, 4, 8, 12):
                b0, b1, b2, b3 = s[c], s[c + 1], s[c + 2], s[c + 3]
                ns[c] = lut[0][0][b0] ^ lut[0][1][b1] ^ lut[0][2][b2] ^ lut[0][3][b3]
                ns[c + 1] = lut[1][0][b0] ^ lut[1][1][b1] ^ lut[1][2][b2] ^ lut[1][3][b3]
                ns[c + 2] = lut[2][0][b0] ^ lut[2][1][b1] ^ lut[2][2][b2] ^ lut[2][3][b3]
                ns[c + 3] = lut[3][0][b0] ^ lut[3][1][b1] ^ lut[3][2][b2] ^ lut[3][3][b3]
            s = ns
        s = [v ^ k for v, k in zip(s, rows[r])]
    return bytes(s)


def decrypt_block_scalar(key_schedule: KeySchedule, boxes: SBoxPair, block: bytes) -> bytes:
    """Inverse of encrypt_block_scalar."""
    if len(block) != BLOCK_BYTES:
        raise ValueError("block must be 16 bytes")
    rows = key_schedule.rounds
    inv = boxes.inverse
    lut = _scalar_mix_rows(MIX_INVERSE_ROW)
    s = list(block)
    for r in range(10, 0, -1):
        s = [v ^ k for v, k in zip(s, rows[r])]
        if r < 10:
            ns = [0] * 16
            for c in (0, 4, 8, 12):
                b0, b1, b2, b3 = s[c], s[c + 1], s[c + 2], s[c + 3]
                ns[c] = lut[0][0][b0] ^ lut[0][1][b1] ^ lut[0][2][b2] ^ lut[0][3][b3]
                ns[c + 1] = lut[1][0][b0] ^ lut[1][1][b1] ^ lut[1][2][b2] ^ lut[1][3][b3]
                ns[c + 2] = lut[2][0][b0] ^ lut[2][1][b1] ^ lut[2][2][b2] ^ lut[2][3][b3]
                ns[c + 3] = lut[3][0][b0] ^ lut[3][1][b1] ^ lut[3][2][b2] ^ lut[3][3][b3]
            s = ns
        s = [s[p] for p in INV_SHIFT_ROWS_SRC]
        s = [inv[v] for v in s]
    s = [v ^ k for v, k in zip(s, rows[0])]
    return bytes(s)


def encrypt_rows_scalar(key_schedule, boxes, iv_rows, data) -> np.ndarray:
    """Per-row CBC chain over the scalar block path (benchmark baseline)."""
    data = np.asarray(data, dtype=np.uint8)
    n, m = data.shape
    out = np.empty_like(data)
    for i in range(n):
        chain = bytes(iv_rows[i])
        row = data[i].tobytes()
        pieces = []
        for b in range(0, m, BLOCK_BYTES):
            block = bytes(x ^ y for x, y in zip(row[b:b + BLOCK_BYTES], chain))
            chain = encrypt_block_scalar(key_schedule, boxes, block)
            pieces.append(chain)
        out[i] = np.frombuffer(b"".join(pieces), dtype=np.uint8)
    return out


def decrypt_rows_scalar(key_schedule, boxes, iv_rows, data) -> np.ndarray:
    """Per-row CBC decryption over the scalar block path."""
    data = np.asarray(data, dtype=np.uint8)
    n, m = data.shape
    out = np.empty_like(data)
    for i in range(n):
        chain = bytes(iv_rows[i])
        row = data[i].tobytes()
        pieces = []
        for b in range(0, m, BLOCK_BYTES):
            ct_block = row[b:b + BLOCK_BYTES]
            plain = decrypt_block_scalar(key_schedule, boxes, ct_block)
            pieces.append(bytes(x ^ y for x, y in zip(plain, chain)))
            chain = ct_block
        out[i] = np.frombuffer(b"".join(pieces), dtype=np.uint8)
    return out


# --- batch path ------------------------------------------------------------

CipherTables = namedtuple("CipherTables", "round_keys subst mix_lut perm")


@lru_cache(maxsize=1)
def _shared_arrays() -> dict:
    pair = sbox_gen.default_pair()
    arrays = {
        "forward": np.frombuffer(pair.forward, dtype=np.uint8),
        "inverse": np.frombuffer(pair.inverse, dtype=np.uint8),
        "shift": np.array(SHIFT_ROWS_SRC, dtype=np.uint8),
        "inv_shift": np.array(INV_SHIFT_ROWS_SRC, dtype=np.uint8),
    }
    mm = mix_matrices()
    arrays["mix_fwd"] = _mix_lut(tuple(mm.forward.data))
    arrays["mix_inv"] = _mix_lut(tuple(mm.inverse.data))
    for arr in arrays.values():
        arr.setflags(write=False)
    return arrays


def _encrypt_tables(key: bytes) -> CipherTables:
    shared = _shared_arrays()
    schedule = gen_keys(key, sbox_gen.default_pair().forward)
    return CipherTables(schedule.to_array(), shared["forward"], shared["mix_fwd"], shared["shift"])


def _decrypt_tables(key: bytes) -> CipherTables:
    shared = _shared_arrays()
    schedule = gen_keys(key, sbox_gen.default_pair().forward)
    return CipherTables(schedule.to_array(), shared["inverse"], shared["mix_inv"], shared["inv_shift"])


def encrypt_batch(key: bytes, ivs: IVSet, batch: MessageBatch) -> np.ndarray:
    """Encrypt every row of the batch; returns the N x M ciphertext grid.

    Byte-identical to running the scalar CBC per row: the vectorization is
    purely a layout change.
    """
    tables = _encrypt_tables(key)
    data = np.ascontiguousarray(batch.data)
    iv_rows = ivs.rows(batch.n_messages)
    out = np.empty_like(data)
    backend.cbc_encrypt(data, iv_rows, *tables, out)
    return out


def decrypt_batch(key: bytes, ivs: IVSet, ct) -> np.ndarray:
    """Decrypt an N x M ciphertext grid back to the zero-padded plaintext."""
    data = np.ascontiguousarray(ct, dtype=np.uint8)
    if data.ndim != 2 or data.shape[1] % BLOCK_BYTES != 0 or data.shape[1] == 0:
        raise ValueError(f"ciphertext width must be a positive multiple of {BLOCK_BYTES}")
    tables = _decrypt_tables(key)
    iv_rows = ivs.rows(data.shape[0])
    out = np.empty_like(data)
    backend.cbc_decrypt(data, iv_rows, *tables, out)
    return out
