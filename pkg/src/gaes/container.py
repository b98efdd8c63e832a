"""Bit-exact on-disk ciphertext container.

Layout (all integers big-endian):

    offset  size  field
    0       4     magic "GAES"
    4       1     version (0x01)
    5       1     mode (0x01 = CBC)
    6       1     IV mode (0x00 shared, 0x01 per-message)
    7       1     reserved (0x00)
    8       4     message count N
    12      4     padded message width M (multiple of 16)
    16      ...   IV block: 16 bytes if shared, else N x 16
    ...     4N    original message lengths
    ...     NxM   ciphertext payload, row-major

Total size is exactly 16 + iv block + 4N + N*M; readers verify it. IVs are
stored in the clear (standard practice: IVs are not secret).
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

import numpy as np

from .aes_cbc import BLOCK_BYTES, IV_PER_MESSAGE, IV_SHARED, IVSet

MAGIC = b"GAES"
VERSION = 0x01
MODE_CBC = 0x01
_IV_MODE_CODE = {IV_SHARED: 0x00, IV_PER_MESSAGE: 0x01}
_IV_MODE_NAME = {code: name for name, code in _IV_MODE_CODE.items()}

_HEADER = struct.Struct(">4sBBBBII")


class ContainerError(Exception):
    """Malformed or truncated container data."""


@dataclass(frozen=True)
class CipherContainer:
    """Ciphertext grid plus the IVs and lengths needed to invert it."""

    iv_set: IVSet
    original_lens: tuple
    payload: np.ndarray

    def __post_init__(self):
        payload = np.ascontiguousarray(self.payload, dtype=np.uint8)
        object.__setattr__(self, "payload", payload)
        object.__setattr__(self, "original_lens", tuple(self.original_lens))
        if payload.ndim != 2 or payload.shape[0] == 0:
            raise ValueError("payload must be a non-empty 2-D grid")
        n, m = payload.shape
        if m % BLOCK_BYTES != 0 or m == 0:
            raise ValueError("payload width must be a multiple of 16")
        if len(self.original_lens) != n:
            raise ValueError("one length per message required")
        if any(not 0 < v <= m for v in self.original_lens):
            raise ValueError("lengths must be in 1..padded width")
        self.iv_set.rows(n)  # raises on count mismatch

    @property
    def n_messages(self) -> int:
        return self.payload.shape[0]

    @property
    def padded_len(self) -> int:
        return self.payload.shape[1]


def container_bytes(container: CipherContainer) -> bytes:
    """Serialize to the exact wire format."""
    n, m = container.payload.shape
    ivm = _IV_MODE_CODE[container.iv_set.mode]
    header = _HEADER.pack(MAGIC, VERSION, MODE_CBC, ivm, 0x00, n, m)
    if container.iv_set.mode == IV_SHARED:
        iv_block = container.iv_set.data.tobytes()
    else:
        iv_block = container.iv_set.rows(n).tobytes()
    lengths = b"".join(struct.pack(">I", v) for v in container.original_lens)
    return header + iv_block + lengths + container.payload.tobytes()


def parse_container(raw: bytes) -> CipherContainer:
    """Parse and validate; any structural problem raises ContainerError."""
    if len(raw) < _HEADER.size:
        raise ContainerError("truncated header")
    magic, version, mode, ivm, reserved, n, m = _HEADER.unpack_from(raw)
    if magic != MAGIC:
        raise ContainerError(f"bad magic {magic!r}")
    if version != VERSION:
        raise ContainerError(f"unsupported version {version}")
    if mode != MODE_CBC:
        raise ContainerError(f"unsupported mode {mode}")
    if ivm not in _IV_MODE_NAME:
        raise ContainerError(f"unknown IV mode {ivm}")
    if reserved != 0:
        raise ContainerError("nonzero reserved byte")
    if n == 0:
        raise ContainerError("empty container")
    if m % BLOCK_BYTES != 0 or m == 0:
        raise ContainerError(f"padded width {m} is not a multiple of 16")
    iv_size = BLOCK_BYTES if ivm == 0x00 else BLOCK_BYTES * n
    expected = _HEADER.size + iv_size + 4 * n + n * m
    if len(raw) != expected:
        raise ContainerError(
            f"size mismatch: file is {len(raw)} bytes, format requires {expected}"
        )
    pos = _HEADER.size
    if ivm == 0x00:
        iv_set = IVSet.shared(raw[pos:pos + BLOCK_BYTES])
    else:
        grid = np.frombuffer(raw, dtype=np.uint8, count=n * BLOCK_BYTES, offset=pos)
        iv_set = IVSet.per_message(grid.reshape(n, BLOCK_BYTES).copy())
    pos += iv_size
    lens = struct.unpack_from(f">{n}I", raw, pos)
    pos += 4 * n
    if any(not 0 < v <= m for v in lens):
        raise ContainerError("length field out of range")
    payload = np.frombuffer(raw, dtype=np.uint8, offset=pos).reshape(n, m).copy()
    return CipherContainer(iv_set=iv_set, original_lens=lens, payload=payload)


def write_container(path, container: CipherContainer) -> int:
    data = container_bytes(container)
    with open(path, "wb") as fh:
        fh.write(data)
    return len(data)


def read_container(path) -> CipherContainer:
    with open(path, "rb") as fh:
        return parse_container(fh.read())
