"""Deterministic data-parallel batch encryption across a thread pool.

Messages are independent under CBC (the chain never crosses rows), so the
batch is split into balanced contiguous row ranges and each worker runs
the full chain for its rows only. Workers get read-only views of the
tables and exclusive row ranges of the output, so no locks are needed and
the ciphertext is byte-identical for every worker count.

Worker count resolution: explicit argument, else GAES_WORKERS, else the
detected CPU count.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import backend
from .aes_cbc import IVSet, MessageBatch, _decrypt_tables, _encrypt_tables


@dataclass(frozen=True)
class ParallelPlan:
    """Balanced contiguous partition of [0, N) into at most `workers` chunks."""

    workers: int
    chunks: tuple

    def __post_init__(self):
        if self.workers < 1:
            raise ValueError("need at least one worker")


def plan(n_messages: int, workers: int) -> ParallelPlan:
    """Split rows into contiguous chunks whose sizes differ by at most 1."""
    if workers < 1:
        raise ValueError("need at least one worker")
    if n_messages < 0:
        raise ValueError("negative message count")
    used = min(workers, n_messages)
    chunks = []
    start = 0
    for i in range(used):
        size = n_messages // used + (1 if i < n_messages % used else 0)
        chunks.append((start, start + size))
        start += size
    return ParallelPlan(workers=workers, chunks=tuple(chunks))


def default_workers() -> int:
    env = os.environ.get("GAES_WORKERS")
    if env:
        try:
            value = int(env)
        except ValueError:
            raise ValueError(f"GAES_WORKERS is not an integer: {env!r}")
        if value < 1:
            raise ValueError(f"GAES_WORKERS must be positive: {value}")
        return value
    return os.cpu_count() or 1


def _run_chunks(kernel, tables, data, iv_rows, out, chunks):
    if len(chunks) <= 1:
        kernel(data, iv_rows, *tables, out)
        return
    def work(lo, hi):
        kernel(data[lo:hi], iv_rows[lo:hi], *tables, out[lo:hi])
    with ThreadPoolExecutor(max_workers=len(chunks)) as pool:
        futures = [pool.submit(work, lo, hi) for lo, hi in chunks]
        for f in futures:
            f.result()  # re-raises any chunk failure; out is then discarded


def encrypt_batch_parallel(key: bytes, ivs: IVSet, batch: MessageBatch,
                           workers: int | None = None) -> np.ndarray:
    """Same bytes as encrypt_batch for every worker count."""
    if workers is None:
        workers = default_workers()
    p = plan(batch.n_messages, workers)
    tables = _encrypt_tables(key)
    data = np.ascontiguousarray(batch.data)
    iv_rows = ivs.rows(batch.n_messages)
    out = np.empty_like(data)
    _run_chunks(backend.cbc_encrypt, tables, data, iv_rows, out, p.chunks)
    return out


def decrypt_batch_parallel(key: bytes, ivs: IVSet, ct,
                           workers: int | None = None) -> np.ndarray:
    """Same bytes as decrypt_batch for every worker count."""
    if workers is None:
        workers = default_workers()
    data = np.ascontiguousarray(ct, dtype=np.uint8)
    if data.ndim != 2 or data.shape[1] % 16 != 0 or data.shape[1] == 0:
        raise ValueError("ciphertext width must be a positive multiple of 16")
    p = plan(data.shape[0], workers)
    tables = _decrypt_tables(key)
    iv_rows = ivs.rows(data.shape[0])
    out = np.empty_like(data)
    _run_chunks(backend.cbc_decrypt, tables, data, iv_rows, out, p.chunks)
    return out
