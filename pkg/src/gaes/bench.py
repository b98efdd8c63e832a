"""Throughput measurement: count sweeps, length sweeps, worker sweeps.

Every sweep starts by running the known-answer suite and aborts if any
check fails; there is no point timing a broken cipher. Workloads use
seeded random plaintexts with one fixed random key/IV per run. Each point
reports the median over the configured repetitions, warmup excluded, and
regions shorter than 10 ms are stretched by batching calls so the clock
granularity cannot dominate.

Records serialize to a fixed-column CSV for downstream plotting.
"""

from __future__ import annotations

import sys
import time
from dataclasses import dataclass, field
from statistics import median

import numpy as np

from . import aes_cbc, parallel, selftest
from .aes_cbc import IVSet, MessageBatch
from .key_schedule import gen_keys
from .sbox_gen import default_pair

VECTORIZED = "vectorized"
SCALAR_BASELINE = "scalar-baseline"

MIN_REGION_SECONDS = 0.010
_MAX_CALLS = 1_000_000

CSV_HEADER = (
    "kind,implementation,n_messages,message_len_bytes,workers,"
    "total_bytes,median_seconds,rate_bytes_per_second"
)


@dataclass
class SweepConfig:
    sweep_kind: str = "count"  # count | length | workers
    message_len: int = 16
    message_counts: tuple = (1, 10, 100, 1000, 10000)
    lengths: tuple = (16, 64, 256, 1024)
    worker_counts: tuple = (1, 2, 4, 8)
    n_messages: int = 128  # fixed count for the length sweep
    repetitions: int = 5
    warmup: int = 1
    seed: int = 2016
    implementation: str = VECTORIZED
    workers: int = 1

    def __post_init__(self):
        if self.repetitions < 3:
            raise ValueError("need at least 3 repetitions")
        if self.warmup < 0:
            raise ValueError("negative warmup")
        for name in ("message_counts", "lengths", "worker_counts"):
            values = getattr(self, name)
            if any(v <= 0 for v in values):
                raise ValueError(f"{name} entries must be positive")
        if self.implementation not in (VECTORIZED, SCALAR_BASELINE):
            raise ValueError(f"unknown implementation {self.implementation!r}")


@dataclass(frozen=True)
class BenchRecord:
    kind: str
    implementation: str
    n_messages: int
    message_len_bytes: int
    workers: int
    total_bytes: int
    median_seconds: float
    rate_bytes_per_second: float


def _random_batch(rng: np.random.Generator, n: int, length: int) -> MessageBatch:
    width = 16 * ((length + 15) // 16)
    data = np.zeros((n, width), dtype=np.uint8)
    data[:, :length] = rng.integers(0, 256, (n, length), dtype=np.uint8)
    return MessageBatch(data=data, original_lens=(length,) * n)


def _gate():
    failures = [name for name, ok, _ in selftest.run_checks() if not ok]
    if failures:
        raise RuntimeError(f"known-answer checks failed, sweep aborted: {', '.join(failures)}")


def _time_workload(fn, repetitions: int, warmup: int) -> float:
    """Median seconds per call, batching calls until a region is timable.

    Calibration regions also serve as cache warmers, so a slow first call
    (lazy table generation) cannot skew the chosen batch size.
    """
    calls = 1
    while True:
        start = time.perf_counter()
        for _ in range(calls):
            fn()
        region = time.perf_counter() - start
        if region >= MIN_REGION_SECONDS or calls >= _MAX_CALLS:
            break
        grow = int(calls * MIN_REGION_SECONDS / max(region, 1e-9)) + 1
        calls = min(_MAX_CALLS, max(calls + 1, grow))
    for _ in range(warmup):
        for _ in range(calls):
            fn()
    regions = []
    for _ in range(repetitions):
        start = time.perf_counter()
        for _ in range(calls):
            fn()
        regions.append(time.perf_counter() - start)
    if min(regions) < MIN_REGION_SECONDS and calls >= _MAX_CALLS:
        print("warning: region under 10 ms at the call cap; point may be noisy",
              file=sys.stderr)
    return median(regions) / calls


def _measure_point(cfg: SweepConfig, kind: str, rng, n: int, length: int,
                   workers: int) -> BenchRecord:
    key = rng.bytes(16)
    ivs = IVSet.shared(rng.bytes(16))
    batch = _random_batch(rng, n, length)
    if cfg.implementation == VECTORIZED:
        if workers > 1:
            fn = lambda: parallel.encrypt_batch_parallel(key, ivs, batch, workers)
        else:
            fn = lambda: aes_cbc.encrypt_batch(key, ivs, batch)
    else:
        boxes = default_pair()
        schedule = gen_keys(key, boxes.forward)
        iv_rows = ivs.rows(n)
        fn = lambda: aes_cbc.encrypt_rows_scalar(schedule, boxes, iv_rows, batch.data)
    seconds = _time_workload(fn, cfg.repetitions, cfg.warmup)
    total = n * length
    return BenchRecord(
        kind=kind,
        implementation=cfg.implementation,
        n_messages=n,
        message_len_bytes=length,
        workers=workers,
        total_bytes=total,
        median_seconds=seconds,
        rate_bytes_per_second=total / seconds,
    )


def run_count_sweep(cfg: SweepConfig) -> list:
    """Fixed message length, varying message count."""
    _gate()
    rng = np.random.default_rng(cfg.seed)
    return [
        _measure_point(cfg, "count-sweep", rng, n, cfg.message_len, cfg.workers)
        for n in cfg.message_counts
    ]


def run_length_sweep(cfg: SweepConfig) -> list:
    """Fixed message count, varying message length."""
    _gate()
    rng = np.random.default_rng(cfg.seed)
    return [
        _measure_point(cfg, "length-sweep", rng, cfg.n_messages, length, cfg.workers)
        for length in cfg.lengths
    ]


def run_worker_sweep(cfg: SweepConfig) -> list:
    """Fixed workload, varying worker count; speedup(W) = rate(W)/rate(1)."""
    _gate()
    rng = np.random.default_rng(cfg.seed)
    return [
        _measure_point(cfg, "worker-sweep", rng, cfg.n_messages, cfg.message_len, w)
        for w in cfg.worker_counts
    ]


def emit_csv(records) -> str:
    """Fixed column order, repr-precision floats, newline-terminated rows."""
    lines = [CSV_HEADER]
    for r in records:
        lines.append(
            f"{r.kind},{r.implementation},{r.n_messages},{r.message_len_bytes},"
            f"{r.workers},{r.total_bytes},{r.median_seconds!r},{r.rate_bytes_per_second!r}"
        )
    return "\n".join(lines) + "\n"
