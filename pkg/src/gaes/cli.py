"""Command-line front end.

Subcommands: encrypt, decrypt, tables, selftest, bench.

Exit codes: 0 success, 1 usage error, 2 data/format error, 3 self-test
failure. Input for encryption is newline-delimited records by default
(the newline is not part of the message); --raw treats the whole file as
one message. Worker count comes from --workers, then GAES_WORKERS, then
the CPU count.

CBC carries no integrity check: decrypting with the wrong key yields
garbage and still exits 0.
"""

from __future__ import annotations

import argparse
import os
import sys
import tempfile
from dataclasses import dataclass

import numpy as np

from . import backend, bench, parallel, selftest
from .aes_cbc import IVSet, decrypt_batch, encrypt_batch, mix_matrices, pad_zero
from .container import (
    CipherContainer,
    ContainerError,
    container_bytes,
    read_container,
)
from .key_schedule import round_constants
from .sbox_gen import default_pair

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_SELFTEST = 3


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 by default; route through UsageError
    # so usage problems uniformly exit 1
    def error(self, message):
        raise UsageError(message)


@dataclass(frozen=True)
class KeyMaterial:
    """Key and IV parsed from hex, with the IV generated when absent."""

    key: bytes
    iv: bytes

    @classmethod
    def from_hex(cls, key_hex: str, iv_hex: str | None) -> "KeyMaterial":
        key = _parse_hex16("key", key_hex)
        iv = _parse_hex16("iv", iv_hex) if iv_hex is not None else os.urandom(16)
        return cls(key=key, iv=iv)


def _parse_hex16(name: str, text: str) -> bytes:
    cleaned = text.strip().lower()
    if len(cleaned) != 32 or any(c not in "0123456789abcdef" for c in cleaned):
        raise UsageError(f"--{name} must be exactly 32 hex digits")
    return bytes.fromhex(cleaned)


def _read_file(path: str) -> bytes:
    try:
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc.strerror or exc}")


def _write_file(path: str, data: bytes):
    # stage next to the target and rename so failures leave no partial file
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".gaes-")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def _split_records(content: bytes) -> list:
    if not content:
        raise DataError("empty input file")
    pieces = content.split(b"\n")
    if pieces and pieces[-1] == b"":
        pieces.pop()
    if not pieces:
        raise DataError("empty input file")
    for i, piece in enumerate(pieces):
        if piece == b"":
            raise DataError(f"record {i + 1} has zero length")
    return pieces


def cmd_encrypt(args) -> int:
    material = KeyMaterial.from_hex(args.key, args.iv)
    content = _read_file(args.infile)
    if args.raw:
        if not content:
            raise DataError("empty input file")
        records = [content]
    else:
        records = _split_records(content)
    batch = pad_zero(records)
    if args.per_message_iv:
        if args.iv is not None:
            raise UsageError("--iv and --per-message-iv are mutually exclusive")
        grid = np.frombuffer(os.urandom(16 * batch.n_messages), dtype=np.uint8)
        ivs = IVSet.per_message(grid.reshape(batch.n_messages, 16).copy())
    else:
        ivs = IVSet.shared(material.iv)
    payload = parallel.encrypt_batch_parallel(material.key, ivs, batch, args.workers)
    blob = container_bytes(
        CipherContainer(iv_set=ivs, original_lens=batch.original_lens, payload=payload)
    )
    _write_file(args.outfile, blob)
    print(f"messages={batch.n_messages} padded_len={batch.padded_len} bytes_written={len(blob)}")
    return EXIT_OK


def cmd_decrypt(args) -> int:
    material_key = _parse_hex16("key", args.key)
    try:
        box = read_container(args.infile)
    except OSError as exc:
        raise DataError(f"cannot read {args.infile}: {exc.strerror or exc}")
    grid = parallel.decrypt_batch_parallel(material_key, box.iv_set, box.payload, args.workers)
    rows = [grid[i, : box.original_lens[i]].tobytes() for i in range(box.n_messages)]
    if args.raw:
        out = b"".join(rows)
    else:
        out = b"".join(row + b"\n" for row in rows)
    _write_file(args.outfile, out)
    return EXIT_OK


def _hex_grid(table: bytes, width: int) -> str:
    lines = []
    for start in range(0, len(table), width):
        lines.append(" ".join(f"{v:02x}" for v in table[start:start + width]))
    return "\n".join(lines)


def cmd_tables(args) -> int:
    pair = default_pair()
    if args.which == "sbox":
        print(_hex_grid(pair.forward, 16))
    elif args.which == "sbox-inv":
        print(_hex_grid(pair.inverse, 16))
    elif args.which == "rcon":
        print(_hex_grid(round_constants(), 10))
    else:  # mix
        mm = mix_matrices()
        print("forward:")
        print(_hex_grid(bytes(mm.forward.data), 4))
        print("inverse:")
        print(_hex_grid(bytes(mm.inverse.data), 4))
    return EXIT_OK


def cmd_selftest(args) -> int:
    results = selftest.run_checks()
    for name, ok, detail in results:
        line = f"{name}: {'PASS' if ok else 'FAIL'}"
        if detail and not ok:
            line += f" ({detail})"
        print(line)
    if all(ok for _, ok, _ in results):
        print(f"{len(results)} checks passed")
        return EXIT_OK
    return EXIT_SELFTEST


def _int_list(text: str) -> tuple:
    try:
        values = tuple(int(part) for part in text.split(",") if part != "")
    except ValueError:
        raise UsageError(f"not a comma-separated integer list: {text!r}")
    if not values:
        raise UsageError("empty list")
    return values


def cmd_bench(args) -> int:
    if args.backend != "auto" or "GAES_BACKEND" not in os.environ:
        backend.select(args.backend)
    cfg = bench.SweepConfig(
        sweep_kind=args.sweep,
        repetitions=args.reps,
        warmup=args.warmup,
        seed=args.seed,
        implementation=args.impl,
        workers=args.workers or 1,
        message_len=args.message_len,
        n_messages=args.n_messages,
    )
    if args.counts:
        cfg.message_counts = args.counts
    if args.lengths:
        cfg.lengths = args.lengths
    if args.worker_counts:
        cfg.worker_counts = args.worker_counts
    runner = {
        "count": bench.run_count_sweep,
        "length": bench.run_length_sweep,
        "workers": bench.run_worker_sweep,
    }[args.sweep]
    records = runner(cfg)
    text = f"# seed={cfg.seed} backend={backend.name()} impl={cfg.implementation}\n"
    text += bench.emit_csv(records)
    if args.outfile:
        _write_file(args.outfile, text.encode())
        print(f"wrote {len(records)} records to {args.outfile}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gaes", description="batch AES-128-CBC tool")
    sub = parser.add_subparsers(dest="command", required=True)

    enc = sub.add_parser("encrypt", help="encrypt a file of records")
    enc.add_argument("--key", required=True, help="128-bit key as 32 hex digits")
    enc.add_argument("--iv", help="shared IV as 32 hex digits (default: random)")
    enc.add_argument("--per-message-iv", action="store_true",
                     help="generate an independent random IV per record")
    enc.add_argument("--in", dest="infile", required=True, help="input file")
    enc.add_argument("--out", dest="outfile", required=True, help="output container")
    enc.add_argument("--raw", action="store_true", help="treat input as one message")
    enc.add_argument("--workers", type=int, help="worker threads (default: GAES_WORKERS or CPU count)")
    enc.set_defaults(fn=cmd_encrypt)

    dec = sub.add_parser("decrypt", help="decrypt a container")
    dec.add_argument("--key", required=True, help="128-bit key as 32 hex digits")
    dec.add_argument("--in", dest="infile", required=True, help="input container")
    dec.add_argument("--out", dest="outfile", required=True, help="output file")
    dec.add_argument("--raw", action="store_true", help="write raw bytes, no record newlines")
    dec.add_argument("--workers", type=int, help="worker threads")
    dec.set_defaults(fn=cmd_decrypt)

    tab = sub.add_parser("tables", help="dump a generated table")
    tab.add_argument("--which", required=True, choices=["sbox", "sbox-inv", "rcon", "mix"])
    tab.set_defaults(fn=cmd_tables)

    st = sub.add_parser("selftest", help="run the known-answer suite")
    st.set_defaults(fn=cmd_selftest)

    ben = sub.add_parser("bench", help="run a throughput sweep, emit CSV")
    ben.add_argument("--sweep", required=True, choices=["count", "length", "workers"])
    ben.add_argument("--reps", type=int, default=5, help="timed repetitions per point")
    ben.add_argument("--warmup", type=int, default=1, help="untimed warmup repetitions")
    ben.add_argument("--out", dest="outfile", help="CSV output file (default: stdout)")
    ben.add_argument("--workers", type=int, help="worker threads for count/length sweeps")
    ben.add_argument("--seed", type=int, default=2016, help="workload generator seed")
    ben.add_argument("--impl", choices=[bench.VECTORIZED, bench.SCALAR_BASELINE],
                     default=bench.VECTORIZED)
    ben.add_argument("--backend", choices=["auto", "compiled", "numpy"], default="auto",
                     help="kernel backend to time")
    ben.add_argument("--counts", type=_int_list, help="message counts, comma separated")
    ben.add_argument("--lengths", type=_int_list, help="message lengths, comma separated")
    ben.add_argument("--worker-counts", type=_int_list, dest="worker_counts",
                     help="worker counts, comma separated")
    ben.add_argument("--message-len", type=int, default=16, dest="message_len")
    ben.add_argument("--n-messages", type=int, default=128, dest="n_messages")
    ben.set_defaults(fn=cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.fn(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DataError, ContainerError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


def run():
    raise SystemExit(main())


if __name__ == "__main__":
    run()
