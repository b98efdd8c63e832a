"""Embedded known-answer suite.

Each check regenerates what it tests from scratch (no reliance on cached
tables), so a broken field layer is caught even mid-process. The expected
values are published standard vectors. Checks run in a fixed order with
table generation first: if the algebra is wrong, the substitution-table
check is the first to fail.

Used by the CLI `selftest` subcommand and as the gate before every
benchmark sweep.
"""

from __future__ import annotations

import numpy as np

from . import aes_cbc, gf256, sbox_gen
from .key_schedule import gen_keys, round_constants
from .sbox_gen import SBoxPair

# first 16 entries of the standard forward substitution table
_SBOX_ROW0 = bytes.fromhex("637c777bf26b6fc53001672bfed7ab76")

_BLOCK_KEY = bytes.fromhex("000102030405060708090a0b0c0d0e0f")
_BLOCK_PT = bytes.fromhex("00112233445566778899aabbccddeeff")
_BLOCK_CT = bytes.fromhex("69c4e0d86a7b0430d8cdb78070b4c55a")

_CBC_KEY = bytes.fromhex("2b7e151628aed2a6abf7158809cf4f3c")
_CBC_IV = bytes.fromhex("000102030405060708090a0b0c0d0e0f")
_CBC_PT = bytes.fromhex(
    "6bc1bee22e409f96e93d7e117393172a"
    "ae2d8a571e03ac9c9eb76fac45af8e51"
    "30c81c46a35ce411e5fbc1191a0a52ef"
    "f69f2445df4f9b17ad2b417be66c3710"
)
_CBC_CT = bytes.fromhex(
    "7649abac8119b246cee98e9b12e9197d"
    "5086cb9b507219ee95db113a917678b2"
    "73bed6b8e3c1743b7116e69e22229516"
    "3ff1caa1681fac09120eca307586e1a7"
)


def _check_sbox_forward():
    table = sbox_gen.gen_sbox()
    assert table[:16] == _SBOX_ROW0, "first table row is wrong"
    assert table[0x52] == 0x00 and table[0x53] == 0xED, "spot entries are wrong"
    assert sorted(table) == list(range(256)), "table is not a permutation"


def _check_sbox_inverse():
    forward = sbox_gen.gen_sbox()
    inverse = sbox_gen.gen_sbox_inv()
    for i in range(256):
        assert inverse[forward[i]] == i, f"inverse mismatch at {i:#04x}"


def _check_field_examples():
    assert gf256.gf_add(0x01, 0x03) == 0x02
    assert gf256.gf_mul(0x80, 0x20) == 0xAB  # x^7 * x^5 reduced
    for a in range(1, 256):
        assert gf256.gf_mul(a, gf256.gf_inv(a)) == 0x01, f"inverse fails at {a:#04x}"


def _check_round_constants():
    assert round_constants() == bytes.fromhex("01020408102040801b36")


def _check_mix_inverse():
    mm = aes_cbc.mix_matrices.__wrapped__()  # bypass cache: recompute
    assert gf256.gf_matmul(mm.forward, mm.inverse) == gf256.identity(4)


def _check_block_kat():
    boxes = SBoxPair(sbox_gen.gen_sbox(), sbox_gen.gen_sbox_inv())
    schedule = gen_keys(_BLOCK_KEY, boxes.forward)
    ct = aes_cbc.encrypt_block_scalar(schedule, boxes, _BLOCK_PT)
    assert ct == _BLOCK_CT, f"block vector mismatch: {ct.hex()}"
    assert aes_cbc.decrypt_block_scalar(schedule, boxes, ct) == _BLOCK_PT


def _check_cbc_encrypt_kat():
    batch = aes_cbc.pad_zero([_CBC_PT])
    ct = aes_cbc.encrypt_batch(_CBC_KEY, aes_cbc.IVSet.shared(_CBC_IV), batch)
    assert ct.tobytes() == _CBC_CT, f"chained vector mismatch: {ct.tobytes().hex()}"


def _check_cbc_decrypt_kat():
    grid = np.frombuffer(_CBC_CT, dtype=np.uint8).reshape(1, 64)
    pt = aes_cbc.decrypt_batch(_CBC_KEY, aes_cbc.IVSet.shared(_CBC_IV), grid)
    assert pt.tobytes() == _CBC_PT, "chained decryption mismatch"


def _check_batch_scalar_consistency():
    rng = np.random.default_rng(0x5AE5)
    key = rng.bytes(16)
    ivs = aes_cbc.IVSet.per_message(rng.integers(0, 256, (5, 16), dtype=np.uint8))
    batch = aes_cbc.MessageBatch(
        data=rng.integers(0, 256, (5, 48), dtype=np.uint8), original_lens=(48,) * 5
    )
    boxes = sbox_gen.default_pair()
    schedule = gen_keys(key, boxes.forward)
    batch_ct = aes_cbc.encrypt_batch(key, ivs, batch)
    scalar_ct = aes_cbc.encrypt_rows_scalar(schedule, boxes, ivs.rows(5), batch.data)
    assert np.array_equal(batch_ct, scalar_ct), "batch and scalar paths disagree"


CHECKS = (
    ("sbox-forward", _check_sbox_forward),
    ("sbox-inverse-crosscheck", _check_sbox_inverse),
    ("field-worked-examples", _check_field_examples),
    ("round-constants", _check_round_constants),
    ("mix-matrix-inverse", _check_mix_inverse),
    ("block-kat", _check_block_kat),
    ("cbc-encrypt-kat", _check_cbc_encrypt_kat),
    ("cbc-decrypt-kat", _check_cbc_decrypt_kat),
    ("batch-scalar-consistency", _check_batch_scalar_consistency),
)


def run_checks() -> list:
    """Run every check; returns (name, passed, detail) per check."""
    results = []
    for name, fn in CHECKS:
        try:
            fn()
        except Exception as exc:
            results.append((name, False, str(exc) or type(exc).__name__))
        else:
            results.append((name, True, ""))
    return results
