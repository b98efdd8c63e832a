"""The compiled kernel and the numpy fallback must be interchangeable."""

import numpy as np
import pytest

from gaes import _kernel_np, backend
from gaes.aes_cbc import IVSet, MessageBatch, _decrypt_tables, _encrypt_tables

compiled = pytest.importorskip(
    "gaes._kernel", reason="compiled kernel not built on this interpreter"
)


def _random_case(rng, n, blocks):
    data = rng.integers(0, 256, (n, 16 * blocks), dtype=np.uint8)
    ivs = rng.integers(0, 256, (n, 16), dtype=np.uint8)
    key = rng.bytes(16)
    return key, data, ivs


@pytest.mark.parametrize("n,blocks", [(1, 1), (3, 1), (1, 5), (17, 3), (64, 2)])
def test_encrypt_kernels_agree(n, blocks):
    rng = np.random.default_rng(n * 100 + blocks)
    key, data, ivs = _random_case(rng, n, blocks)
    tables = _encrypt_tables(key)
    out_c = np.empty_like(data)
    out_np = np.empty_like(data)
    compiled.cbc_encrypt(data, ivs, *tables, out_c)
    _kernel_np.cbc_encrypt(data, ivs, *tables, out_np)
    assert np.array_equal(out_c, out_np)


@pytest.mark.parametrize("n,blocks", [(1, 1), (5, 4), (32, 2)])
def test_decrypt_kernels_agree(n, blocks):
    rng = np.random.default_rng(n * 707 + blocks)
    key, data, ivs = _random_case(rng, n, blocks)
    tables = _decrypt_tables(key)
    out_c = np.empty_like(data)
    out_np = np.empty_like(data)
    compiled.cbc_decrypt(data, ivs, *tables, out_c)
    _kernel_np.cbc_decrypt(data, ivs, *tables, out_np)
    assert np.array_equal(out_c, out_np)


def test_select_switches_and_round_trips_across_backends():
    rng = np.random.default_rng(42)
    key = rng.bytes(16)
    ivs = IVSet.shared(rng.bytes(16))
    batch = MessageBatch(
        data=rng.integers(0, 256, (8, 32), dtype=np.uint8), original_lens=(32,) * 8
    )
    from gaes.aes_cbc import decrypt_batch, encrypt_batch

    original = backend.name()
    try:
        backend.select("compiled")
        ct = encrypt_batch(key, ivs, batch)
        backend.select("numpy")
        assert np.array_equal(decrypt_batch(key, ivs, ct), batch.data)
        assert np.array_equal(encrypt_batch(key, ivs, batch), ct)
    finally:
        backend.select(original)


def test_select_rejects_unknown_backend():
    with pytest.raises(ValueError, match="not available"):
        backend.select("fortran")


def test_auto_prefers_compiled_when_built():
    original = backend.name()
    try:
        backend.select("auto")
        assert backend.name() == "compiled"
    finally:
        backend.select(original)
