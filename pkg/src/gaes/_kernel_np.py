"""Numpy fallback for the batch CBC kernels.

Processes one 16-byte block column at a time across all messages: every
round step is a whole-slab table lookup, permutation, or XOR. Matches the
compiled kernel byte for byte; used when the extension is unavailable or
explicitly selected.

All table/permutation inputs arrive as arrays so the kernel carries no
cipher knowledge of its own.
"""

from __future__ import annotations

import numpy as np

NAME = "numpy"


def _mix(state: np.ndarray, lut: np.ndarray) -> np.ndarray:
    # state (n, 16) viewed as (n, 4 column groups, 4 rows);
    # new byte r of a group is the XOR of lut[r][j] over the group's bytes j
    n = state.shape[0]
    cols = state.reshape(n, 4, 4)
    out = np.empty_like(cols)
    for r in range(4):
        acc = lut[r, 0][cols[:, :, 0]]
        acc ^= lut[r, 1][cols[:, :, 1]]
        acc ^= lut[r, 2][cols[:, :, 2]]
        acc ^= lut[r, 3][cols[:, :, 3]]
        out[:, :, r] = acc
    return out.reshape(n, 16)


def cbc_encrypt(data, ivs, round_keys, sbox, mix_lut, shift_src, out):
    """Encrypt rows of `data` into `out`; the chain starts from `ivs`."""
    n, m = data.shape
    chain = ivs
    for blk in range(m // 16):
        cols = slice(16 * blk, 16 * blk + 16)
        state = data[:, cols] ^ chain ^ round_keys[0]
        for r in range(1, 11):
            state = sbox[state]
            state = state[:, shift_src]
            if r < 10:
                state = _mix(state, mix_lut)
            state ^= round_keys[r]
        out[:, cols] = state
        chain = state


def cbc_decrypt(data, ivs, round_keys, inv_sbox, inv_mix_lut, inv_shift_src, out):
    """Decrypt rows of `data` into `out`; the chain starts from `ivs`."""
    n, m = data.shape
    chain = ivs
    for blk in range(m // 16):
        cols = slice(16 * blk, 16 * blk + 16)
        ct_block = data[:, cols]
        state = ct_block.copy()
        for r in range(10, 0, -1):
            state = state ^ round_keys[r]
            if r < 10:
                state = _mix(state, inv_mix_lut)
            state = state[:, inv_shift_src]
            state = inv_sbox[state]
        state ^= round_keys[0]
        state ^= chain
        out[:, cols] = state
        chain = ct_block
