# cython: boundscheck=False, wraparound=False, initializedcheck=False, language_level=3
"""Compiled batch CBC kernels.

Row-at-a-time C loops over contiguous uint8 buffers. Semantics are
identical to the numpy fallback; the point of this module is that the
whole loop runs without the GIL, so row-range chunks scale across threads.
"""

NAME = "compiled"


def cbc_encrypt(const unsigned char[:, ::1] data,
                const unsigned char[:, ::1] ivs,
                const unsigned char[:, ::1] round_keys,
                const unsigned char[::1] sbox,
                const unsigned char[:, :, ::1] mix_lut,
                const unsigned char[::1] shift_src,
                unsigned char[:, ::1] out):
    """Encrypt rows of `data` into `out`; the chain starts from `ivs`."""
    cdef Py_ssize_t n = data.shape[0]
    cdef Py_ssize_t m = data.shape[1]
    cdef Py_ssize_t nblocks = m // 16
    cdef Py_ssize_t i, blk, base, r, c, j
    cdef unsigned char state[16]
    cdef unsigned char tmp[16]
    cdef unsigned char chain[16]

    with nogil:
        for i in range(n):
            for j in range(16):
                chain[j] = ivs[i, j]
            for blk in range(nblocks):
                base = 16 * blk
                for j in range(16):
                    state[j] = data[i, base + j] ^ chain[j] ^ round_keys[0, j]
                for r in range(1, 11):
                    for j in range(16):
                        tmp[j] = sbox[state[j]]
                    for j in range(16):
                        state[j] = tmp[shift_src[j]]
                    if r < 10:
                        for c in range(0, 16, 4):
                            for j in range(4):
                                tmp[c + j] = (mix_lut[j, 0, state[c]]
                                              ^ mix_lut[j, 1, state[c + 1]]
                                              ^ mix_lut[j, 2, state[c + 2]]
                                              ^ mix_lut[j, 3, state[c + 3]])
                        for j in range(16):
                            state[j] = tmp[j]
                    for j in range(16):
                        state[j] = state[j] ^ round_keys[r, j]
                for j in range(16):
                    out[i, base + j] = state[j]
                    chain[j] = state[j]


def cbc_decrypt(const unsigned char[:, ::1] data,
                const unsigned char[:, ::1] ivs,
                const unsigned char[:, ::1] round_keys,
                const unsigned char[::1] inv_sbox,
                const unsigned char[:, :, ::1] inv_mix_lut,
                const unsigned char[::1] inv_shift_src,
                unsigned char[:, ::1] out):
    """Decrypt rows of `data` into `out`; the chain starts from `ivs`."""
    cdef Py_ssize_t n = data.shape[0]
    cdef Py_ssize_t m = data.shape[1]
    cdef Py_ssize_t nblocks = m // 16
    cdef Py_ssize_t i, blk, base, r, c, j
    cdef unsigned char state[16]
    cdef unsigned char tmp[16]
    cdef unsigned char chain[16]

    with nogil:
        for i in range(n):
            for j in range(16):
                chain[j] = ivs[i, j]
            for blk in range(nblocks):
                base = 16 * blk
                for j in range(16):
                    state[j] = data[i, base + j]
                for r in range(10, 0, -1):
                    for j in range(16):
                        state[j] = state[j] ^ round_keys[r, j]
                    if r < 10:
                        for c in range(0, 16, 4):
                            for j in range(4):
                                tmp[c + j] = (inv_mix_lut[j, 0, state[c]]
                                              ^ inv_mix_lut[j, 1, state[c + 1]]
                                              ^ inv_mix_lut[j, 2, state[c + 2]]
                                              ^ inv_mix_lut[j, 3, state[c + 3]])
                        for j in range(16):
                            state[j] = tmp[j]
                    for j in range(16):
                        tmp[j] = state[inv_shift_src[j]]
                    for j in range(16):
                        state[j] = inv_sbox[tmp[j]]
                for j in range(16):
                    state[j] = state[j] ^ round_keys[0, j] ^ chain[j]
                    out[i, base + j] = state[j]
                for j in range(16):
                    chain[j] = data[i, base + j]
