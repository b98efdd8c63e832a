import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import reference
from gaes import gf256

byte = st.integers(0, 255)


# ---------------------------------------------------------------------
# addition

def test_add_worked_example():
    # 1 + 3 = 00000001 + 00000011 = 00000010
    assert gf256.gf_add(0x01, 0x03) == 0x02


@given(byte)
def test_add_identity_and_self_inverse(a):
    assert gf256.gf_add(a, 0x00) == a
    assert gf256.gf_add(a, a) == 0x00


def test_add_rejects_out_of_range():
    with pytest.raises(ValueError):
        gf256.gf_add(256, 0)
    with pytest.raises(ValueError):
        gf256.gf_add(0, -1)


# ---------------------------------------------------------------------
# multiplication

def test_mul_worked_example():
    # x^7 * x^5 = x^12 reduces to x^7 + x^5 + x^3 + x + 1 = 10101011
    assert gf256.gf_mul(0x80, 0x20) == 0xAB


def test_mul_classic_inverse_pair():
    assert gf256.gf_mul(0x53, 0xCA) == 0x01


@given(byte)
def test_mul_identity(a):
    assert gf256.gf_mul(a, 0x01) == a
    assert gf256.gf_mul(a, 0x00) == 0x00


@settings(max_examples=300)
@given(byte, byte)
def test_mul_matches_long_division_oracle(a, b):
    assert gf256.gf_mul(a, b) == reference.gmul(a, b)


@settings(max_examples=200)
@given(byte, byte, byte)
def test_mul_distributes_over_add(a, b, c):
    left = gf256.gf_mul(a, gf256.gf_add(b, c))
    right = gf256.gf_add(gf256.gf_mul(a, b), gf256.gf_mul(a, c))
    assert left == right


@settings(max_examples=200)
@given(byte, byte, byte)
def test_mul_associative(a, b, c):
    assert gf256.gf_mul(gf256.gf_mul(a, b), c) == gf256.gf_mul(a, gf256.gf_mul(b, c))


def test_mul_commutative_exhaustive():
    table = gf256.mul_table()
    assert np.array_equal(table, table.T)


# ---------------------------------------------------------------------
# powers and inverses

def test_pow_base_cases():
    assert gf256.gf_pow(0x02, 0) == 0x01
    assert gf256.gf_pow(0x02, 8) == 0x1B
    assert gf256.gf_pow(0x02, 9) == 0x36


def test_pow_rejects_zero_to_the_zero():
    with pytest.raises(ValueError):
        gf256.gf_pow(0x00, 0)


def test_round_constant_sequence():
    expected = [0x01, 0x02, 0x04, 0x08, 0x10, 0x20, 0x40, 0x80, 0x1B, 0x36]
    assert [gf256.gf_pow(0x02, r - 1) for r in range(1, 11)] == expected


def test_inv_conventions():
    assert gf256.gf_inv(0x01) == 0x01
    assert gf256.gf_inv(0x00) == 0x00  # zero stays fixed by convention
    assert gf256.gf_inv(0x53) == 0xCA


def test_inv_exhaustive():
    for a in range(1, 256):
        assert gf256.gf_mul(a, gf256.gf_inv(a)) == 0x01
        assert gf256.gf_inv(a) == reference.ginv_brute(a)


# ---------------------------------------------------------------------
# bit vectors and the affine map

def test_bits_of_byte_msb_first():
    assert gf256.bits_of_byte(0x80) == (1, 0, 0, 0, 0, 0, 0, 0)
    assert gf256.bits_of_byte(0x63) == (0, 1, 1, 0, 0, 0, 1, 1)


def test_bit_round_trip_exhaustive():
    for v in range(256):
        assert gf256.byte_of_bits(gf256.bits_of_byte(v)) == v


def test_bit_circulant_rows_shift_right():
    m = gf256.bit_circulant((1, 1, 1, 1, 1, 0, 0, 0))
    assert m[0] == (1, 1, 1, 1, 1, 0, 0, 0)
    assert m[1] == (0, 1, 1, 1, 1, 1, 0, 0)
    assert m[7] == (1, 1, 1, 1, 0, 0, 0, 1)


def test_affine_identity_matrix():
    eye = tuple(tuple(1 if i == j else 0 for j in range(8)) for i in range(8))
    y = gf256.bits_of_byte(0xA7)
    zero = (0,) * 8
    assert gf256.gf2_affine(eye, y, zero) == y


@given(byte)
def test_affine_zero_input_returns_constant(b):
    a = gf256.bit_circulant((1, 0, 1, 0, 1, 0, 1, 0))
    const = gf256.bits_of_byte(b)
    assert gf256.gf2_affine(a, (0,) * 8, const) == const


def test_affine_of_zero_with_table_constants_is_0x63():
    a = gf256.bit_circulant((1, 1, 1, 1, 1, 0, 0, 0))
    b = gf256.bits_of_byte(0x63)
    out = gf256.gf2_affine(a, gf256.bits_of_byte(0x00), b)
    assert gf256.byte_of_bits(out) == 0x63


# ---------------------------------------------------------------------
# matrices

def _naive_matmul(a, b):
    # fold-based product, written independently of gf_matmul's loop
    cells = []
    for i in range(a.rows):
        for j in range(b.cols):
            terms = [gf256.gf_mul(a.at(i, k), b.at(k, j)) for k in range(a.cols)]
            acc = 0
            for t in terms:
                acc = gf256.gf_add(acc, t)
            cells.append(acc)
    return gf256.GFMatrix(a.rows, b.cols, tuple(cells))


def test_matmul_identity():
    eye = gf256.identity(4)
    b = gf256.GFMatrix(4, 3, tuple(range(12)))
    assert gf256.gf_matmul(eye, b) == b


def test_matmul_one_by_one():
    a = gf256.GFMatrix(1, 1, (0x57,))
    b = gf256.GFMatrix(1, 1, (0x13,))
    assert gf256.gf_matmul(a, b).data == (gf256.gf_mul(0x57, 0x13),)


def test_matmul_dimension_mismatch():
    a = gf256.GFMatrix(2, 3, tuple(range(6)))
    b = gf256.GFMatrix(2, 3, tuple(range(6)))
    with pytest.raises(ValueError):
        gf256.gf_matmul(a, b)


def test_mix_circulants_are_mutual_inverses():
    forward = gf256.circulant((2, 3, 1, 1))
    inverse = gf256.circulant((14, 11, 13, 9))
    assert gf256.gf_matmul(forward, inverse) == gf256.identity(4)
    assert gf256.gf_matmul(inverse, forward) == gf256.identity(4)


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.integers(1, 4), st.data())
def test_matmul_matches_naive_oracle(n, k, m, data):
    a = gf256.GFMatrix(n, k, tuple(data.draw(byte) for _ in range(n * k)))
    b = gf256.GFMatrix(k, m, tuple(data.draw(byte) for _ in range(k * m)))
    assert gf256.gf_matmul(a, b) == _naive_matmul(a, b)


def test_circulant_rows():
    m = gf256.circulant((2, 3, 1, 1))
    assert m.row(0) == (2, 3, 1, 1)
    assert m.row(1) == (1, 2, 3, 1)
    assert m.row(2) == (1, 1, 2, 3)
    assert m.row(3) == (3, 1, 1, 2)


# ---------------------------------------------------------------------
# derived tables

def test_mul_table_matches_ground_truth_sample():
    table = gf256.mul_table()
    rng = np.random.default_rng(99)
    for a, b in rng.integers(0, 256, (200, 2)):
        assert table[a, b] == gf256.gf_mul(int(a), int(b))


def test_mul_row_is_read_only():
    row = gf256.mul_row(3)
    with pytest.raises(ValueError):
        row[0] = 1
