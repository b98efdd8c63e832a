import numpy as np
import pytest

import reference
from gaes.key_schedule import KeySchedule, gen_keys, round_constants
from gaes.sbox_gen import default_pair


def oracle_rows(key):
    """11 x 16 rows via the word-based reference expansion."""
    words = reference.expand_key_words(key)
    return [bytes(b for w in words[4 * r:4 * r + 4] for b in w) for r in range(11)]


def test_round_constants_values():
    # x^(r-1) for r = 1..10; only the first rcon byte is ever nonzero
    assert round_constants() == bytes(
        [0x01, 0x02, 0x04, 0x08, 0x10, 0x20, 0x40, 0x80, 0x1B, 0x36]
    )


def test_row_zero_is_the_key():
    key = bytes(range(16))
    schedule = gen_keys(key, default_pair().forward)
    assert schedule.rounds[0] == key


def test_zero_key_first_round():
    # frozen from the word-based oracle: every round-1 word is 62636363
    schedule = gen_keys(bytes(16), default_pair().forward)
    expected = bytes.fromhex("62636363" * 4)
    assert schedule.rounds[1] == expected
    assert schedule.rounds[1] == oracle_rows(bytes(16))[1]


def test_zero_key_second_round():
    schedule = gen_keys(bytes(16), default_pair().forward)
    assert schedule.rounds[2] == bytes.fromhex("9b9898c9f9fbfbaa9b9898c9f9fbfbaa")


def test_fips_a1_key_expansion():
    key = bytes.fromhex("2b7e151628aed2a6abf7158809cf4f3c")
    schedule = gen_keys(key, default_pair().forward)
    assert schedule.rounds[1][:4] == bytes.fromhex("a0fafe17")  # first expanded word
    assert schedule.rounds[10] == bytes.fromhex("d014f9a8c9ee2589e13f0cc8b6630ca6")
    assert list(schedule.rounds) == oracle_rows(key)


def test_matches_oracle_for_many_random_keys():
    rng = np.random.default_rng(1234)
    for _ in range(1000):
        key = rng.bytes(16)
        schedule = gen_keys(key, default_pair().forward)
        assert list(schedule.rounds) == oracle_rows(key)


def test_deterministic():
    key = bytes.fromhex("000102030405060708090a0b0c0d0e0f")
    a = gen_keys(key, default_pair().forward)
    b = gen_keys(key, default_pair().forward)
    assert a == b


def test_rejects_wrong_key_length():
    with pytest.raises(ValueError, match="16 bytes"):
        gen_keys(b"short", default_pair().forward)
    with pytest.raises(ValueError, match="16 bytes"):
        gen_keys(bytes(17), default_pair().forward)


def test_rejects_wrong_table_size():
    with pytest.raises(ValueError, match="256"):
        gen_keys(bytes(16), b"\x00" * 255)


def test_schedule_shape_is_validated():
    with pytest.raises(ValueError, match="11 rows"):
        KeySchedule(rounds=(bytes(16),) * 10)
    with pytest.raises(ValueError, match="16 bytes"):
        KeySchedule(rounds=(bytes(15),) * 11)


def test_to_array_layout():
    key = bytes(range(16))
    arr = gen_keys(key, default_pair().forward).to_array()
    assert arr.shape == (11, 16)
    assert arr.dtype == np.uint8
    assert bytes(arr[0]) == key
