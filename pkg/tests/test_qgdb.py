import dataclasses

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import qgcipher as qg
from qgcipher.errors import IndexOutOfRange, InvalidOrder, ProfileInvalid


# --- base square ------------------------------------------------------------------

def test_base_square_order_one():
    assert qg.base_square(1).rows == [[1]]


def test_base_square_order_three():
    assert qg.base_square(3).rows == [[1, 2, 3], [2, 3, 1], [3, 1, 2]]


@pytest.mark.parametrize("n", [2, 5, 17, 64, 256])
def test_base_square_is_latin(n):
    qg.validate_latin_square(qg.base_square(n).table)


def test_base_square_rejects_bad_order():
    with pytest.raises(InvalidOrder):
        qg.base_square(0)


# --- indexed provider ---------------------------------------------------------------

def test_get_quasigroup_is_deterministic(profile):
    a = qg.get_quasigroup(profile, 16, 3, 500)
    b = qg.get_quasigroup(profile, 16, 3, 500)
    assert a == b


@given(order=st.integers(min_value=2, max_value=128),
       index=st.integers(min_value=1, max_value=1000),
       nonce=st.integers(min_value=0, max_value=10**6))
@settings(max_examples=30, deadline=None)
def test_generated_squares_are_latin(order, index, nonce):
    square = qg.get_quasigroup(qg.default_profile(), order, index, nonce)
    qg.validate_latin_square(square.table)
    qg.validate_latin_square(qg.left_inverse(square).table)


def test_distinct_indices_give_distinct_tables(profile):
    # 100 sampled index pairs at order 16; near-collisions are possible
    # but must be rare.
    stream = qg.SplitMix64(314)
    differing = 0
    for _ in range(100):
        i = stream.next_range(1, 1000)
        j = stream.next_range(1, 1000)
        while j == i:
            j = stream.next_range(1, 1000)
        a = qg.get_quasigroup(profile, 16, i, 42)
        b = qg.get_quasigroup(profile, 16, j, 42)
        if a != b:
            differing += 1
    assert differing >= 99


def test_nonce_changes_the_table(profile):
    assert qg.get_quasigroup(profile, 16, 3, 1) != qg.get_quasigroup(profile, 16, 3, 2)


def test_repeated_indices_are_permitted(profile):
    frame = qg.KeyFrame(r=35, s=41, indices=(1, 1, 1, 1, 1, 1), nonce=500)
    key = qg.derive_hidden_key(profile, frame)
    assert len(key.multipliers) == 6


def test_get_quasigroup_rejects_bad_arguments(profile):
    with pytest.raises(InvalidOrder):
        qg.get_quasigroup(profile, 1, 1, 0)
    with pytest.raises(IndexOutOfRange):
        qg.get_quasigroup(profile, 8, 0, 0)
    with pytest.raises(IndexOutOfRange):
        qg.get_quasigroup(profile, 8, profile.index_max + 1, 0)


# --- profile ---------------------------------------------------------------------------

def test_profile_json_round_trip(profile):
    text = qg.profile_to_json(profile)
    assert qg.profile_from_json(text) == profile
    # db_seed travels as a decimal string
    import json
    assert json.loads(text)["db_seed"] == str(profile.db_seed)


def test_profile_key_order_is_fixed(profile):
    import json
    keys = list(json.loads(qg.profile_to_json(profile)))
    assert keys == ["profile_id", "db_seed", "r_min", "r_max", "s_max", "k",
                    "m", "index_max", "T", "T1", "alphabet_id", "version"]


def test_profile_rejects_unknown_keys(profile):
    import json
    obj = json.loads(qg.profile_to_json(profile))
    obj["extra"] = 1
    with pytest.raises(ProfileInvalid):
        qg.profile_from_json(json.dumps(obj))


def test_profile_rejects_missing_keys(profile):
    import json
    obj = json.loads(qg.profile_to_json(profile))
    del obj["s_max"]
    with pytest.raises(ProfileInvalid):
        qg.profile_from_json(json.dumps(obj))


@pytest.mark.parametrize("fields", [
    {"r_min": 1},
    {"r_min": 200, "r_max": 100},
    {"r_max": 300, "s_max": 256},
    {"level_count": 1},
    {"split": 0},
    {"split": 6},
    {"index_max": 0},
    {"nonce_lower": 0},
    {"nonce_lower": 999, "nonce_upper": 1000},
    {"db_seed": -1},
    {"alphabet_id": "latin99"},
])
def test_profile_invariants(fields):
    with pytest.raises(ProfileInvalid):
        dataclasses.replace(qg.default_profile(), **fields)


def test_known_alphabet_ids_match_codec():
    from qgcipher.qgdb import KNOWN_ALPHABET_IDS
    assert set(KNOWN_ALPHABET_IDS) == set(qg.ALPHABETS)


def test_fingerprint_is_length_sensitive():
    assert qg.profile_fingerprint(b"x") != qg.profile_fingerprint(b"x\x00")
    assert qg.profile_fingerprint(b"") != qg.profile_fingerprint(b"\x00" * 8)
    text = qg.profile_to_json(qg.default_profile()).encode()
    assert qg.profile_fingerprint(text) == qg.profile_fingerprint(text)
