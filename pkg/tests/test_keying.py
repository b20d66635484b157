import dataclasses

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import qgcipher as qg
from qgcipher.errors import FrameInvalid
from qgcipher.keying import FrameStatus


def _frame_ok(profile, frame):
    assert 2 <= frame.r < frame.s <= profile.s_max
    assert profile.r_min <= frame.r <= profile.r_max
    assert len(frame.indices) == profile.level_count
    assert all(1 <= i <= profile.index_max for i in frame.indices)
    assert profile.nonce_lower < frame.nonce < profile.nonce_upper


# --- frame generation -----------------------------------------------------------

def test_generated_frames_satisfy_invariants(profile):
    for seed in range(500):
        _frame_ok(profile, qg.generate_frame(profile, seed))


def test_generation_is_deterministic(profile):
    assert qg.generate_frame(profile, 99) == qg.generate_frame(profile, 99)


def test_nonce_respects_open_interval(profile):
    tight = dataclasses.replace(profile, nonce_lower=10, nonce_upper=12)
    for seed in range(50):
        assert qg.generate_frame(tight, seed).nonce == 11


# --- hidden key ------------------------------------------------------------------

def test_multipliers_stay_inside_their_tables(profile):
    for seed in range(200):
        frame = qg.generate_frame(profile, seed)
        key = qg.derive_hidden_key(profile, frame)
        assert key.level_orders == qg.level_orders(profile, frame)
        assert all(1 <= q <= n for q, n in zip(key.multipliers, key.level_orders))


def test_sender_and_receiver_agree(profile):
    frame = qg.generate_frame(profile, 7)
    assert qg.derive_hidden_key(profile, frame) == qg.derive_hidden_key(profile, frame)


def test_nonce_changes_the_key(profile):
    # Frames differing only in nonce should almost always give different
    # multiplier vectors.
    differing = 0
    for seed in range(100):
        frame = qg.generate_frame(profile, seed)
        other = dataclasses.replace(frame, nonce=frame.nonce + 1)
        if (qg.derive_hidden_key(profile, frame).multipliers
                != qg.derive_hidden_key(profile, other).multipliers):
            differing += 1
    assert differing >= 95


def test_derivation_accepts_out_of_band_nonce(profile):
    # Inline-key workflows use nonce 0; key derivation must not enforce the
    # nonce window (that is acceptance-time policy).
    frame = qg.KeyFrame(r=35, s=41, indices=(5, 4, 2, 1, 6, 3), nonce=0)
    key = qg.derive_hidden_key(profile, frame)
    assert all(1 <= q <= n for q, n in zip(key.multipliers, key.level_orders))


def test_derivation_rejects_structural_problems(profile):
    with pytest.raises(FrameInvalid):
        qg.derive_hidden_key(profile, qg.KeyFrame(r=41, s=35,
                                                  indices=(1,) * 6, nonce=500))
    with pytest.raises(FrameInvalid):
        qg.derive_hidden_key(profile, qg.KeyFrame(r=35, s=41,
                                                  indices=(1, 2), nonce=500))
    with pytest.raises(FrameInvalid):
        qg.derive_hidden_key(profile, qg.KeyFrame(r=35, s=41,
                                                  indices=(0,) * 6, nonce=500))


# --- level orders -------------------------------------------------------------------

def test_level_orders_default_split(profile):
    frame = qg.KeyFrame(r=150, s=270, indices=(1, 2, 3, 5, 4, 6), nonce=500)
    wide = dataclasses.replace(profile, r_max=200, s_max=300)
    assert qg.level_orders(wide, frame) == (150, 150, 150, 270, 270, 270)


def test_level_orders_two_levels():
    profile = qg.NetworkProfile(level_count=2, split=1)
    frame = qg.KeyFrame(r=40, s=50, indices=(1, 2), nonce=500)
    assert qg.level_orders(profile, frame) == (40, 50)


def test_level_orders_split_before_last():
    profile = qg.NetworkProfile(level_count=6, split=5)
    frame = qg.KeyFrame(r=40, s=50, indices=(1,) * 6, nonce=500)
    assert qg.level_orders(profile, frame) == (40, 40, 40, 40, 40, 50)


# --- validation ------------------------------------------------------------------------

def test_fresh_frame_is_valid(profile):
    frame = qg.generate_frame(profile, 3, issued_at=100)
    assert qg.validate_frame(profile, frame, now=100).is_valid


def test_expiry_boundary_is_exclusive(profile):
    frame = qg.generate_frame(profile, 3, issued_at=100)
    end = frame.issued_at + frame.nonce
    assert qg.validate_frame(profile, frame, now=end - 1).is_valid
    verdict = qg.validate_frame(profile, frame, now=end)
    assert verdict.status is FrameStatus.EXPIRED


def test_equal_orders_are_invalid(profile):
    frame = qg.KeyFrame(r=41, s=41, indices=(1,) * 6, nonce=500)
    verdict = qg.validate_frame(profile, frame, now=0)
    assert verdict.status is FrameStatus.INVALID
    assert verdict.reason == "r must be < s"


def test_validation_is_monotone_in_now(profile):
    frame = qg.generate_frame(profile, 5, issued_at=0)
    expired_seen = False
    for now in range(0, frame.nonce + 50, 7):
        verdict = qg.validate_frame(profile, frame, now)
        if expired_seen:
            assert verdict.status is FrameStatus.EXPIRED
        expired_seen = verdict.status is FrameStatus.EXPIRED


@given(seed=st.integers(min_value=0, max_value=2**64 - 1))
@settings(max_examples=50, deadline=None)
def test_generated_key_always_satisfies_membership(seed):
    profile = qg.default_profile()
    frame = qg.generate_frame(profile, seed)
    key = qg.derive_hidden_key(profile, frame)
    assert all(1 <= q <= n for q, n in zip(key.multipliers, key.level_orders))


# --- frame files -------------------------------------------------------------------------

def test_frame_json_round_trip(profile, tmp_path):
    frame = qg.generate_frame(profile, 17, issued_at=12)
    path = tmp_path / "frame.json"
    qg.save_frame(frame, profile.profile_id, path)
    loaded, profile_id = qg.load_frame(path)
    assert loaded == frame
    assert profile_id == profile.profile_id


def test_frame_json_rejects_unknown_keys(profile):
    import json
    obj = json.loads(qg.frame_to_json(qg.generate_frame(profile, 1), "default"))
    obj["surprise"] = True
    with pytest.raises(FrameInvalid):
        qg.frame_from_json(json.dumps(obj))
