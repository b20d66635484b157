"""Key frames and hidden keys.

A key frame is what the trusted authority broadcasts: two table orders
(r < s), one table index per encryption level, and a nonce that doubles as
the frame's validity duration.  The hidden key -- the per-level multiplier
vector -- is never transmitted; sender and receiver both derive it from the
frame and the shared profile, so it only has to be derivable identically on
both ends.

Frame validity is split in two: structural validity (orders, index count and
ranges, nonce bounds) and temporal validity (the frame expires at
issued_at + nonce, exclusive).  Hidden-key derivation requires only the
structural part; expiry is enforced where frames are accepted.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from typing import Optional

from .errors import FrameInvalid
from .qgdb import NetworkProfile
from .seeds import SplitMix64, derive_seed

FRAME_VERSION = 1
_FRAME_KEYS = ("version", "profile_id", "r", "s", "indices", "nonce", "issued_at")


@dataclass(frozen=True)
class KeyFrame:
    """One authority transmission: orders, per-level indices, nonce."""

    r: int
    s: int
    indices: tuple
    nonce: int
    issued_at: int = 0


@dataclass(frozen=True)
class HiddenKey:
    """Derived multiplier vector, one leader symbol per level."""

    multipliers: tuple
    level_orders: tuple


class FrameStatus(enum.Enum):
    VALID = "valid"
    EXPIRED = "expired"
    INVALID = "invalid"


@dataclass(frozen=True)
class FrameVerdict:
    status: FrameStatus
    reason: Optional[str] = None

    @property
    def is_valid(self) -> bool:
        return self.status is FrameStatus.VALID


def level_orders(profile: NetworkProfile, frame: KeyFrame) -> tuple:
    """Table order per level: r for the first `split` levels, then s."""
    k, m = profile.level_count, profile.split
    return (frame.r,) * m + (frame.s,) * (k - m)


def _frame_problem(profile: NetworkProfile, frame: KeyFrame,
                   check_nonce: bool = True) -> Optional[str]:
    if frame.r < 2:
        return "r must be >= 2"
    if frame.r >= frame.s:
        return "r must be < s"
    if len(frame.indices) != profile.level_count:
        return (f"expected {profile.level_count} indices, "
                f"got {len(frame.indices)}")
    for i, index in enumerate(frame.indices, 1):
        if not 1 <= index <= profile.index_max:
            return f"index {index} at level {i} outside 1..{profile.index_max}"
    if check_nonce and not profile.nonce_lower < frame.nonce < profile.nonce_upper:
        return (f"nonce {frame.nonce} outside "
                f"({profile.nonce_lower}, {profile.nonce_upper})")
    return None


def generate_frame(profile: NetworkProfile, rng_seed: int,
                   issued_at: int = 0) -> KeyFrame:
    """Draw a fresh key frame from the seeded stream.

    Draw order is fixed: r uniform in [r_min, r_max], s uniform in
    (r, s_max], the level indices in order, then the nonce uniform in the
    open interval (nonce_lower, nonce_upper).  The same seed always yields
    the same frame.
    """
    stream = SplitMix64(rng_seed)
    r = stream.next_range(profile.r_min, profile.r_max)
    s = stream.next_range(r + 1, profile.s_max)
    indices = tuple(stream.next_range(1, profile.index_max)
                    for _ in range(profile.level_count))
    nonce = stream.next_range(profile.nonce_lower + 1, profile.nonce_upper - 1)
    return KeyFrame(r=r, s=s, indices=indices, nonce=nonce, issued_at=issued_at)


def derive_hidden_key(profile: NetworkProfile, frame: KeyFrame) -> HiddenKey:
    """Derive the multiplier vector both ends compute from the same frame.

    Level j (1-indexed) with table order n_j gets
    q_j = 1 + fold(db_seed, nonce, r, s, I_j, j) mod n_j, which lands every
    multiplier inside its level's table.  Only structural frame validity is
    required here; expiry is validate_frame's concern.
    """
    # Nonce bounds are a generation/acceptance policy, not a derivation
    # requirement -- the receiver must be able to key any well-formed frame.
    problem = _frame_problem(profile, frame, check_nonce=False)
    if problem is not None:
        raise FrameInvalid(problem)
    orders = level_orders(profile, frame)
    multipliers = tuple(
        1 + derive_seed((profile.db_seed, frame.nonce, frame.r, frame.s,
                         index, j)) % n_j
        for j, (index, n_j) in enumerate(zip(frame.indices, orders), 1)
    )
    return HiddenKey(multipliers=multipliers, level_orders=orders)


def validate_frame(profile: NetworkProfile, frame: KeyFrame,
                   now: int) -> FrameVerdict:
    """Full acceptance check: structure plus freshness.

    A frame is valid strictly before issued_at + nonce; at that instant it
    is already expired.  Once expired for some `now`, it stays expired for
    every later `now`.
    """
    problem = _frame_problem(profile, frame)
    if problem is not None:
        return FrameVerdict(FrameStatus.INVALID, problem)
    if now >= frame.issued_at + frame.nonce:
        return FrameVerdict(FrameStatus.EXPIRED,
                            f"expired at {frame.issued_at + frame.nonce}")
    return FrameVerdict(FrameStatus.VALID)


# --- frame file format -------------------------------------------------------

def frame_to_json(frame: KeyFrame, profile_id: str) -> str:
    obj = {
        "version": FRAME_VERSION,
        "profile_id": profile_id,
        "r": frame.r,
        "s": frame.s,
        "indices": list(frame.indices),
        "nonce": frame.nonce,
        "issued_at": frame.issued_at,
    }
    return json.dumps(obj, indent=2) + "\n"


def frame_from_json(text: str):
    """Parse a frame file; returns (frame, profile_id)."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FrameInvalid(f"not valid JSON: {exc}") from None
    if not isinstance(obj, dict):
        raise FrameInvalid("frame file must hold a JSON object")
    unknown = set(obj) - set(_FRAME_KEYS)
    if unknown:
        raise FrameInvalid(f"unknown frame keys: {sorted(unknown)}")
    missing = set(_FRAME_KEYS) - set(obj)
    if missing:
        raise FrameInvalid(f"missing frame keys: {sorted(missing)}")
    if obj["version"] != FRAME_VERSION:
        raise FrameInvalid(f"unsupported frame version {obj['version']}")
    for key in ("r", "s", "nonce", "issued_at"):
        if not isinstance(obj[key], int) or isinstance(obj[key], bool):
            raise FrameInvalid(f"{key} must be an integer")
    if (not isinstance(obj["indices"], list)
            or not all(isinstance(i, int) and not isinstance(i, bool)
                       for i in obj["indices"])):
        raise FrameInvalid("indices must be a list of integers")
    frame = KeyFrame(r=obj["r"], s=obj["s"], indices=tuple(obj["indices"]),
                     nonce=obj["nonce"], issued_at=obj["issued_at"])
    return frame, obj["profile_id"]


def save_frame(frame: KeyFrame, profile_id: str, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(frame_to_json(frame, profile_id))


def load_frame(path):
    with open(path, "r", encoding="utf-8") as fh:
        return frame_from_json(fh.read())
