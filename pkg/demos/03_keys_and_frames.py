#!/usr/bin/env python3
"""Key frames and hidden keys: what travels, what never does.

Run: python demos/03_keys_and_frames.py
"""

import dataclasses

import qgcipher as qg

profile = qg.default_profile()

print("The authority broadcasts a key frame: two table orders, one table")
print("index per level, and a nonce that is also the validity duration.\n")

frame = qg.generate_frame(profile, rng_seed=2024, issued_at=0)
print(f"  r = {frame.r}, s = {frame.s}")
print(f"  indices = {frame.indices}")
print(f"  nonce   = {frame.nonce}  "
      f"(window: {profile.nonce_lower} < t < {profile.nonce_upper})")

print("\nThe multiplier vector -- the hidden key -- is never transmitted.")
print("Both ends derive it from the frame and the shared profile:\n")
sender = qg.derive_hidden_key(profile, frame)
receiver = qg.derive_hidden_key(profile, frame)
print(f"  sender   derives {sender.multipliers}")
print(f"  receiver derives {receiver.multipliers}")
print(f"  identical: {sender == receiver}")
print(f"  level orders:     {sender.level_orders}")
print("  every multiplier sits inside its level's table:",
      all(1 <= q <= n for q, n in zip(sender.multipliers, sender.level_orders)))

print("\nA different nonce gives a different hidden key even for the same")
print("orders and indices:")
rotated = dataclasses.replace(frame, nonce=frame.nonce + 1)
print(f"  {qg.derive_hidden_key(profile, rotated).multipliers}")

print("\nFrames expire.  Validity is checked against a clock:")
for now in (0, frame.nonce - 1, frame.nonce):
    verdict = qg.validate_frame(profile, frame, now=now)
    print(f"  now={now:>4}: {verdict.status.value}"
          + (f" ({verdict.reason})" if verdict.reason else ""))

bad = qg.KeyFrame(r=41, s=41, indices=(1,) * 6, nonce=500)
print(f"  equal orders: {qg.validate_frame(profile, bad, 0).reason}")
