"""Command-line front end.

Subcommands: profile-new, keygen, encrypt, decrypt, analyze, simulate,
qg-dump, legacy-encrypt.  All randomness flows through explicit --seed
flags, so every invocation is deterministic given its flags and inputs.
"""

from __future__ import annotations

import argparse
import dataclasses
import math
import sys
from dataclasses import dataclass

from . import analysis, codec, keying, latin, qgdb, tasim
from .errors import NotANumber, OrderViolation, QGError, TooFewEntries


# --- legacy inline keys --------------------------------------------------------

@dataclass(frozen=True)
class LegacyKey:
    """Inline key syntax: the first two integers are the table orders,
    the rest are the per-level indices."""

    r: int
    s: int
    indices: tuple


def parse_legacy_key(text: str) -> LegacyKey:
    """Parse \"r, s, i1, i2, ...\" (whitespace around commas ignored)."""
    entries = []
    for token in text.split(","):
        token = token.strip()
        try:
            entries.append(int(token))
        except ValueError:
            raise NotANumber(f"not an integer: {token!r}") from None
    if len(entries) < 3:
        raise TooFewEntries(
            f"need at least 3 entries (r, s, one index), got {len(entries)}")
    r, s = entries[0], entries[1]
    if r >= s:
        raise OrderViolation(f"first order must be smaller than second "
                             f"(got r={r}, s={s})")
    return LegacyKey(r=r, s=s, indices=tuple(entries[2:]))


def _legacy_profile(base: qgdb.NetworkProfile, key: LegacyKey) -> qgdb.NetworkProfile:
    """Adapt a profile to an inline key: level count and split follow the
    key's index count, and index_max widens to cover its indices."""
    k = len(key.indices)
    if k < 2:
        raise OrderViolation("inline keys need at least 2 indices")
    return dataclasses.replace(
        base,
        level_count=k,
        split=math.ceil(k / 2),
        index_max=max(base.index_max, max(key.indices)),
    )


def _legacy_frame(key: LegacyKey, nonce: int) -> keying.KeyFrame:
    return keying.KeyFrame(r=key.r, s=key.s, indices=key.indices,
                           nonce=nonce, issued_at=0)


# --- small I/O helpers ----------------------------------------------------------

def _read_text(path):
    if path is None or path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _read_bytes(path):
    if path is None or path == "-":
        return sys.stdin.buffer.read()
    with open(path, "rb") as fh:
        return fh.read()


def _write_text(path, text):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _load_profile(args):
    """Profile from --profile, or the built-in default; returns the profile
    plus the exact bytes its fingerprint is computed over."""
    if getattr(args, "profile", None):
        raw = _read_bytes(args.profile)
        return qgdb.profile_from_json(raw.decode("utf-8")), raw
    profile = qgdb.default_profile()
    return profile, qgdb.profile_to_json(profile).encode("utf-8")


def _alphabet_for(args, profile):
    if getattr(args, "alphabet", None):
        return codec.get_alphabet(args.alphabet)
    return codec.get_alphabet(profile.alphabet_id)


# --- subcommands ------------------------------------------------------------------

def cmd_profile_new(args):
    profile = qgdb.NetworkProfile(
        profile_id=args.id,
        db_seed=args.db_seed,
        r_min=args.r_min,
        r_max=args.r_max,
        s_max=args.s_max,
        level_count=args.levels,
        split=args.split if args.split is not None else math.ceil(args.levels / 2),
        index_max=args.index_max,
        nonce_upper=args.nonce_upper,
        nonce_lower=args.nonce_lower,
        alphabet_id=args.alphabet,
    )
    _write_text(args.out, qgdb.profile_to_json(profile))
    return 0


def cmd_keygen(args):
    profile, _ = _load_profile(args)
    frame = keying.generate_frame(profile, args.seed, issued_at=args.issued_at)
    _write_text(args.out, keying.frame_to_json(frame, profile.profile_id))
    return 0


def cmd_encrypt(args):
    profile, raw = _load_profile(args)
    frame, _ = keying.load_frame(args.frame)
    key = keying.derive_hidden_key(profile, frame)
    alphabet = _alphabet_for(args, profile)
    plain = codec.text_to_symbols(_read_text(args.infile), alphabet)
    cipher = codec.encrypt(profile, frame, key, plain)
    if args.text:
        _write_text(args.out, codec.format_symbols(cipher))
    else:
        if args.out is None or args.out == "-":
            print("error: binary output needs --out FILE (or use --text)",
                  file=sys.stderr)
            return 1
        blob = codec.pack_container(qgdb.profile_fingerprint(raw), frame, cipher)
        with open(args.out, "wb") as fh:
            fh.write(blob)
    return 0


def cmd_decrypt(args):
    profile, raw = _load_profile(args)
    if args.text:
        if args.key:
            legacy = parse_legacy_key(args.key)
            profile = _legacy_profile(profile, legacy)
            frame = _legacy_frame(legacy, args.nonce)
        elif args.frame:
            frame, _ = keying.load_frame(args.frame)
        else:
            print("error: --text decryption needs --frame or --key",
                  file=sys.stderr)
            return 1
        cipher = codec.parse_symbols(_read_text(args.infile), frame.s)
    else:
        box = codec.unpack_container(_read_bytes(args.infile))
        if box.fingerprint != qgdb.profile_fingerprint(raw):
            print("error: ciphertext was made under a different profile",
                  file=sys.stderr)
            return 1
        frame = box.frame()
        cipher = codec.SymbolStream(order=frame.s, symbols=box.symbols)
    key = keying.derive_hidden_key(profile, frame)
    plain = codec.decrypt(profile, frame, key, cipher)
    _write_text(args.out, codec.symbols_to_text(plain, _alphabet_for(args, profile)))
    return 0


def cmd_analyze(args):
    profile, _ = _load_profile(args)
    if args.frame:
        frame, _ = keying.load_frame(args.frame)
    else:
        frame = keying.generate_frame(profile, args.seed)
    key = keying.derive_hidden_key(profile, frame)
    if args.case is not None:
        report = analysis.run_case(args.case, profile, frame, key,
                                   max_lag=args.max_lag)
    elif args.infile is not None:
        alphabet = codec.get_alphabet(args.alphabet) if args.alphabet else codec.LATIN41
        report = analysis.analyze_text(_read_text(args.infile), profile, frame,
                                       key, alphabet=alphabet,
                                       max_lag=args.max_lag)
    else:
        print("error: analyze needs --case or --in", file=sys.stderr)
        return 1
    out = report.output_autocorrelation
    peak = max(abs(v) for v in out.normalized[1:]) if len(out.normalized) > 1 else 0.0
    print(f"case={report.case_id} n={len(report.input_stream)} "
          f"entropy_in={report.input_entropy:.4f} "
          f"entropy_out={report.output_entropy:.4f} "
          f"distinct_in={report.input_distinct} "
          f"distinct_out={report.output_distinct} "
          f"peak_norm_acf_out={peak:.4f}", file=sys.stderr)
    _write_text(args.out, report.to_csv())
    return 0


def cmd_simulate(args):
    profile, _ = _load_profile(args)
    sim = tasim.sim_init(profile, args.nodes, args.seed,
                         rekey_margin=args.margin,
                         auto_rekey=not args.no_rekey)
    tasim.issue_frame(sim)
    horizon = int(args.duration * profile.nonce_upper)
    step = max(1, profile.nonce_lower // 2)
    sender = 0
    node_ids = sorted(sim.nodes, key=lambda node_id: int(node_id[4:]))
    while sim.clock < horizon:
        tasim.advance(sim, min(step, horizon - sim.clock))
        frm = node_ids[sender % len(node_ids)]
        to = node_ids[(sender + 1) % len(node_ids)]
        tasim.node_send(sim, frm, to, "STATUS OK")
        sender += 1
    _write_text(args.out, tasim.format_log(sim))
    return 0


def cmd_qg_dump(args):
    profile, _ = _load_profile(args)
    square = qgdb.get_quasigroup(profile, args.order, args.index, args.nonce)
    if args.inverse:
        square = latin.left_inverse(square)
    _write_text(args.out, latin.format_table(square))
    return 0


def cmd_legacy_encrypt(args):
    base, _ = _load_profile(args)
    legacy = parse_legacy_key(args.key)
    profile = _legacy_profile(base, legacy)
    frame = _legacy_frame(legacy, args.nonce)
    key = keying.derive_hidden_key(profile, frame)
    alphabet = codec.get_alphabet(args.alphabet)
    plain = codec.text_to_symbols(_read_text(args.infile), alphabet)
    cipher = codec.encrypt(profile, frame, key, plain)
    header = (
        "# legacy inline-key mode: tables come from this package's seeded\n"
        "# generator, so this output is implementation-specific and will not\n"
        "# match other tools that accept the same key syntax.\n"
        f"# key r={legacy.r} s={legacy.s} "
        f"indices={','.join(map(str, legacy.indices))} "
        f"nonce={args.nonce} alphabet={alphabet.id}\n"
    )
    _write_text(args.out, header + codec.format_symbols(cipher))
    return 0


# --- parser ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qgcipher",
        description="Quasigroup string-transformation cipher toolkit.")
    parser.add_argument("--version", action="version",
                        version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, profile=True, out=True, infile=False, alphabet=False):
        if profile:
            p.add_argument("--profile", metavar="FILE",
                           help="network profile JSON (default: built-in)")
        if out:
            p.add_argument("--out", metavar="FILE",
                           help="output file (default: stdout)")
        if infile:
            p.add_argument("--in", dest="infile", metavar="FILE",
                           help="input file (default: stdin)")
        if alphabet:
            p.add_argument("--alphabet", choices=sorted(codec.ALPHABETS),
                           help="text alphabet (default: profile's)")

    p = sub.add_parser("profile-new", help="write a network profile file")
    p.add_argument("--id", default="default")
    p.add_argument("--db-seed", type=int, default=qgdb.DEFAULT_DB_SEED)
    p.add_argument("--r-min", type=int, default=32)
    p.add_argument("--r-max", type=int, default=128)
    p.add_argument("--s-max", type=int, default=256)
    p.add_argument("--levels", type=int, default=6)
    p.add_argument("--split", type=int, default=None,
                   help="leading levels of order r (default: levels/2 rounded up)")
    p.add_argument("--index-max", type=int, default=1000)
    p.add_argument("--nonce-upper", type=int, default=1000, metavar="T")
    p.add_argument("--nonce-lower", type=int, default=100, metavar="T1")
    p.add_argument("--alphabet", choices=sorted(codec.ALPHABETS),
                   default="latin27")
    add_common(p, profile=False)
    p.set_defaults(func=cmd_profile_new)

    p = sub.add_parser("keygen", help="generate a key frame file")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--issued-at", type=int, default=0)
    add_common(p)
    p.set_defaults(func=cmd_keygen)

    p = sub.add_parser("encrypt", help="encrypt text under a key frame")
    p.add_argument("--frame", metavar="FILE", required=True)
    p.add_argument("--text", action="store_true",
                   help="emit space-separated decimal symbols instead of the "
                        "binary container")
    add_common(p, infile=True, alphabet=True)
    p.set_defaults(func=cmd_encrypt)

    p = sub.add_parser("decrypt", help="decrypt a container or symbol text")
    p.add_argument("--frame", metavar="FILE")
    p.add_argument("--key", metavar="R,S,I...",
                   help="inline key (text mode only)")
    p.add_argument("--nonce", type=int, default=0,
                   help="nonce for --key (default 0)")
    p.add_argument("--text", action="store_true",
                   help="input is space-separated decimal symbols")
    add_common(p, infile=True, alphabet=True)
    p.set_defaults(func=cmd_decrypt)

    p = sub.add_parser("analyze", help="scrambling report for a case or file")
    p.add_argument("--case", type=int, choices=sorted(analysis.CASE_INPUTS))
    p.add_argument("--frame", metavar="FILE")
    p.add_argument("--seed", type=int, default=1,
                   help="frame seed when --frame is absent (default 1)")
    p.add_argument("--max-lag", type=int, default=20)
    add_common(p, infile=True, alphabet=True)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("simulate", help="run the authority/node simulation")
    p.add_argument("--nodes", type=int, default=2)
    p.add_argument("--duration", type=float, default=10.0,
                   help="run length in units of the nonce upper bound "
                        "(default 10)")
    p.add_argument("--margin", type=int, default=None,
                   help="rekey margin (default: half the nonce lower bound)")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--no-rekey", action="store_true")
    add_common(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("qg-dump", help="print an indexed table")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--index", type=int, required=True)
    p.add_argument("--nonce", type=int, default=0)
    p.add_argument("--inverse", action="store_true",
                   help="print the left-inverse table instead")
    add_common(p)
    p.set_defaults(func=cmd_qg_dump)

    p = sub.add_parser("legacy-encrypt",
                       help="encrypt with an inline key, symbol-text output")
    p.add_argument("--key", metavar="R,S,I...", required=True)
    p.add_argument("--nonce", type=int, default=0)
    p.add_argument("--alphabet", choices=sorted(codec.ALPHABETS),
                   default="latin41")
    p.add_argument("--profile", metavar="FILE")
    p.add_argument("--out", metavar="FILE")
    p.add_argument("--in", dest="infile", metavar="FILE")
    p.set_defaults(func=cmd_legacy_encrypt)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except QGError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entry():
    sys.exit(main())
