"""The encryption engine.

A single level chains the input through one table: the first output symbol
is leader * input[1], and every later output symbol is the previous output
times the next input symbol.  Decryption replays the chain with left
division.  The full encryptor stacks several levels, the first `split`
levels over tables of order r and the rest over order s; because r < s,
order-r symbols are always valid inputs to the wider tables, so the stream's
alphabet widens exactly once and every ciphertext symbol lands in 1..s.

Text handling lives here too: the 27-symbol alphabet (A..Z plus space) is
the default, and a 41-symbol extension adds basic punctuation and digits.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass, field
from typing import Mapping

from .errors import (
    CiphertextSymbolTooLarge,
    ContainerError,
    KeyMismatch,
    LeaderOutOfRange,
    PlaintextSymbolTooLarge,
    SymbolOutOfRange,
    UnmappableCharacter,
)
from .keying import HiddenKey, KeyFrame, level_orders
from .latin import LatinSquare, left_inverse
from .qgdb import NetworkProfile, get_quasigroup


@dataclass(frozen=True)
class SymbolStream:
    """A sequence of symbols together with its declared alphabet bound."""

    order: int
    symbols: tuple

    def __post_init__(self):
        if self.order < 1:
            raise SymbolOutOfRange(f"stream order must be >= 1, got {self.order}")
        for pos, sym in enumerate(self.symbols, 1):
            if not 1 <= sym <= self.order:
                raise SymbolOutOfRange(
                    f"symbol {sym} at position {pos} outside 1..{self.order}",
                    position=pos)

    def __len__(self):
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)


# --- text <-> symbols ---------------------------------------------------------

@dataclass(frozen=True)
class Alphabet:
    """Invertible character coding: char_to_symbol and symbol_to_char are
    mutual inverses on their domains."""

    id: str
    char_to_symbol: Mapping = field(repr=False)
    symbol_to_char: Mapping = field(repr=False)

    @property
    def size(self) -> int:
        return len(self.char_to_symbol)


def _make_alphabet(alphabet_id: str, chars: str) -> Alphabet:
    c2s = {ch: i for i, ch in enumerate(chars, 1)}
    s2c = {i: ch for i, ch in enumerate(chars, 1)}
    return Alphabet(id=alphabet_id, char_to_symbol=c2s, symbol_to_char=s2c)


LATIN27 = _make_alphabet("latin27", "ABCDEFGHIJKLMNOPQRSTUVWXYZ ")
LATIN41 = _make_alphabet("latin41", "ABCDEFGHIJKLMNOPQRSTUVWXYZ .,0123456789'\n")

ALPHABETS = {a.id: a for a in (LATIN27, LATIN41)}


def get_alphabet(alphabet_id: str) -> Alphabet:
    try:
        return ALPHABETS[alphabet_id]
    except KeyError:
        raise KeyError(f"unknown alphabet {alphabet_id!r}; "
                       f"choose from {sorted(ALPHABETS)}") from None


def fold_text(text: str) -> str:
    """Canonical form before mapping: ASCII lowercase is uppercased and any
    whitespace character becomes a single space.  Other characters pass
    through unchanged."""
    return "".join(
        " " if ch.isspace() else
        chr(ord(ch) - 32) if "a" <= ch <= "z" else
        ch
        for ch in text)


def text_to_symbols(text: str, alphabet: Alphabet = LATIN27) -> SymbolStream:
    """Fold the text and map each character to its symbol.

    Raises UnmappableCharacter naming the 1-indexed position and the
    original (pre-fold) character of the first failure.
    """
    symbols = []
    for pos, (raw, ch) in enumerate(zip(text, fold_text(text)), 1):
        sym = alphabet.char_to_symbol.get(ch)
        if sym is None:
            raise UnmappableCharacter(pos, raw)
        symbols.append(sym)
    return SymbolStream(order=alphabet.size, symbols=tuple(symbols))


def symbols_to_text(stream: SymbolStream, alphabet: Alphabet = LATIN27) -> str:
    """Inverse of text_to_symbols on folded text."""
    chars = []
    for pos, sym in enumerate(stream.symbols, 1):
        ch = alphabet.symbol_to_char.get(sym)
        if ch is None:
            raise SymbolOutOfRange(
                f"symbol {sym} at position {pos} exceeds alphabet "
                f"size {alphabet.size}", position=pos)
        chars.append(ch)
    return "".join(chars)


# --- single-level transformation ----------------------------------------------

def _check_level_args(square: LatinSquare, leader: int, stream: SymbolStream):
    if not 1 <= leader <= square.order:
        raise LeaderOutOfRange(f"leader {leader} outside 1..{square.order}")
    for pos, sym in enumerate(stream.symbols, 1):
        if sym > square.order:
            raise SymbolOutOfRange(
                f"symbol {sym} at position {pos} exceeds table order "
                f"{square.order}", position=pos)


def encrypt_level(square: LatinSquare, leader: int,
                  stream: SymbolStream) -> SymbolStream:
    """One chained pass: out[1] = leader * in[1], out[i] = out[i-1] * in[i]."""
    _check_level_args(square, leader, stream)
    rows = square.rows
    out = []
    prev = leader
    for sym in stream.symbols:
        prev = rows[prev - 1][sym - 1]
        out.append(prev)
    return SymbolStream(order=square.order, symbols=tuple(out))


def decrypt_level(square: LatinSquare, leader: int,
                  cipher: SymbolStream) -> SymbolStream:
    """Exact inverse of encrypt_level over the same table and leader:
    out[1] = leader \\ in[1], out[i] = in[i-1] \\ in[i]."""
    _check_level_args(square, leader, cipher)
    inv_rows = left_inverse(square).rows
    out = []
    prev = leader
    for sym in cipher.symbols:
        out.append(inv_rows[prev - 1][sym - 1])
        prev = sym
    return SymbolStream(order=square.order, symbols=tuple(out))


# --- multi-level indexed encryptor ---------------------------------------------

def _check_key(profile: NetworkProfile, frame: KeyFrame, key: HiddenKey):
    orders = level_orders(profile, frame)
    if key.level_orders != orders:
        raise KeyMismatch(f"key level orders {key.level_orders} do not match "
                          f"frame level orders {orders}")
    if len(key.multipliers) != len(orders):
        raise KeyMismatch(f"expected {len(orders)} multipliers, "
                          f"got {len(key.multipliers)}")
    for j, (q, n_j) in enumerate(zip(key.multipliers, orders), 1):
        if not 1 <= q <= n_j:
            raise KeyMismatch(f"multiplier {q} at level {j} outside 1..{n_j}")
    return orders


def encrypt(profile: NetworkProfile, frame: KeyFrame, key: HiddenKey,
            plaintext: SymbolStream) -> SymbolStream:
    """Run the plaintext through every level of the indexed encryptor.

    Level j uses the table selected by (level order, frame index j, nonce)
    and the j-th multiplier as leader.  Plaintext symbols must fit the
    first table (1..r); the result has order s.
    """
    orders = _check_key(profile, frame, key)
    for pos, sym in enumerate(plaintext.symbols, 1):
        if sym > frame.r:
            raise PlaintextSymbolTooLarge(pos, sym, frame.r)
    symbols = plaintext.symbols
    for order, index, q in zip(orders, frame.indices, key.multipliers):
        rows = get_quasigroup(profile, order, index, frame.nonce).rows
        out = []
        prev = q
        for sym in symbols:
            prev = rows[prev - 1][sym - 1]
            out.append(prev)
        symbols = out
    return SymbolStream(order=frame.s, symbols=tuple(symbols))


def decrypt(profile: NetworkProfile, frame: KeyFrame, key: HiddenKey,
            ciphertext: SymbolStream) -> SymbolStream:
    """Exact inverse of encrypt: levels in reverse order, left division via
    each level's materialized inverse table.  The result has order r."""
    orders = _check_key(profile, frame, key)
    for pos, sym in enumerate(ciphertext.symbols, 1):
        if sym > frame.s:
            raise CiphertextSymbolTooLarge(pos, sym, frame.s)
    symbols = ciphertext.symbols
    for order, index, q in zip(reversed(orders), reversed(frame.indices),
                               reversed(key.multipliers)):
        square = get_quasigroup(profile, order, index, frame.nonce)
        inv_rows = left_inverse(square).rows
        out = []
        prev = q
        for sym in symbols:
            out.append(inv_rows[prev - 1][sym - 1])
            prev = sym
        symbols = out
    return SymbolStream(order=frame.r, symbols=tuple(symbols))


# --- ciphertext container -------------------------------------------------------

CONTAINER_MAGIC = b"QGE1"
CONTAINER_VERSION = 1
_HEADER = struct.Struct("<4sBQQHHH")


@dataclass(frozen=True)
class Container:
    """Parsed ciphertext container: enough to rebuild the frame (minus
    issued_at, which decryption does not need) plus the payload."""

    fingerprint: int
    nonce: int
    r: int
    s: int
    indices: tuple
    symbols: tuple

    def frame(self) -> KeyFrame:
        return KeyFrame(r=self.r, s=self.s, indices=self.indices,
                        nonce=self.nonce, issued_at=0)


def pack_container(fingerprint: int, frame: KeyFrame,
                   payload: SymbolStream) -> bytes:
    """Binary layout, all fields little-endian: magic, version byte,
    u64 profile fingerprint, u64 nonce, u16 r/s/k, k u16 indices,
    u64 payload length, then the payload as u16 symbols."""
    for index in frame.indices:
        if not 0 <= index <= 0xFFFF:
            raise ContainerError(f"index {index} does not fit in 16 bits")
    head = _HEADER.pack(CONTAINER_MAGIC, CONTAINER_VERSION, fingerprint,
                        frame.nonce, frame.r, frame.s, len(frame.indices))
    idx = struct.pack(f"<{len(frame.indices)}H", *frame.indices)
    n = len(payload.symbols)
    body = struct.pack("<Q", n) + struct.pack(f"<{n}H", *payload.symbols)
    return head + idx + body


def unpack_container(blob: bytes) -> Container:
    if len(blob) < _HEADER.size:
        raise ContainerError("container truncated before header")
    magic, version, fingerprint, nonce, r, s, k = _HEADER.unpack_from(blob)
    if magic != CONTAINER_MAGIC:
        raise ContainerError(f"bad magic {magic!r}")
    if version != CONTAINER_VERSION:
        raise ContainerError(f"unsupported container version {version}")
    off = _HEADER.size
    need = off + 2 * k + 8
    if len(blob) < need:
        raise ContainerError("container truncated in header")
    indices = struct.unpack_from(f"<{k}H", blob, off)
    off += 2 * k
    (n,) = struct.unpack_from("<Q", blob, off)
    off += 8
    if len(blob) != off + 2 * n:
        raise ContainerError(
            f"payload length mismatch: header says {n} symbols, "
            f"container holds {(len(blob) - off) // 2}")
    symbols = struct.unpack_from(f"<{n}H", blob, off)
    return Container(fingerprint=fingerprint, nonce=nonce, r=r, s=s,
                     indices=indices, symbols=symbols)


# --- printable symbol text mode ----------------------------------------------------

def format_symbols(stream: SymbolStream) -> str:
    """Space-separated decimal symbols on one line."""
    return " ".join(str(s) for s in stream.symbols) + "\n"


def parse_symbols(text: str, order: int) -> SymbolStream:
    """Parse space/newline-separated decimal symbols; lines starting with
    '#' are comments and are skipped."""
    tokens = []
    for line in text.splitlines():
        if line.lstrip().startswith("#"):
            continue
        tokens.extend(line.split())
    try:
        symbols = tuple(int(tok) for tok in tokens)
    except ValueError as exc:
        raise ContainerError(f"not a decimal symbol: {exc}") from None
    return SymbolStream(order=order, symbols=symbols)
