"""Latin-square algebra over the symbols 1..n.

A quasigroup's multiplication table is a Latin square: every row and every
column is a permutation of 1..n.  This module validates tables, performs
row/column lookups (multiplication), solves a * x = b by left division,
materializes the left-inverse parastrophe used for decryption, and applies
isotopies (row/column/symbol permutations).

All interfaces speak 1-indexed symbols, matching the usual way these
tables are printed; storage is 0-indexed numpy underneath.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import (
    DuplicateInColumn,
    DuplicateInRow,
    EntryOutOfRange,
    InvalidOrder,
    NotSquare,
    SizeMismatch,
    SymbolOutOfRange,
)

# Symbols must fit in 16 bits so they can be serialized into the binary
# ciphertext container.
MAX_ORDER = 65535


class LatinSquare:
    """An immutable order-n multiplication table with entries in 1..n.

    Build instances with validate_latin_square(), base_square(), or
    apply_isotopy(); the raw constructor trusts its input.
    """

    def __init__(self, table: np.ndarray):
        table = np.ascontiguousarray(table, dtype=np.int32)
        table.setflags(write=False)
        self._table = table
        self.order = int(table.shape[0])

    @property
    def table(self) -> np.ndarray:
        """The n x n table, entries 1..n, read-only."""
        return self._table

    @cached_property
    def rows(self) -> list:
        """Table as nested lists, for tight per-symbol loops."""
        return self._table.tolist()

    @cached_property
    def _inverse(self) -> "LatinSquare":
        n = self.order
        inv = np.empty((n, n), dtype=np.int32)
        inv[np.arange(n)[:, None], self._table - 1] = np.arange(1, n + 1)
        return LatinSquare(inv)

    def __eq__(self, other):
        if not isinstance(other, LatinSquare):
            return NotImplemented
        return self.order == other.order and np.array_equal(self._table, other._table)

    def __hash__(self):
        return hash((self.order, self._table.tobytes()))

    def __repr__(self):
        return f"LatinSquare(order={self.order})"


@dataclass(frozen=True)
class Permutation:
    """A bijection on 1..n, stored as the image tuple (mapping[i-1] = image of i)."""

    mapping: tuple

    def __post_init__(self):
        n = len(self.mapping)
        if n < 1:
            raise InvalidOrder("permutation must have size >= 1")
        if sorted(self.mapping) != list(range(1, n + 1)):
            raise SymbolOutOfRange("mapping is not a bijection on 1..n")

    @property
    def size(self) -> int:
        return len(self.mapping)

    def __call__(self, x: int) -> int:
        return self.mapping[x - 1]

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))


def validate_latin_square(table) -> LatinSquare:
    """Check that `table` is a Latin square and wrap it.

    Raises NotSquare, InvalidOrder, EntryOutOfRange (first offending cell),
    DuplicateInRow, or DuplicateInColumn (first offending line).  Rows are
    checked before columns.
    """
    arr = np.asarray(table)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.size == 0:
        raise NotSquare(f"expected a non-empty square table, got shape {arr.shape}")
    n = arr.shape[0]
    if n > MAX_ORDER:
        raise InvalidOrder(f"order {n} exceeds maximum {MAX_ORDER}")
    if not np.issubdtype(arr.dtype, np.integer):
        try:
            cast = arr.astype(np.int64, casting="unsafe")
        except (ValueError, TypeError):
            for r in range(n):
                for c in range(n):
                    try:
                        int(arr[r, c])
                    except (ValueError, TypeError):
                        raise EntryOutOfRange(r + 1, c + 1) from None
            raise
        bad = ~(cast == arr)
        if bad.any():
            r, c = np.argwhere(bad)[0]
            raise EntryOutOfRange(int(r) + 1, int(c) + 1)
        arr = cast
    out = (arr < 1) | (arr > n)
    if out.any():
        r, c = np.argwhere(out)[0]
        raise EntryOutOfRange(int(r) + 1, int(c) + 1)
    expect = np.arange(1, n + 1)
    row_ok = (np.sort(arr, axis=1) == expect).all(axis=1)
    if not row_ok.all():
        raise DuplicateInRow(int(np.argmin(row_ok)) + 1)
    col_ok = (np.sort(arr, axis=0) == expect[:, None]).all(axis=0)
    if not col_ok.all():
        raise DuplicateInColumn(int(np.argmin(col_ok)) + 1)
    return LatinSquare(arr)


def _check_symbol(square: LatinSquare, sym: int, what: str) -> None:
    if not 1 <= sym <= square.order:
        raise SymbolOutOfRange(f"{what} {sym} outside 1..{square.order}")


def multiply(square: LatinSquare, a: int, b: int) -> int:
    """a * b: the table entry at row a, column b."""
    _check_symbol(square, a, "row symbol")
    _check_symbol(square, b, "column symbol")
    return int(square._table[a - 1, b - 1])


def left_divide(square: LatinSquare, a: int, b: int) -> int:
    """a \\ b: the unique x with a * x = b, found by scanning row a."""
    _check_symbol(square, a, "row symbol")
    _check_symbol(square, b, "target symbol")
    col = np.nonzero(square._table[a - 1] == b)[0]
    return int(col[0]) + 1


def left_inverse(square: LatinSquare) -> LatinSquare:
    """The left-inverse parastrophe: entry (a, b) is a \\ b.

    The result is itself a Latin square, and applying left_inverse twice
    returns the original table.  The table is materialized once and cached
    on the input square, so repeated decryption against the same square
    pays for the construction only once.
    """
    return square._inverse


def apply_isotopy(square: LatinSquare, alpha: Permutation, beta: Permutation,
                  gamma: Permutation) -> LatinSquare:
    """Permute rows (alpha), columns (beta), and symbols (gamma).

    Convention: result(x, y) = gamma(table(alpha(x), beta(y))).  Any isotope
    of a Latin square is again a Latin square.
    """
    n = square.order
    if not (alpha.size == beta.size == gamma.size == n):
        raise SizeMismatch(
            f"permutation sizes {alpha.size}/{beta.size}/{gamma.size} "
            f"do not match order {n}")
    a = np.asarray(alpha.mapping, dtype=np.int64) - 1
    b = np.asarray(beta.mapping, dtype=np.int64) - 1
    g = np.asarray(gamma.mapping, dtype=np.int32)
    return LatinSquare(g[square._table[a[:, None], b[None, :]] - 1])


def format_table(square: LatinSquare) -> str:
    """Dump format: first line ``order n``, then n rows of n decimal symbols."""
    lines = [f"order {square.order}"]
    lines.extend(" ".join(str(v) for v in row) for row in square.rows)
    return "\n".join(lines) + "\n"
