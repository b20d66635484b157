#!/usr/bin/env python3
"""Latin squares as multiplication tables: lookups, left division, and the
left-inverse table that makes decryption possible.

Run: python demos/01_latin_square_basics.py
"""

import qgcipher as qg

print("A Latin square is an n x n table where every row and every column")
print("is a permutation of 1..n.  Here is an order-4 example:\n")

table = [
    [2, 3, 1, 4],
    [4, 1, 3, 2],
    [3, 4, 2, 1],
    [1, 2, 4, 3],
]
square = qg.validate_latin_square(table)
print(qg.format_table(square))

print("Multiplication is a table lookup: row a, column b.")
print(f"  2 * 3 = {qg.multiply(square, 2, 3)}")
print(f"  1 * 1 = {qg.multiply(square, 1, 1)}")

print("\nLeft division a \\ b answers: which x satisfies a * x = b?")
print("Rows are permutations, so x always exists and is unique.")
print(f"  2 \\ 3 = {qg.left_divide(square, 2, 3)}   "
      f"(check: 2 * {qg.left_divide(square, 2, 3)} = "
      f"{qg.multiply(square, 2, qg.left_divide(square, 2, 3))})")

print("\nCollecting every a \\ b into a table gives the left inverse,")
print("itself a Latin square:\n")
inverse = qg.left_inverse(square)
print(qg.format_table(inverse))
print("Applying the construction twice returns the original:",
      qg.left_inverse(inverse) == square)

print("\nAn isotopy permutes rows, columns, and symbols; the result is")
print("always another Latin square.  Swapping the first two rows:\n")
swapped = qg.apply_isotopy(
    square,
    qg.Permutation((2, 1, 3, 4)),
    qg.Permutation.identity(4),
    qg.Permutation.identity(4),
)
print(qg.format_table(swapped))
