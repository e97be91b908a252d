"""Small GF(2) linear algebra on int-bitset rows.

A vector in F_2^n is a Python int whose bit i is coordinate i; a matrix is a
list of such ints.
"""

from __future__ import annotations

from typing import List, Optional, Tuple


def gf2_row_reduce(rows: List[int]) -> List[int]:
    """Row-reduce in place style; returns reduced nonzero rows sorted by pivot."""
    basis: List[int] = []
    for row in rows:
        for b in basis:
            low = b & -b
            if row & low:
                row ^= b
        if row:
            basis.append(row)
            # keep fully reduced
            low = row & -row
            for i in range(len(basis) - 1):
                if basis[i] & low:
                    basis[i] ^= row
    return sorted(basis, key=lambda r: r & -r)


def gf2_rank(rows: List[int]) -> int:
    return len(gf2_row_reduce(rows))


def gf2_in_span(row: int, basis: List[int]) -> bool:
    for b in basis:
        low = b & -b
        if row & low:
            row ^= b
    return row == 0


def gf2_reduce_against(row: int, basis: List[int]) -> int:
    for b in basis:
        low = b & -b
        if row & low:
            row ^= b
    return row


def gf2_solve(cols: List[int], target: int) -> Optional[int]:
    """Solve sum_{i in S} cols[i] = target; returns a bitmask S or None."""
    basis: List[Tuple[int, int]] = []  # (reduced column, combination mask)
    for i, col in enumerate(cols):
        mask = 1 << i
        for b, m in basis:
            low = b & -b
            if col & low:
                col ^= b
                mask ^= m
        if col:
            basis.append((col, mask))
    out = 0
    for b, m in basis:
        low = b & -b
        if target & low:
            target ^= b
            out ^= m
    return out if target == 0 else None


def gf2_kernel(cols: List[int], n_cols: int) -> List[int]:
    """Kernel of the map F_2^n_cols -> V, x |-> sum x_i cols[i]; masks returned."""
    basis: List[Tuple[int, int]] = []
    out: List[int] = []
    for i in range(n_cols):
        col = cols[i]
        mask = 1 << i
        for b, m in basis:
            low = b & -b
            if col & low:
                col ^= b
                mask ^= m
        if col:
            basis.append((col, mask))
        else:
            out.append(mask)
    return out


__all__ = [
    "gf2_row_reduce",
    "gf2_rank",
    "gf2_in_span",
    "gf2_reduce_against",
    "gf2_solve",
    "gf2_kernel",
]
