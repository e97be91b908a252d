"""Tests for GF(2) bitset linear algebra."""

from __future__ import annotations

from hypothesis import given, settings
from hypothesis import strategies as st

from sliceforge.gf2 import (
    gf2_in_span,
    gf2_kernel,
    gf2_rank,
    gf2_row_reduce,
    gf2_solve,
)

rows_strategy = st.lists(st.integers(min_value=0, max_value=255), min_size=0, max_size=8)


@given(rows_strategy)
@settings(max_examples=60)
def test_row_reduce_preserves_span(rows):
    basis = gf2_row_reduce(rows)
    for r in rows:
        assert gf2_in_span(r, basis)
    for b in basis:
        # reconstructible from the original rows by brute force rank check
        assert gf2_rank(rows + [b]) == gf2_rank(rows)


@given(rows_strategy)
@settings(max_examples=60)
def test_rank_bounds(rows):
    r = gf2_rank(rows)
    assert 0 <= r <= min(len(rows), 8)


def test_solve():
    cols = [0b011, 0b110]
    assert gf2_solve(cols, 0b101) == 0b11
    assert gf2_solve(cols, 0b011) == 0b01
    assert gf2_solve(cols, 0b001) is None


@given(rows_strategy, st.integers(min_value=0, max_value=255))
@settings(max_examples=60)
def test_solve_consistent(cols, mask):
    mask &= (1 << len(cols)) - 1
    target = 0
    for i, c in enumerate(cols):
        if mask & (1 << i):
            target ^= c
    sol = gf2_solve(cols, target)
    assert sol is not None
    acc = 0
    for i, c in enumerate(cols):
        if sol & (1 << i):
            acc ^= c
    assert acc == target


@given(rows_strategy)
@settings(max_examples=60)
def test_kernel(cols):
    ker = gf2_kernel(cols, len(cols))
    for mask in ker:
        acc = 0
        for i, c in enumerate(cols):
            if mask & (1 << i):
                acc ^= c
        assert acc == 0
    assert len(ker) == len(cols) - gf2_rank(cols)
