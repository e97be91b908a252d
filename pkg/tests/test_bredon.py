"""Tests for the brute-force Bredon homology oracle."""

import pytest
from hypothesis import given, settings, strategies as st

from sliceforge.bredon import (
    bredon_homology,
    homology_mackey,
    lambda_block,
    localized_homotopy,
    mixed_sphere,
    sigma_block,
    sphere_complex,
    tensor,
)
from sliceforge.repgrade import DegreeC4


@given(st.integers(-4, 4), st.integers(-3, 3))
@settings(max_examples=40, deadline=None)
def test_mixed_complexes_are_valid(b, c):
    cpx = tensor(sigma_block(b), lambda_block(c))
    cpx.check()


@given(st.integers(0, 3), st.integers(0, 2), st.integers(0, 2))
@settings(max_examples=25, deadline=None)
def test_sphere_complex_valid_and_euler(a, b, c):
    cpx = sphere_complex(DegreeC4(a, b, c))
    cpx.check()
    chi = sum((-1) ** d * cpx.dim_size(d) for d in cpx.dims())
    # a reduced model of a sphere of dimension a + b + 2c
    assert chi == (-1) ** ((a + b + 2 * c) % 2)


def _levels(mk):
    return tuple((g.torsion, g.rank) for g in mk.levels())


def test_block_vs_tensor_two_sigma():
    block = sigma_block(2)
    tens = tensor(sigma_block(1), sigma_block(1))
    for d in range(0, 3):
        a = homology_mackey(block, d).mackey
        b = homology_mackey(tens, d).mackey
        assert a.signature() == b.signature(), d


def test_block_vs_tensor_dual_two_sigma():
    block = sigma_block(-2)
    tens = tensor(sigma_block(-1), sigma_block(-1))
    for d in range(-2, 1):
        a = homology_mackey(block, d).mackey
        b = homology_mackey(tens, d).mackey
        assert a.signature() == b.signature(), d


def test_block_vs_tensor_two_lambda():
    block = lambda_block(2)
    tens = tensor(lambda_block(1), lambda_block(1))
    for d in range(0, 5):
        a = homology_mackey(block, d).mackey
        b = homology_mackey(tens, d).mackey
        assert a.signature() == b.signature(), d


def test_lambda_sphere_homology():
    h = bredon_homology(lambda_block(1))
    assert h[0].classify() == "circle"
    assert h[1].classify() == "zero"
    assert h[2].classify() == "box"


def test_sigma_sphere_homology():
    h = bredon_homology(sigma_block(1))
    assert h[0].classify() == "bullet"


def test_dual_sigma_sphere_homology():
    # top level dies, the lower levels keep a sign-twisted Z
    h = bredon_homology(sigma_block(-1))
    assert h[-1].classify() == "custom(0; Z; Z)"
    assert [(g.torsion, g.rank) for g in h[-1].levels()] == [((), 0), ((), 1), ((), 1)]
    assert h[0].classify() == "zero"


def test_axioms_hold_across_grid():
    for b in range(-2, 3):
        for c in range(-2, 3):
            cpx = mixed_sphere(0, b, c)
            for d in cpx.dims():
                mk = homology_mackey(cpx, d).mackey
                assert mk.check_axioms() == [], (b, c, d)


LOCALIZED_CASES = [
    ((0, 0, 0), 0, "circle"),
    ((0, -1, 0), 0, "bullet"),
    ((0, -2, 0), 0, "bullet"),
    ((2, 0, -1), 0, "circle"),
    ((2, -2, 0), 0, "circle"),
    ((2, -1, -1), 0, "bullet"),
    ((0, 0, -1), 0, "circle"),
    ((0, 0, 1), 0, "circle"),
    ((-2, 2, 0), 0, "triangle_down"),
    ((2, -2, -2), 0, "circle"),
    ((1, 0, 0), 0, "zero"),
    ((-2, 1, 0), 0, "zero"),
    ((-3, 3, 0), 0, "triangle_down"),
    ((-3, 1, 0), 0, "zero"),
    ((-1, 1, 0), 0, "bar_bullet"),
    ((-5, 5, 0), 0, "triangle_down"),
]


@pytest.mark.parametrize("deg,k,label", LOCALIZED_CASES)
def test_localized_homotopy_values(deg, k, label):
    mk = localized_homotopy(DegreeC4(*deg), k)
    assert mk.classify() == label
    assert mk.check_axioms() == []


def test_localized_shift_invariance():
    # pi_{d+k} only depends on d + k, not the split between them
    a = localized_homotopy(DegreeC4(2, -2, 0), 0)
    b = localized_homotopy(DegreeC4(0, -2, 0), 2)
    assert a.signature() == b.signature()


def test_localized_lambda_periodicity():
    # multiplication by a_lambda is inverted, so the answer is c-periodic
    for deg in [(0, -1, 0), (2, -2, 0), (-2, 2, 0)]:
        base = localized_homotopy(DegreeC4(*deg), 0)
        shifted = localized_homotopy(DegreeC4(deg[0], deg[1], deg[2] - 3), 0)
        assert base.signature() == shifted.signature()
