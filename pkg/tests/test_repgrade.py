"""Tests for the representation gradings."""

from __future__ import annotations

from hypothesis import given
from hypothesis import strategies as st

from sliceforge.repgrade import (
    DEG_A_LAMBDA,
    DEG_A_SIGMA,
    DEG_U_2SIGMA,
    DEG_U_LAMBDA,
    DegreeC2,
    DegreeC4,
    induce_c2_to_c4,
    monomial_degree_c4,
    norm_admissible,
)

ints = st.integers(min_value=-10, max_value=10)


def test_dimensions():
    assert DegreeC4(1, 0, 0).dim == 1
    assert DegreeC4(0, 1, 0).dim == 1
    assert DegreeC4(0, 0, 1).dim == 2
    assert DegreeC2(1, 1).dim == 2


def test_restriction():
    assert DegreeC4(1, 2, 3).restrict() == DegreeC2(3, 6)
    assert DegreeC4(0, -1, 0).restrict() == DegreeC2(-1, 0)


@given(ints, ints, ints)
def test_restriction_additive(a, b, c):
    d = DegreeC4(a, b, c)
    assert (d + d).restrict() == d.restrict() + d.restrict()
    assert d.restrict().dim == d.dim


def test_class_degrees():
    assert DEG_A_SIGMA.dim == -1
    assert DEG_A_LAMBDA.dim == -2
    assert DEG_U_2SIGMA.dim == 0
    assert DEG_U_LAMBDA.dim == 0
    # gold relation degree check: u_lambda a_sigma^2 and u_{2sigma} a_lambda agree
    assert DEG_U_LAMBDA + DEG_A_SIGMA.scale(2) == DEG_U_2SIGMA + DEG_A_LAMBDA


def test_induction():
    assert induce_c2_to_c4(DegreeC2(0, 1)) == DegreeC4(0, 0, 1)
    assert induce_c2_to_c4(DegreeC2(1, 0)) == DegreeC4(1, 1, 0)
    # norm of u_{2sigma2} lands in degree of u_lambda^2 u_{2sigma}^{-1}
    assert induce_c2_to_c4(DegreeC2(2, -2)) == DEG_U_LAMBDA.scale(2) - DEG_U_2SIGMA


def test_norm_admissibility():
    assert norm_admissible("C2")
    assert norm_admissible("C4")
    assert not norm_admissible("e")
    assert norm_admissible("e", localized=False)


def test_monomial_degree():
    # t = u_lambda a_lambda^{-1} sits in degree (2, 0, 0)
    assert monomial_degree_c4(0, 1, 0, -1) == DegreeC4(2, 0, 0)
    assert monomial_degree_c4(1, 0, 0, 0) == DegreeC4(2, -2, 0)
