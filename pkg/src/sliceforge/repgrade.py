"""Representation gradings for C4 and C2.

A C4 degree is a triple (a, b, c) meaning a + b*sigma + c*lambda, where sigma
is the real sign representation of C4 and lambda the faithful 2-dimensional
rotation representation.  A C2 degree is a pair (A, B) meaning A + B*sigma2
with sigma2 the sign representation of C2.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Tuple

SUBGROUPS = ("e", "C2", "C4")


@dataclass(frozen=True)
class DegreeC4:
    """Virtual C4 representation a + b*sigma + c*lambda."""

    a: int
    b: int
    c: int

    def __add__(self, other: "DegreeC4") -> "DegreeC4":
        return DegreeC4(self.a + other.a, self.b + other.b, self.c + other.c)

    def __sub__(self, other: "DegreeC4") -> "DegreeC4":
        return DegreeC4(self.a - other.a, self.b - other.b, self.c - other.c)

    def __neg__(self) -> "DegreeC4":
        return DegreeC4(-self.a, -self.b, -self.c)

    def scale(self, k: int) -> "DegreeC4":
        return DegreeC4(k * self.a, k * self.b, k * self.c)

    @property
    def dim(self) -> int:
        return self.a + self.b + 2 * self.c

    def restrict(self) -> "DegreeC2":
        """Restriction to C2: sigma restricts to the trivial representation
        and lambda restricts to 2*sigma2."""
        return DegreeC2(self.a + self.b, 2 * self.c)


@dataclass(frozen=True)
class DegreeC2:
    """Virtual C2 representation A + B*sigma2."""

    a: int
    b: int

    def __add__(self, other: "DegreeC2") -> "DegreeC2":
        return DegreeC2(self.a + other.a, self.b + other.b)

    def __sub__(self, other: "DegreeC2") -> "DegreeC2":
        return DegreeC2(self.a - other.a, self.b - other.b)

    def __neg__(self) -> "DegreeC2":
        return DegreeC2(-self.a, -self.b)

    def scale(self, k: int) -> "DegreeC2":
        return DegreeC2(k * self.a, k * self.b)

    @property
    def dim(self) -> int:
        return self.a + self.b


def induce_c2_to_c4(deg: DegreeC2) -> DegreeC4:
    """Degree of the norm of a C2 class: norming S^V gives S^{ind V} with
    ind(trivial) = 1 + sigma and ind(sigma2) = lambda, so A + B*sigma2 norms
    to A + A*sigma + B*lambda."""
    return DegreeC4(deg.a, deg.a, deg.b)


def norm_admissible(subgroup: str, localized: bool = True) -> bool:
    """Whether the norm from `subgroup` to C4 survives inverting a_lambda.

    After inverting a_lambda the norms from the trivial subgroup die; norms
    from C2 (and the identity norm from C4) remain.
    """
    if subgroup not in SUBGROUPS:
        raise ValueError(f"unknown subgroup {subgroup!r}")
    if not localized:
        return True
    return subgroup != "e"


# Named degrees of the standard Euler and orientation classes.
DEG_A_SIGMA = DegreeC4(0, -1, 0)
DEG_A_LAMBDA = DegreeC4(0, 0, -1)
DEG_U_2SIGMA = DegreeC4(2, -2, 0)
DEG_U_LAMBDA = DegreeC4(2, 0, -1)
DEG_A_SIGMA2 = DegreeC2(0, -1)
DEG_U_2SIGMA2 = DegreeC2(2, -2)


def monomial_degree_c4(x: int, y: int, z: int, v: int) -> DegreeC4:
    """Degree of u_{2sigma}^x u_lambda^y a_sigma^z a_lambda^v."""
    return (
        DEG_U_2SIGMA.scale(x)
        + DEG_U_LAMBDA.scale(y)
        + DEG_A_SIGMA.scale(z)
        + DEG_A_LAMBDA.scale(v)
    )


def monomial_degree_c2(m: int, n: int) -> DegreeC2:
    """Degree of u_{2sigma2}^m a_{sigma2}^n."""
    return DEG_U_2SIGMA2.scale(m) + DEG_A_SIGMA2.scale(n)


__all__ = [
    "DegreeC4",
    "DegreeC2",
    "induce_c2_to_c4",
    "norm_admissible",
    "monomial_degree_c4",
    "monomial_degree_c2",
    "DEG_A_SIGMA",
    "DEG_A_LAMBDA",
    "DEG_U_2SIGMA",
    "DEG_U_LAMBDA",
    "DEG_A_SIGMA2",
    "DEG_U_2SIGMA2",
    "SUBGROUPS",
]
