"""Closed-form coefficients of the Euler-localized constant-Z theories.

At the C2 level the localized coefficient ring is F2[u2S2, aS2^{+-1}]: one
F2 in every degree A + B sigma2 with A even and nonnegative, zero otherwise.

At the C4 level the a_lambda-localized coefficients split as a square-zero
extension: a subring piece on the even part of the trivial grading and a
shifted torsion module piece on the odd part.  Monomials are written in
u2S (= u_{2 sigma}), uL (= u_lambda), aS (= a_sigma) and aL (= a_lambda),
subject to 2 aS = 0 and the gold relation uL aS^2 = 2 u2S aL.  Classes in
the shifted module piece carry the prefix "q" and are simple 2-torsion with
zero restriction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

from .mackey import MackeyC4, PresentedGroup
from .repgrade import DegreeC2, DegreeC4


@dataclass(frozen=True)
class CoefMono:
    """Integer multiple of u2S^x uL^y aS^z aL^e, in gold-reduced normal form
    (y >= 1 forces z <= 1, the coefficient is reduced mod the class order)."""

    coeff: int
    x: int
    y: int
    z: int
    e: int

    def degree(self) -> DegreeC4:
        return DegreeC4(2 * self.x + 2 * self.y, -2 * self.x - self.z, -self.y - self.e)

    def is_zero(self) -> bool:
        return self.coeff == 0

    def name(self) -> str:
        if self.coeff == 0:
            return "0"
        parts = []
        if self.coeff != 1:
            parts.append(str(self.coeff))
        for sym, exp in (("u2S", self.x), ("uL", self.y), ("aS", self.z), ("aL", self.e)):
            if exp == 1:
                parts.append(sym)
            elif exp:
                parts.append(f"{sym}^{exp}")
        return " ".join(parts) if parts else "1"


def gold_reduce(coeff: int, x: int, y: int, z: int, e: int) -> CoefMono:
    """Normal form under uL aS^2 = 2 u2S aL and 2 aS = 0."""
    while y >= 1 and z >= 2:
        y -= 1
        z -= 2
        x += 1
        e += 1
        coeff *= 2
    order = 2 if z >= 1 else 4
    coeff %= order
    return CoefMono(coeff, x, y, z, e)


def mono_mul(a: CoefMono, b: CoefMono) -> CoefMono:
    return gold_reduce(a.coeff * b.coeff, a.x + b.x, a.y + b.y, a.z + b.z, a.e + b.e)


def coef_generator_c2(deg: DegreeC2) -> Optional[str]:
    """Name of the F2 generator of the localized C2 coefficients, or None."""
    if deg.a < 0 or deg.a % 2:
        return None
    m = deg.a // 2
    n = -deg.a - deg.b
    parts = []
    if m == 1:
        parts.append("u2S2")
    elif m:
        parts.append(f"u2S2^{m}")
    if n == 1:
        parts.append("aS2")
    elif n:
        parts.append(f"aS2^{n}")
    return " ".join(parts) if parts else "1"


@dataclass(frozen=True)
class CoefClassC4:
    """One cyclic summand of the C4-level coefficients."""

    name: str
    order: int
    res_nonzero: bool
    transfer_hit: bool


@dataclass(frozen=True)
class CoefPieceC4:
    """The full localized coefficient Mackey functor in one degree."""

    degree: DegreeC4
    classes: Tuple[CoefClassC4, ...]
    c2_generator: Optional[str]
    label: str

    def to_mackey(self) -> MackeyC4:
        n4 = len(self.classes)
        n2 = 1 if self.c2_generator is not None else 0
        p4 = PresentedGroup(n4, [[(c.order if i == j else 0) for j in range(n4)] for i, c in enumerate(self.classes)])
        p2 = PresentedGroup(n2, [[2]] if n2 else [])
        p1 = PresentedGroup.zero()
        res42 = [[1 if c.res_nonzero else 0 for c in self.classes]] if n2 and n4 else []
        # the transfer of the C2 class lands on twice an order-4 generator
        tr24 = [[(c.order // 2 if c.transfer_hit else 0)] for c in self.classes] if n2 and n4 else []
        weyl2 = [[1]] if n2 else []
        return MackeyC4(p4, p2, p1, res42, [], tr24, [], weyl2, [])


def _even_piece(deg: DegreeC4) -> Tuple[CoefClassC4, ...]:
    a, b = deg.a, deg.b
    d = a + b
    if d == 0:
        x = a // 2
        gen = gold_reduce(1, x, 0, 0, -deg.c)
        if x >= 0:
            return (CoefClassC4(gen.name(), 4, True, True),)
        doubled = CoefMono(2, x, 0, 0, -deg.c)
        return (CoefClassC4(doubled.name(), 2, False, True),)
    if d >= 1:
        z = d % 2
        y = (d + z) // 2
        x = a // 2 - y
        gen = CoefMono(1, x, y, z, -deg.c - y)
        if z == 0:
            return (CoefClassC4(gen.name(), 4, True, True),)
        return (CoefClassC4(gen.name(), 2, False, False),)
    # d <= -1: pure Euler multiples, only for nonnegative u2S powers
    x = a // 2
    if x < 0:
        return ()
    gen = CoefMono(1, x, 0, -d, -deg.c)
    return (CoefClassC4(gen.name(), 2, False, False),)


def _odd_piece(deg: DegreeC4) -> Tuple[CoefClassC4, ...]:
    a, b = deg.a, deg.b
    if a > -3 or a + b < 0:
        return ()
    x = (a + 1) // 2
    z = -b - 2 * x
    # only the classes on the a + b = 0 diagonal (aS-exponent -1) are hit
    hit = a + b == 0
    name = f"q {CoefMono(1, x, 0, z, -deg.c).name()}"
    return (CoefClassC4(name, 2, False, hit),)


def coef_piece_c4(deg: DegreeC4) -> CoefPieceC4:
    c2_gen = coef_generator_c2(deg.restrict())
    if deg.a % 2 == 0:
        classes = _even_piece(deg)
    else:
        classes = _odd_piece(deg)
    piece = CoefPieceC4(deg, classes, c2_gen, "")
    label = piece.to_mackey().classify()
    return CoefPieceC4(deg, classes, c2_gen, label)


__all__ = [
    "CoefMono",
    "CoefClassC4",
    "CoefPieceC4",
    "gold_reduce",
    "mono_mul",
    "coef_generator_c2",
    "coef_piece_c4",
]
