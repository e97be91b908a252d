"""Three-level C4 Mackey functors over presented abelian groups: axiom
checking, canonical invariants, and data-driven classification into chart
glyphs.

Levels are indexed 4, 2, 1 for the values at C4/C4, C4/C2, C4/e.  Each level
is a presented group Z^n / relations; maps are integer matrices acting on
column coordinate vectors.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .abelian import (
    FGAbelianGroup,
    Lattice,
    Matrix,
    Subquotient,
    identity,
    mat_mul,
    mat_vec,
    zeros,
)

CATALOG_PATH = os.path.join(os.path.dirname(__file__), "data", "mackey_catalog.json")


@dataclass
class PresentedGroup:
    """Z^n modulo the row span of `relations`."""

    n: int
    relations: Matrix = field(default_factory=list)

    def lattice(self) -> Lattice:
        return Lattice(self.relations, self.n)

    def group(self) -> FGAbelianGroup:
        return FGAbelianGroup.from_presentation(self.relations, self.n)

    def contains_relation(self, vec: Sequence[int]) -> bool:
        return self.lattice().contains(vec)

    @staticmethod
    def zero() -> "PresentedGroup":
        return PresentedGroup(0, [])

    @staticmethod
    def cyclic(order: int) -> "PresentedGroup":
        return PresentedGroup(1, [[order]] if order else [])


def _is_zero_map(m: Matrix) -> bool:
    return all(all(x == 0 for x in row) for row in m)


@dataclass
class MackeyC4:
    """A C4 Mackey functor with explicit generator bases.

    Maps: res42: level4 -> level2, res21: level2 -> level1, tr24: level2 ->
    level4, tr12: level1 -> level2, weyl2: the C4/C2 Weyl involution on
    level2, weyl1: the generator of C4 acting on level1.
    """

    level4: PresentedGroup
    level2: PresentedGroup
    level1: PresentedGroup
    res42: Matrix
    res21: Matrix
    tr24: Matrix
    tr12: Matrix
    weyl2: Matrix
    weyl1: Matrix

    @staticmethod
    def zero() -> "MackeyC4":
        z = PresentedGroup.zero()
        return MackeyC4(z, z, z, [], [], [], [], [], [])

    @staticmethod
    def constant_z() -> "MackeyC4":
        """The constant Mackey functor: all levels Z, res = 1, tr = index."""
        g = PresentedGroup(1, [])
        return MackeyC4(g, g, g, [[1]], [[1]], [[2]], [[2]], [[1]], [[1]])

    def levels(self) -> Tuple[FGAbelianGroup, FGAbelianGroup, FGAbelianGroup]:
        return self.level4.group(), self.level2.group(), self.level1.group()

    def is_zero(self) -> bool:
        return all(g.is_trivial() for g in self.levels())

    def assert_two_local(self) -> None:
        for g in self.levels():
            for t in g.torsion:
                while t % 2 == 0:
                    t //= 2
                if t != 1:
                    raise ValueError(f"odd torsion {t} in Mackey functor level")

    def check_axioms(self) -> List[str]:
        """Verify well-definedness, the double coset formula, Weyl
        equivariance, and the cohomological condition; returns violations."""
        out: List[str] = []
        maps = [
            ("res42", self.res42, self.level4, self.level2),
            ("res21", self.res21, self.level2, self.level1),
            ("tr24", self.tr24, self.level2, self.level4),
            ("tr12", self.tr12, self.level1, self.level2),
            ("weyl2", self.weyl2, self.level2, self.level2),
            ("weyl1", self.weyl1, self.level1, self.level1),
        ]
        for name, m, src, dst in maps:
            if src.n and (len(m) != dst.n or any(len(r) != src.n for r in m)):
                out.append(f"{name}: wrong shape")
                return out
            dst_lat = dst.lattice()
            for rel in src.relations:
                if not dst_lat.contains(mat_vec(m, rel)):
                    out.append(f"{name}: not well defined on relations")
                    break
        if out:
            return out

        def eq(name: str, a: Matrix, b: Matrix, grp: PresentedGroup) -> None:
            lat = grp.lattice()
            for j in range(len(a[0]) if a else 0):
                col = [a[i][j] - b[i][j] for i in range(len(a))]
                if not lat.contains(col):
                    out.append(name)
                    return

        n4, n2, n1 = self.level4.n, self.level2.n, self.level1.n
        if n2:
            # double coset C2\C4/C2: res42 tr24 = 1 + weyl2
            eq(
                "double coset: res42*tr24 != 1 + weyl2",
                mat_mul(self.res42, self.tr24) if n4 else zeros(n2, n2),
                _mat_add(identity(n2), self.weyl2),
                self.level2,
            )
            eq("weyl2 not an involution", mat_mul(self.weyl2, self.weyl2), identity(n2), self.level2)
        if n4:
            eq(
                "cohomological: tr24*res42 != 2",
                mat_mul(self.tr24, self.res42) if n2 else zeros(n4, n4),
                _scale(identity(n4), 2),
                self.level4,
            )
        if n1:
            # double coset e\C2/e inside C4: res21 tr12 = 1 + weyl1^2
            eq(
                "double coset: res21*tr12 != 1 + weyl1^2",
                mat_mul(self.res21, self.tr12),
                _mat_add(identity(n1), mat_mul(self.weyl1, self.weyl1)),
                self.level1,
            )
            eq(
                "weyl1 order does not divide 4",
                mat_mul(mat_mul(self.weyl1, self.weyl1), mat_mul(self.weyl1, self.weyl1)),
                identity(n1),
                self.level1,
            )
        if n2:
            eq(
                "cohomological: tr12*res21 != 2",
                mat_mul(self.tr12, self.res21) if n1 else zeros(n2, n2),
                _scale(identity(n2), 2),
                self.level2,
            )
        if n4 and n2:
            eq("weyl2*res42 != res42", mat_mul(self.weyl2, self.res42), self.res42, self.level2)
            eq("tr24*weyl2 != tr24", mat_mul(self.tr24, self.weyl2), self.tr24, self.level4)
        if n2 and n1:
            eq(
                "res21 not Weyl equivariant",
                mat_mul(self.res21, self.weyl2),
                mat_mul(self.weyl1, self.res21),
                self.level1,
            )
            eq(
                "tr12 not Weyl equivariant",
                mat_mul(self.weyl2, self.tr12),
                mat_mul(self.tr12, self.weyl1),
                self.level2,
            )
        return out

    def signature(self) -> Tuple:
        """Isomorphism-invariant classification key: invariant factors of the
        three levels plus invariant factors of the images of res, tr and
        1 - weyl at each interface."""
        g4, g2, g1 = self.levels()

        def img(m: Matrix, src: PresentedGroup, dst: PresentedGroup) -> Tuple:
            if not src.n or not dst.n or _is_zero_map(m):
                return ()
            cols = [[m[i][j] for i in range(dst.n)] for j in range(src.n)]
            sq = Subquotient(dst.n, dst.lattice(), Lattice(cols, dst.n))
            g = sq.group()
            return g.torsion + (0,) * g.rank

        one_minus_w2 = (
            _mat_add(identity(self.level2.n), _scale(self.weyl2, -1)) if self.level2.n else []
        )
        return (
            g4.torsion + (0,) * g4.rank,
            g2.torsion + (0,) * g2.rank,
            g1.torsion + (0,) * g1.rank,
            img(self.res42, self.level4, self.level2),
            img(self.tr24, self.level2, self.level4),
            img(self.res21, self.level2, self.level1),
            img(self.tr12, self.level1, self.level2),
            img(one_minus_w2, self.level2, self.level2),
        )

    def classify(self, catalog: Optional[Dict[str, dict]] = None) -> str:
        if self.is_zero():
            return "zero"
        if catalog is None:
            catalog = load_catalog()
        key = json.dumps(self.signature(), sort_keys=True)
        for label, entry in catalog.items():
            if json.dumps(entry["signature"], sort_keys=True) == key:
                return label
        g4, g2, g1 = self.levels()
        return f"custom({g4}; {g2}; {g1})"

    def to_json(self) -> dict:
        return {
            "levels": [list(g.torsion) + [0] * g.rank for g in self.levels()],
            "res": [self.res42, self.res21],
            "tr": [self.tr24, self.tr12],
            "weyl": [self.weyl2, self.weyl1],
            "label": self.classify(),
        }


def _mat_add(a: Matrix, b: Matrix) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def _scale(a: Matrix, k: int) -> Matrix:
    return [[k * x for x in row] for row in a]


def _tuplify(x):
    if isinstance(x, list):
        return tuple(_tuplify(v) for v in x)
    return x


def load_catalog() -> Dict[str, dict]:
    with open(CATALOG_PATH) as fh:
        raw = json.load(fh)
    return {label: {"signature": _tuplify(e["signature"]), "glyph": e["glyph"]} for label, e in raw.items()}


# Constructors for the standard functors appearing in localized charts
# (level1 = 0 throughout after inverting a_lambda).


def circle() -> MackeyC4:
    """Level4 = Z/4, level2 = Z/2, res onto, tr = multiplication by 2."""
    return MackeyC4(
        PresentedGroup.cyclic(4),
        PresentedGroup.cyclic(2),
        PresentedGroup.zero(),
        [[1]], [], [[2]], [], [[1]], [],
    )


def induced() -> MackeyC4:
    """Induced from C2: level4 = Z/2{Tr p}, level2 = Z/2{p, gp} swapped by
    the Weyl action; res = diagonal, tr = fold."""
    return MackeyC4(
        PresentedGroup.cyclic(2),
        PresentedGroup(2, [[2, 0], [0, 2]]),
        PresentedGroup.zero(),
        [[1], [1]], [], [[1, 1]], [], [[0, 1], [1, 0]], [],
    )


def bullet() -> MackeyC4:
    """Level4 = Z/2, level2 = 0."""
    return MackeyC4(
        PresentedGroup.cyclic(2),
        PresentedGroup.zero(),
        PresentedGroup.zero(),
        [], [], [], [], [], [],
    )


def bar_bullet() -> MackeyC4:
    """Level4 = 0, level2 = Z/2 (Weyl-invariant)."""
    return MackeyC4(
        PresentedGroup.zero(),
        PresentedGroup.cyclic(2),
        PresentedGroup.zero(),
        [], [], [], [], [[1]], [],
    )


def triangle_down() -> MackeyC4:
    """Level4 = Z/2, level2 = Z/2, res = 0, tr onto."""
    return MackeyC4(
        PresentedGroup.cyclic(2),
        PresentedGroup.cyclic(2),
        PresentedGroup.zero(),
        [[0]], [], [[1]], [], [[1]], [],
    )


def triangle_up() -> MackeyC4:
    """Level4 = Z/2, level2 = Z/2, res injective, tr = 0."""
    return MackeyC4(
        PresentedGroup.cyclic(2),
        PresentedGroup.cyclic(2),
        PresentedGroup.zero(),
        [[1]], [], [[0]], [], [[1]], [],
    )


STANDARD = {
    "circle": circle,
    "hat_bullet": induced,
    "bullet": bullet,
    "bar_bullet": bar_bullet,
    "triangle_down": triangle_down,
    "triangle_up": triangle_up,
    "box": MackeyC4.constant_z,
}


def build_catalog() -> Dict[str, dict]:
    """Regenerate the classification catalog from the standard constructors."""
    glyphs = {
        "circle": "◦",
        "hat_bullet": "•̂",
        "bullet": "•",
        "bar_bullet": "•̄",
        "triangle_down": "▼",
        "triangle_up": "▲",
        "box": "□",
    }
    out = {}
    for label, ctor in STANDARD.items():
        m = ctor()
        out[label] = {"signature": m.signature(), "glyph": glyphs[label]}
    return out


__all__ = [
    "PresentedGroup",
    "MackeyC4",
    "circle",
    "induced",
    "bullet",
    "bar_bullet",
    "triangle_down",
    "triangle_up",
    "load_catalog",
    "build_catalog",
    "CATALOG_PATH",
    "STANDARD",
]
