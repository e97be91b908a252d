"""Integral E2-page assembly for the localized slice spectral sequence.

Slice cells are indexed by orbits of monomials in t1, gt1, t2, gt2, ... under
the residual action swapping ti and gti.  A gamma-fixed monomial (the norm
of q) contributes the C4 slice cell S^{d rho_4}; a free pair {p, gp}
contributes the induced cell C4+ smash_{C2} S^{D rho_2}.  Tensoring with the
localized coefficients puts every class of an orbit of rho_2-degree D at
stem s in filtration f = 2D - s, so each (stem, filtration) spot with
s + f even and (s - f)/4 the u2S2-power is assembled independently:

  level2 basis: p u2S2^m aS2^f for every monomial p of degree D = (s+f)/2,
  provided m = (s-f)/4 is a nonnegative integer;
  level4 basis: Tr[p u2S2^m aS2^f] for each free pair, plus the single
  coefficient class of each fixed orbit at degree (s-d, -d, -d).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Tuple

from .coefficients import CoefClassC4, CoefMono, coef_piece_c4
from .mackey import MackeyC4, PresentedGroup
from .repgrade import DegreeC4

Orbit = Tuple[Tuple[int, int], ...]  # ((m1, n1), (m2, n2), ...): exponents of ti, gti


def gamma_monomial(o: Orbit) -> Orbit:
    return tuple((n, m) for m, n in o)


def trim(o: Iterable[Tuple[int, int]]) -> Orbit:
    out = list(o)
    while out and out[-1] == (0, 0):
        out.pop()
    return tuple(out)


def rho2_degree(o: Orbit) -> int:
    return sum((2 ** (i + 1) - 1) * (m + n) for i, (m, n) in enumerate(o))


def is_fixed(o: Orbit) -> bool:
    return o == gamma_monomial(o)


def orbit_rep(o: Orbit) -> Orbit:
    return min(o, gamma_monomial(o))


def monomial_name(o: Orbit) -> str:
    parts = []
    for i, (m, n) in enumerate(o, start=1):
        if m == 1:
            parts.append(f"t{i}")
        elif m:
            parts.append(f"t{i}^{m}")
        if n == 1:
            parts.append(f"gt{i}")
        elif n:
            parts.append(f"gt{i}^{n}")
    return " ".join(parts) if parts else "1"


def norm_name(o: Orbit) -> str:
    parts = []
    for i, (m, n) in enumerate(o, start=1):
        assert m == n
        if m == 1:
            parts.append(f"N(t{i})")
        elif m:
            parts.append(f"N(t{i})^{m}")
    return " ".join(parts) if parts else "1"


def monomials_of_degree(d: int) -> List[Orbit]:
    """All monomials in ti, gti of rho_2-degree exactly d."""
    out: List[Orbit] = []

    def rec(i: int, remaining: int, acc: List[Tuple[int, int]]) -> None:
        w = 2 ** i - 1
        if remaining == 0:
            out.append(trim(acc))
            return
        if w > remaining:
            return
        for m in range(remaining // w + 1):
            for n in range((remaining - w * m) // w + 1):
                rec(i + 1, remaining - w * (m + n), acc + [(m, n)])

    rec(1, d, [])
    return sorted(set(out))


@dataclass(frozen=True)
class MonomialOrbit:
    rep: Orbit

    @property
    def fixed(self) -> bool:
        return is_fixed(self.rep)

    @property
    def degree(self) -> int:
        return rho2_degree(self.rep)

    @property
    def stabilizer(self) -> int:
        return 4 if self.fixed else 2


def enumerate_orbits(max_degree: int) -> List[MonomialOrbit]:
    """Orbit representatives of all monomials of rho_2-degree <= max_degree."""
    seen = []
    for d in range(max_degree + 1):
        reps = sorted({orbit_rep(o) for o in monomials_of_degree(d)})
        seen.extend(MonomialOrbit(r) for r in reps)
    return seen


@dataclass(frozen=True)
class E2Class:
    """A level4 basis class of one spot."""

    name: str
    order: int
    kind: str  # "norm" | "transfer"
    orbit: Orbit
    coef: Optional[CoefClassC4]


Window = Tuple[Tuple[int, int], Tuple[int, int]]  # (stem range, filtration range)

DEFAULT_WINDOW: Window = ((-1, 10), (-10, 30))


@dataclass
class E2Entry:
    stem: int
    filtration: int
    c4: List[E2Class]
    c2: List[str]
    c2_orbits: List[Orbit]
    mackey: MackeyC4


class E2Table:
    def __init__(self, window: Window, localized: bool):
        self.window = window
        self.localized = localized
        self.entries: Dict[Tuple[int, int], E2Entry] = {}

    def entry(self, stem: int, filtration: int) -> Optional[E2Entry]:
        return self.entries.get((stem, filtration))

    def spots(self) -> List[Tuple[int, int]]:
        return sorted(self.entries)

    def chart_json(self) -> str:
        (s0, s1), (f0, f1) = self.window
        dots = []
        for (s, f), e in sorted(self.entries.items()):
            dots.append(
                {
                    "stem": s,
                    "filtration": f,
                    "mackey": e.mackey.classify(),
                    "names": [c.name for c in e.c4],
                    "c2_names": e.c2,
                }
            )
        return json.dumps(
            {
                "schema": "sliceforge/1",
                "window": {"stem_min": s0, "stem_max": s1, "filt_min": f0, "filt_max": f1},
                "dots": dots,
            },
            indent=1,
        )


def _c2_class_name(p: Orbit, m: int, f: int) -> str:
    parts = [] if p == () else [monomial_name(p)]
    if m == 1:
        parts.append("u2S2")
    elif m:
        parts.append(f"u2S2^{m}")
    if f == 1:
        parts.append("aS2")
    elif f:
        parts.append(f"aS2^{f}")
    return " ".join(parts) if parts else "1"


def _spot_mackey(c4: List[E2Class], c2_orbits: List[Orbit]) -> MackeyC4:
    n4, n2 = len(c4), len(c2_orbits)
    p4 = PresentedGroup(n4, [[(c.order if i == j else 0) for j in range(n4)] for i, c in enumerate(c4)])
    p2 = PresentedGroup(n2, [[(2 if i == j else 0) for j in range(n2)] for i in range(n2)])
    p1 = PresentedGroup.zero()
    idx2 = {o: j for j, o in enumerate(c2_orbits)}
    res42 = [[0] * n4 for _ in range(n2)]
    tr24 = [[0] * n2 for _ in range(n4)]
    weyl2 = [[0] * n2 for _ in range(n2)]
    for j, o in enumerate(c2_orbits):
        weyl2[idx2[gamma_monomial(o)]][j] = 1
    for i, cls in enumerate(c4):
        if cls.kind == "transfer":
            if cls.orbit in idx2:
                res42[idx2[cls.orbit]][i] = 1
                res42[idx2[gamma_monomial(cls.orbit)]][i] = 1
                tr24[i][idx2[cls.orbit]] = 1
                tr24[i][idx2[gamma_monomial(cls.orbit)]] = 1
        else:
            assert cls.coef is not None
            if cls.orbit in idx2:
                if cls.coef.res_nonzero:
                    res42[idx2[cls.orbit]][i] = 1
                if cls.coef.transfer_hit:
                    tr24[i][idx2[cls.orbit]] = cls.order // 2
    return MackeyC4(p4, p2, p1, res42, [], tr24, [], weyl2, [])


def build_e2(window: Window = DEFAULT_WINDOW, localized: bool = True) -> E2Table:
    """Assemble the integral E2-page in the window.

    The localized page is built from the closed-form coefficients.  The
    unlocalized page (localized=False) keeps only nonnegative filtrations
    and is assembled degreewise from the cell-model homology oracle, so it
    is slower and carries positional rather than monomial generator names."""
    if not localized:
        from . import e2unloc

        return e2unloc.build_unlocalized(window)
    (s0, s1), (f0, f1) = window
    max_d = max(0, (s1 + f1) // 2)
    table = E2Table(window, True)
    orbits = enumerate_orbits(max_d)
    for s in range(s0, s1 + 1):
        for f in range(f0, f1 + 1):
            if (s + f) % 2:
                continue
            d2 = (s + f) // 2
            if d2 < 0:
                continue
            m4 = s - f  # 4m for the u2S2-power
            c2_orbits = []
            c2_names = []
            if m4 % 4 == 0 and m4 >= 0:
                for p in monomials_of_degree(d2):
                    c2_orbits.append(p)
                    c2_names.append(_c2_class_name(p, m4 // 4, f))
            c4: List[E2Class] = []
            for ob in orbits:
                if ob.degree != d2:
                    continue
                if ob.fixed:
                    d = ob.degree // 2
                    piece = coef_piece_c4(DegreeC4(s - d, -d, -d))
                    for cls in piece.classes:
                        name = cls.name if norm_name(ob.rep) == "1" else (
                            f"{norm_name(ob.rep)} {cls.name}" if cls.name != "1" else norm_name(ob.rep)
                        )
                        c4.append(E2Class(name, cls.order, "norm", ob.rep, cls))
                else:
                    if m4 % 4 == 0 and m4 >= 0:
                        rep = ob.rep
                        c4.append(
                            E2Class(f"Tr[{_c2_class_name(rep, m4 // 4, f)}]", 2, "transfer", rep, None)
                        )
            if not c4 and not c2_orbits:
                continue
            mk = _spot_mackey(c4, c2_orbits)
            table.entries[(s, f)] = E2Entry(s, f, c4, c2_names, c2_orbits, mk)
    return table


def localization_map(window: Window = DEFAULT_WINDOW) -> dict:
    """Compare the unlocalized and localized pages over the window.

    Above the zero line the map is an isomorphism, which is asserted
    signature by signature.  On the zero line the kernel is the part of the
    top cell hit by transfers from the free level; its ranks are reported.
    Strictly negative filtrations only exist after localization and are
    listed as new spots."""
    loc = build_e2(window, localized=True)
    unloc = build_e2(window, localized=False)
    iso_spots = []
    zero_line = []
    new_spots = []
    for (s, f), e in sorted(loc.entries.items()):
        u = unloc.entry(s, f)
        if f > 0:
            them = u.mackey.signature() if u else MackeyC4.zero().signature()
            assert e.mackey.signature() == them, f"localization not iso at {(s, f)}"
            iso_spots.append((s, f))
        elif f == 0:
            free_rank = u.mackey.level4.group().rank if u else 0
            zero_line.append(
                {
                    "stem": s,
                    "unlocalized": u.mackey.classify() if u else "zero",
                    "localized": e.mackey.classify(),
                    "kernel_rank": free_rank,
                }
            )
        else:
            new_spots.append((s, f))
    for (s, f), u in sorted(unloc.entries.items()):
        if f > 0 and loc.entry(s, f) is None:
            assert u.mackey.is_zero(), f"unlocalized class dies at {(s, f)}"
    return {"iso_spots": iso_spots, "zero_line": zero_line, "new_spots": new_spots}


def in_vanishing_region(stem: int, filtration: int) -> bool:
    """The region f <= 3s and f >= -s that bounds the localized page."""
    return filtration <= 3 * stem and filtration >= -stem


__all__ = [
    "Orbit",
    "MonomialOrbit",
    "E2Class",
    "E2Entry",
    "E2Table",
    "DEFAULT_WINDOW",
    "build_e2",
    "enumerate_orbits",
    "monomials_of_degree",
    "monomial_name",
    "norm_name",
    "gamma_monomial",
    "orbit_rep",
    "rho2_degree",
    "is_fixed",
    "in_vanishing_region",
]
