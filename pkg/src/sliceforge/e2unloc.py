"""Unlocalized integral E2-page from the cell models.

Slower companion to the closed-form localized assembly: every spot is
computed as the direct sum, over monomial orbits of the right degree, of the
Bredon homology of the corresponding slice cell (a representation sphere for
gamma-fixed orbits, an induced two-sided cell for free pairs).  Only
nonnegative filtrations occur.  Generator names are positional."""

from __future__ import annotations

from functools import lru_cache
from typing import List

from .bredon import homology_mackey, induced_c2_sphere, mixed_sphere
from .e2page import (
    E2Class,
    E2Entry,
    E2Table,
    MonomialOrbit,
    Window,
    enumerate_orbits,
    monomial_name,
    norm_name,
)
from .mackey import MackeyC4, PresentedGroup


def _block_diag(mats, rows, cols):
    total_r = sum(rows)
    total_c = sum(cols)
    out = [[0] * total_c for _ in range(total_r)]
    r0 = c0 = 0
    for m, r, c in zip(mats, rows, cols):
        for i in range(r):
            for j in range(c):
                out[r0 + i][c0 + j] = m[i][j]
        r0 += r
        c0 += c
    return out


def _sum_groups(groups: List[PresentedGroup]) -> PresentedGroup:
    n = sum(g.n for g in groups)
    rels = []
    off = 0
    for g in groups:
        for rel in g.relations:
            rels.append([0] * off + list(rel) + [0] * (n - off - g.n))
        off += g.n
    return PresentedGroup(n, rels)


def direct_sum(parts: List[MackeyC4]) -> MackeyC4:
    if not parts:
        return MackeyC4.zero()
    n4 = [p.level4.n for p in parts]
    n2 = [p.level2.n for p in parts]
    n1 = [p.level1.n for p in parts]
    return MackeyC4(
        _sum_groups([p.level4 for p in parts]),
        _sum_groups([p.level2 for p in parts]),
        _sum_groups([p.level1 for p in parts]),
        _block_diag([p.res42 for p in parts], n2, n4),
        _block_diag([p.res21 for p in parts], n1, n2),
        _block_diag([p.tr24 for p in parts], n4, n2),
        _block_diag([p.tr12 for p in parts], n2, n1),
        _block_diag([p.weyl2 for p in parts], n2, n2),
        _block_diag([p.weyl1 for p in parts], n1, n1),
    )


@lru_cache(maxsize=None)
def _fixed_cell_homology(d: int, t: int) -> MackeyC4:
    return homology_mackey(mixed_sphere(0, d, d), t).mackey


@lru_cache(maxsize=None)
def _induced_cell_homology(big_d: int, t: int) -> MackeyC4:
    return homology_mackey(induced_c2_sphere(big_d), t).mackey


def orbit_homology(orbit: MonomialOrbit, stem: int) -> MackeyC4:
    """Stem-degree homology of the slice cell attached to one orbit."""
    if orbit.fixed:
        d = orbit.degree // 2
        return _fixed_cell_homology(d, stem - d)
    return _induced_cell_homology(orbit.degree, stem)


def build_unlocalized(window: Window) -> E2Table:
    (s0, s1), (f0, f1) = window
    f0 = max(f0, 0)
    max_d = max(0, (s1 + f1) // 2)
    orbits = enumerate_orbits(max_d)
    table = E2Table(window, False)
    for s in range(s0, s1 + 1):
        for f in range(f0, f1 + 1):
            if (s + f) % 2:
                continue
            d2 = (s + f) // 2
            if d2 < 0:
                continue
            parts = []
            classes: List[E2Class] = []
            for ob in orbits:
                if ob.degree != d2:
                    continue
                h = orbit_homology(ob, s)
                if h.is_zero():
                    continue
                parts.append(h)
                base = norm_name(ob.rep) if ob.fixed else f"Tr[{monomial_name(ob.rep)}]"
                for i in range(h.level4.n):
                    classes.append(E2Class(f"{base}[{i}]", 0, "cell", ob.rep, None))
            if not parts:
                continue
            mk = direct_sum(parts)
            if mk.is_zero():
                continue
            table.entries[(s, f)] = E2Entry(s, f, classes, [], [], mk)
    return table


__all__ = ["direct_sum", "orbit_homology", "build_unlocalized"]
