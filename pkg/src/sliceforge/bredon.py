"""Brute-force Bredon homology oracle.

Representation spheres are modeled by small equivariant cell complexes,
stored at the underlying level as chain complexes of free Z-modules with a
C4-action gamma (a signed permutation in all the building blocks, an
arbitrary integer matrix after tensoring).  The value at a subgroup level is
the invariant sublattice; restriction is inclusion of invariants, transfer
is the sum over coset translates, and homology is taken levelwise with
Smith normal form.

Building blocks: S^{n sigma} has one fixed 0-cell and a C4/C2 orbit of
cells in each dimension 1..n with boundaries alternating between the fold
map, 1 - swap and 1 + swap; S^{n lambda} has one fixed 0-cell and a free
orbit in each dimension 1..2n alternating between augmentation, 1 - gamma
and the norm.  Negative spheres use the dual blocks (cofiber models), never
levelwise duals.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from typing import Dict, Hashable, List, Optional, Tuple

from .abelian import (
    Lattice,
    Matrix,
    Subquotient,
    identity,
    kernel_basis,
    map_on_subquotient,
    mat_mul,
    mat_vec,
    transpose,
    zeros,
)
from .mackey import MackeyC4, PresentedGroup
from .repgrade import DegreeC4

STABILIZATION_CAP = 16


@dataclass
class ChainComplex:
    """Underlying-level chain complex with C4-action.

    cells[d] are hashable cell names; gamma[d] is the action matrix in that
    dimension; boundary[d] maps C_d to C_{d-1} (absent means zero).
    """

    cells: Dict[int, List[Hashable]] = field(default_factory=dict)
    gamma: Dict[int, Matrix] = field(default_factory=dict)
    boundary: Dict[int, Matrix] = field(default_factory=dict)

    def dim_size(self, d: int) -> int:
        return len(self.cells.get(d, []))

    def dims(self) -> List[int]:
        return sorted(self.cells)

    def check(self) -> None:
        """Assert dd = 0 and gamma-equivariance of every boundary."""
        for d, bnd in self.boundary.items():
            lower = self.boundary.get(d - 1)
            if lower is not None:
                comp = mat_mul(lower, bnd)
                assert all(all(x == 0 for x in row) for row in comp), f"dd != 0 at dim {d}"
            g_src = self.gamma[d]
            g_dst = self.gamma.get(d - 1)
            if g_dst is not None:
                left = mat_mul(g_dst, bnd)
                right = mat_mul(bnd, g_src)
                assert left == right, f"boundary not equivariant at dim {d}"
        for d, g in self.gamma.items():
            g4 = mat_mul(mat_mul(g, g), mat_mul(g, g))
            assert g4 == identity(len(g)), f"gamma^4 != 1 at dim {d}"

    def gamma_power(self, d: int, t: int) -> Matrix:
        g = self.gamma[d]
        out = identity(len(g))
        for _ in range(t % 4):
            out = mat_mul(out, g)
        return out

    def shift(self, k: int) -> "ChainComplex":
        return ChainComplex(
            {d + k: v for d, v in self.cells.items()},
            {d + k: v for d, v in self.gamma.items()},
            {d + k: v for d, v in self.boundary.items()},
        )


def point() -> ChainComplex:
    return ChainComplex({0: ["pt"]}, {0: [[1]]}, {})


_SWAP = [[0, 1], [1, 0]]
_FOLD2 = [[1, 1]]
_CYC = [[0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]]
_NORM4 = [[1, 1, 1, 1] for _ in range(4)]
_ONE_MINUS_CYC = [[1 if i == j else 0 for j in range(4)] for i in range(4)]
for _i in range(4):
    for _j in range(4):
        _ONE_MINUS_CYC[_i][_j] -= _CYC[_i][_j]
_ONE_MINUS_SWAP = [[1, -1], [-1, 1]]
_ONE_PLUS_SWAP = [[1, 1], [1, 1]]


def sigma_block(n: int) -> ChainComplex:
    """Cell model of S^{n sigma} (n may be negative: the dual model)."""
    c = ChainComplex({0: [("s", 0, 0)]}, {0: [[1]]}, {})
    if n == 0:
        return c
    if n > 0:
        for d in range(1, n + 1):
            c.cells[d] = [("s", d, 0), ("s", d, 1)]
            c.gamma[d] = [row[:] for row in _SWAP]
            if d == 1:
                c.boundary[1] = [row[:] for row in _FOLD2]
            elif d % 2 == 0:
                c.boundary[d] = [row[:] for row in _ONE_MINUS_SWAP]
            else:
                c.boundary[d] = [row[:] for row in _ONE_PLUS_SWAP]
    else:
        m = -n
        for d in range(1, m + 1):
            c.cells[-d] = [("s", -d, 0), ("s", -d, 1)]
            c.gamma[-d] = [row[:] for row in _SWAP]
        c.boundary[0] = [[1], [1]]
        for d in range(1, m):
            if d % 2 == 1:
                c.boundary[-d] = [row[:] for row in _ONE_MINUS_SWAP]
            else:
                c.boundary[-d] = [row[:] for row in _ONE_PLUS_SWAP]
    c.check()
    return c


def lambda_block(n: int) -> ChainComplex:
    """Cell model of S^{n lambda} (n may be negative: the dual model)."""
    c = ChainComplex({0: [("l", 0, 0)]}, {0: [[1]]}, {})
    if n == 0:
        return c
    if n > 0:
        for d in range(1, 2 * n + 1):
            c.cells[d] = [("l", d, i) for i in range(4)]
            c.gamma[d] = [row[:] for row in _CYC]
            if d == 1:
                c.boundary[1] = [[1, 1, 1, 1]]
            elif d % 2 == 0:
                c.boundary[d] = [row[:] for row in _ONE_MINUS_CYC]
            else:
                c.boundary[d] = [row[:] for row in _NORM4]
    else:
        m = -n
        for d in range(1, 2 * m + 1):
            c.cells[-d] = [("l", -d, i) for i in range(4)]
            c.gamma[-d] = [row[:] for row in _CYC]
        c.boundary[0] = [[1], [1], [1], [1]]
        for d in range(1, 2 * m):
            if d % 2 == 1:
                c.boundary[-d] = [row[:] for row in _ONE_MINUS_CYC]
            else:
                c.boundary[-d] = [row[:] for row in _NORM4]
    c.check()
    return c


def tensor(a: ChainComplex, b: ChainComplex) -> ChainComplex:
    """Smash of cell models: tensor with diagonal gamma and Koszul signs."""
    out = ChainComplex()
    index: Dict[Tuple[int, int, int, int], int] = {}
    for da in a.dims():
        for db in b.dims():
            d = da + db
            lst = out.cells.setdefault(d, [])
            for i, na in enumerate(a.cells[da]):
                for j, nb in enumerate(b.cells[db]):
                    index[(da, db, i, j)] = len(lst)
                    lst.append((na, nb))
    for d, lst in out.cells.items():
        n = len(lst)
        g = zeros(n, n)
        bnd = zeros(len(out.cells.get(d - 1, [])), n)
        col = 0
        for da in a.dims():
            db = d - da
            if db not in b.cells:
                continue
            ga, gb = a.gamma[da], b.gamma[db]
            bnd_a = a.boundary.get(da)
            bnd_b = b.boundary.get(db)
            for i in range(len(a.cells[da])):
                for j in range(len(b.cells[db])):
                    src = index[(da, db, i, j)]
                    # gamma
                    for i2 in range(len(a.cells[da])):
                        if ga[i2][i]:
                            for j2 in range(len(b.cells[db])):
                                if gb[j2][j]:
                                    g[index[(da, db, i2, j2)]][src] += ga[i2][i] * gb[j2][j]
                    # boundary: da part
                    if bnd_a is not None:
                        for i2 in range(len(a.cells[da - 1])):
                            if bnd_a[i2][i]:
                                bnd[index[(da - 1, db, i2, j)]][src] += bnd_a[i2][i]
                    # boundary: db part with Koszul sign (-1)^da
                    if bnd_b is not None:
                        sign = -1 if da % 2 else 1
                        for j2 in range(len(b.cells[db - 1])):
                            if bnd_b[j2][j]:
                                bnd[index[(da, db - 1, i, j2)]][src] += sign * bnd_b[j2][j]
            col += 1
        out.gamma[d] = g
        if bnd and any(any(row) for row in bnd):
            out.boundary[d] = bnd
        elif len(out.cells.get(d - 1, [])) and n:
            out.boundary[d] = bnd
    out.check()
    return out


def sphere_complex(deg: DegreeC4) -> ChainComplex:
    """Reduced cell model of S^{a + b sigma + c lambda} with a, b, c >= 0."""
    if deg.b < 0 or deg.c < 0 or deg.a < 0:
        raise ValueError("sphere_complex needs nonnegative coefficients")
    return tensor(sigma_block(deg.b), lambda_block(deg.c)).shift(deg.a)


def mixed_sphere(a: int, b: int, c: int) -> ChainComplex:
    """Cell model of S^{a + b sigma + c lambda} for any signs."""
    return tensor(sigma_block(b), lambda_block(c)).shift(a)


def induced_c2_sphere(d: int) -> ChainComplex:
    """Cell model of C4+ smash_{C2} S^{d + d sigma_2} for d >= 0.

    Start from the C2-cell model of S^{d sigma_2} (fixed 0-cell plus a free
    C2-orbit in each dimension 1..d, boundaries alternating fold, 1 - tau,
    1 + tau), induce up by doubling every cell, then shift by the trivial
    part d."""
    if d < 0:
        raise ValueError("induced_c2_sphere needs d >= 0")
    cells: Dict[int, List[Hashable]] = {0: [("i", 0, 0, 0), ("i", 1, 0, 0)]}
    gamma: Dict[int, Matrix] = {0: [[0, 1], [1, 0]]}
    boundary: Dict[int, Matrix] = {}
    for k in range(1, d + 1):
        # induced free orbit: cells (copy, k, j); gamma cycles
        # (0,j=0) -> (1,j=0) -> (0,j=1) -> (1,j=1) -> (0,j=0)
        cells[k] = [("i", 0, k, 0), ("i", 1, k, 0), ("i", 0, k, 1), ("i", 1, k, 1)]
        gamma[k] = [[0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]]
        if k == 1:
            # each 1-cell attaches to the fixed point of its copy
            boundary[1] = [[1, 0, 1, 0], [0, 1, 0, 1]]
        else:
            sign = -1 if k % 2 == 0 else 1
            blk = [[1, 0, sign, 0], [0, 1, 0, sign], [sign, 0, 1, 0], [0, sign, 0, 1]]
            boundary[k] = blk
    cpx = ChainComplex(cells, gamma, boundary)
    cpx.check()
    return cpx.shift(d)


class LevelData:
    """Invariant sublattice of a complex at one subgroup level.

    level is 1, 2 or 4 (index of the subgroup); bases are cached per
    dimension, boundaries are expressed in the invariant bases.
    """

    def __init__(self, cpx: ChainComplex, level: int):
        self.cpx = cpx
        self.level = level
        self._basis: Dict[int, Matrix] = {}

    def basis(self, d: int) -> Matrix:
        if d in self._basis:
            return self._basis[d]
        n = self.cpx.dim_size(d)
        if n == 0:
            rows: Matrix = []
        elif self.level == 1:
            rows = identity(n)
        else:
            t = 4 // self.level
            g = self.cpx.gamma_power(d, t)
            one_minus = [[(1 if i == j else 0) - g[i][j] for j in range(n)] for i in range(n)]
            # HNF-canonical so that every consumer uses the same coordinates
            rows = Lattice(kernel_basis(one_minus), n).rows
        self._basis[d] = rows
        return rows

    def lattice(self, d: int) -> Lattice:
        return Lattice(self.basis(d), max(self.cpx.dim_size(d), 1))

    def boundary(self, d: int) -> Matrix:
        """Boundary C_d -> C_{d-1} in invariant coordinates."""
        src = self.basis(d)
        dst = self.basis(d - 1)
        bnd = self.cpx.boundary.get(d)
        if not src or bnd is None:
            return [[0] * len(src) for _ in dst]
        dst_lat = Lattice(dst, self.cpx.dim_size(d - 1))
        cols = []
        for v in src:
            img = mat_vec(bnd, v)
            coeffs = dst_lat.reduce(img)
            assert coeffs is not None, "boundary leaves the invariant lattice"
            cols.append(coeffs)
        return transpose(cols) if cols and dst else [[0] * len(src) for _ in dst]

    def subquotient(self, d: int) -> Subquotient:
        n = len(self.basis(d))
        d_out = self.boundary(d)
        d_in = self.boundary(d + 1)
        if n == 0:
            return Subquotient(0, Lattice([], 0), Lattice([], 0), Lattice([], 0))
        ker = kernel_basis(d_out) if d_out else identity(n)
        cycles = Lattice(ker, n)
        image_rows = transpose(d_in) if d_in and d_in[0] else []
        bound = Lattice(image_rows, n)
        return Subquotient(n, Lattice([], n), cycles, bound)


def _express_in(level: LevelData, d: int, vectors: Matrix) -> Matrix:
    """Columns of the given e-coordinate vectors in the level's basis."""
    lat = level.lattice(d)
    cols = []
    for v in vectors:
        coeffs = lat.reduce(v)
        assert coeffs is not None
        cols.append(coeffs)
    return transpose(cols) if cols and level.basis(d) else [[0] * len(vectors) for _ in level.basis(d)]


@dataclass
class HomologySlice:
    """All data of one homological dimension: subquotients per level and the
    chain-level res/tr/weyl matrices in invariant coordinates."""

    mackey: MackeyC4
    sq1: Subquotient
    sq2: Subquotient
    sq4: Subquotient
    lev1: LevelData
    lev2: LevelData
    lev4: LevelData
    dim: int


def homology_mackey(cpx: ChainComplex, d: int) -> HomologySlice:
    lev1 = LevelData(cpx, 1)
    lev2 = LevelData(cpx, 2)
    lev4 = LevelData(cpx, 4)
    sq1, sq2, sq4 = lev1.subquotient(d), lev2.subquotient(d), lev4.subquotient(d)
    return _build_slice(cpx, d, lev4, lev2, lev1, sq4, sq2, sq1)


def _build_slice(
    cpx: ChainComplex,
    d: int,
    lev4: LevelData,
    lev2: LevelData,
    lev1: LevelData,
    sq4: Subquotient,
    sq2: Subquotient,
    sq1: Subquotient,
) -> HomologySlice:
    """Assemble the Mackey functor of the given subquotients of one chain
    dimension, with res/tr/weyl induced from the chain-level action."""

    def presented(sq: Subquotient) -> PresentedGroup:
        gens = sq.generators()
        g = sq.group()
        orders = list(g.torsion) + [0] * g.rank
        rel = [[orders[i] if i == j else 0 for j in range(len(gens))] for i in range(len(gens))]
        rel = [r for r in rel if any(r)]
        return PresentedGroup(len(gens), rel)

    p4, p2, p1 = presented(sq4), presented(sq2), presented(sq1)
    n = cpx.dim_size(d)
    g1 = cpx.gamma_power(d, 1) if n else []
    g2 = cpx.gamma_power(d, 2) if n else []

    def chain_map(src_lev: LevelData, dst_lev: LevelData, op: Optional[Matrix]) -> Matrix:
        """op in e-coordinates applied to src basis, expressed in dst basis."""
        vecs = []
        for v in src_lev.basis(d):
            vecs.append(mat_vec(op, v) if op is not None else list(v))
        return _express_in(dst_lev, d, vecs)

    one_plus_g1 = [[(1 if i == j else 0) + g1[i][j] for j in range(n)] for i in range(n)] if n else []
    one_plus_g2 = [[(1 if i == j else 0) + g2[i][j] for j in range(n)] for i in range(n)] if n else []

    res42 = map_on_subquotient(chain_map(lev4, lev2, None), sq4, sq2) if n else []
    res21 = map_on_subquotient(chain_map(lev2, lev1, None), sq2, sq1) if n else []
    tr24 = map_on_subquotient(chain_map(lev2, lev4, one_plus_g1), sq2, sq4) if n else []
    tr12 = map_on_subquotient(chain_map(lev1, lev2, one_plus_g2), sq1, sq2) if n else []
    weyl2 = map_on_subquotient(chain_map(lev2, lev2, g1), sq2, sq2) if n else []
    weyl1 = map_on_subquotient(chain_map(lev1, lev1, g1), sq1, sq1) if n else []

    mk = MackeyC4(p4, p2, p1, res42, res21, tr24, tr12, weyl2, weyl1)
    return HomologySlice(mk, sq1, sq2, sq4, lev1, lev2, lev4, d)


def bredon_homology(cpx: ChainComplex) -> Dict[int, MackeyC4]:
    """Mackey-functor homology in every dimension of the complex."""
    out = {}
    for d in cpx.dims():
        out[d] = homology_mackey(cpx, d).mackey
    return out


def _inclusion_matrix(small: ChainComplex, big: ChainComplex, d: int) -> Matrix:
    """Cellwise inclusion in e-coordinates, matched by cell name."""
    pos = {name: i for i, name in enumerate(big.cells.get(d, []))}
    m = zeros(big.dim_size(d), small.dim_size(d))
    for j, name in enumerate(small.cells.get(d, [])):
        m[pos[name]][j] = 1
    return m


def _induced_iso(src: HomologySlice, dst: HomologySlice, incl: Matrix) -> bool:
    """Whether the inclusion induces an isomorphism of homology Mackey
    functors (levelwise surjection between groups with equal invariants)."""
    pairs = [
        (src.sq4, src.lev4, dst.sq4, dst.lev4),
        (src.sq2, src.lev2, dst.sq2, dst.lev2),
        (src.sq1, src.lev1, dst.sq1, dst.lev1),
    ]
    for sq_s, lev_s, sq_d, lev_d in pairs:
        gs, gd = sq_s.group(), sq_d.group()
        if (gs.torsion, gs.rank) != (gd.torsion, gd.rank):
            return False
        if gd.is_trivial():
            continue
        vecs = [mat_vec(incl, v) for v in lev_s.basis(src.dim)]
        chain = _express_in(lev_d, dst.dim, vecs)
        m = map_on_subquotient(chain, sq_s, sq_d)
        # surjectivity: cokernel of the image plus the target relations
        gens_d = sq_d.generators()
        orders = list(gd.torsion) + [0] * gd.rank
        rows = [list(col) for col in transpose(m)] if m and m[0] else []
        rows += [[orders[i] if i == j else 0 for j in range(len(gens_d))] for i in range(len(gens_d))]
        from .abelian import FGAbelianGroup

        if not FGAbelianGroup.from_presentation(rows, len(gens_d)).is_trivial():
            return False
    return True


@functools.lru_cache(maxsize=512)
def _cached_mixed(b: int, c: int) -> ChainComplex:
    return tensor(sigma_block(b), lambda_block(c))


def localized_homotopy(deg: DegreeC4, k: int) -> MackeyC4:
    """The degree-(deg + k) homotopy Mackey functor of the a_lambda-localized
    constant-Z Eilenberg-MacLane spectrum: pi_{deg+k} = colim_m of the
    reduced homology H_t(S^{-deg.b sigma + m lambda}) with t = k + deg.a,
    the colimit taken along multiplication by the lambda Euler class
    (bottom-cell inclusions); deg.c only shifts by an invertible a_lambda.

    The colimit needs no open-ended detection: the cells added when m grows
    sit in dimensions at least 2m + 1 + min(0, -deg.b), so once that exceeds
    t + 1 the chain groups near the target dimension are literally constant
    and every later inclusion induces the identity on H_t."""
    t = k + deg.a
    s = -deg.b
    m = max(0, (t + 1 - min(0, s)) // 2 + 1)
    cpx = _cached_mixed(s, m)
    cur = homology_mackey(cpx, t)
    nxt_cpx = _cached_mixed(s, m + 1)
    nxt = homology_mackey(nxt_cpx, t)
    incl = _inclusion_matrix(cpx, nxt_cpx, t)
    assert _induced_iso(cur, nxt, incl), "colimit not settled at the stability bound"
    return cur.mackey


__all__ = [
    "ChainComplex",
    "point",
    "sigma_block",
    "lambda_block",
    "tensor",
    "sphere_complex",
    "mixed_sphere",
    "bredon_homology",
    "homology_mackey",
    "localized_homotopy",
    "HomologySlice",
    "LevelData",
    "STABILIZATION_CAP",
]
