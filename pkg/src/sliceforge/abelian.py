"""Exact linear algebra over Z: Hermite/Smith normal forms, lattices, and
finitely generated abelian groups presented as subquotients of Z^n.

All matrices are lists of lists of Python ints (rows).  Everything here is
exact; no floating point, no modular shortcuts.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

Matrix = List[List[int]]


def zeros(rows: int, cols: int) -> Matrix:
    return [[0] * cols for _ in range(rows)]


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if not a:
        return []
    n, k = len(a), len(a[0]) if a[0] else 0
    m = len(b[0]) if b and b[0] else 0
    out = zeros(n, m)
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for t in range(k):
            c = ai[t]
            if c:
                bt = b[t]
                for j in range(m):
                    if bt[j]:
                        oi[j] += c * bt[j]
    return out


def mat_vec(a: Matrix, v: Sequence[int]) -> List[int]:
    return [sum(c * x for c, x in zip(row, v) if c and x) for row in a]


def transpose(a: Matrix) -> Matrix:
    if not a:
        return []
    return [list(col) for col in zip(*a)]


def hnf(rows: Matrix, cols: int) -> Matrix:
    """Row-style Hermite normal form of the lattice spanned by `rows` in Z^cols.

    Returns a list of nonzero rows in echelon form (pivots positive, entries
    above pivots reduced).  The row span is unchanged.
    """
    work = [list(r) for r in rows if any(r)]
    basis: List[List[int]] = []
    pivots: List[int] = []
    for row in work:
        _hnf_insert(basis, pivots, row, cols)
    _hnf_reduce_up(basis, pivots)
    return basis


def _hnf_insert(basis: List[List[int]], pivots: List[int], row: List[int], cols: int) -> None:
    row = list(row)
    while True:
        lead = next((j for j in range(cols) if row[j]), None)
        if lead is None:
            return
        pos = next((k for k, p in enumerate(pivots) if p >= lead), len(pivots))
        if pos < len(pivots) and pivots[pos] == lead:
            b = basis[pos]
            # gcd-combine row into the existing pivot row
            a, c = b[lead], row[lead]
            g, x, y = _xgcd(a, c)
            u, v = a // g, c // g
            new_b = [x * bb + y * rr for bb, rr in zip(b, row)]
            new_r = [-v * bb + u * rr for bb, rr in zip(b, row)]
            basis[pos] = new_b
            row = new_r
        else:
            if row[lead] < 0:
                row = [-x for x in row]
            basis.insert(pos, row)
            pivots.insert(pos, lead)
            return


def _hnf_reduce_up(basis: List[List[int]], pivots: List[int]) -> None:
    for k in range(len(basis) - 1, -1, -1):
        p = pivots[k]
        piv = basis[k][p]
        for i in range(k):
            f = basis[i][p] // piv
            if f:
                basis[i] = [a - f * b for a, b in zip(basis[i], basis[k])]


def _xgcd(a: int, b: int) -> Tuple[int, int, int]:
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def smith_normal_form(mat: Matrix) -> Tuple[Matrix, Matrix, Matrix]:
    """Smith normal form.  Returns (u, d, v) with u*mat*v = d diagonal,
    u and v unimodular, and each diagonal entry dividing the next.
    """
    n = len(mat)
    m = len(mat[0]) if n else 0
    d = [list(r) for r in mat]
    u = identity(n)
    v = identity(m)
    k = 0
    while k < min(n, m):
        # find a nonzero pivot in the remaining block
        pos = None
        for i in range(k, n):
            for j in range(k, m):
                if d[i][j]:
                    pos = (i, j)
                    break
            if pos:
                break
        if pos is None:
            break
        i0, j0 = pos
        _swap_rows(d, u, k, i0)
        _swap_cols(d, v, k, j0)
        while True:
            # clear column k
            done = True
            for i in range(k + 1, n):
                if d[i][k]:
                    if d[i][k] % d[k][k] == 0:
                        f = d[i][k] // d[k][k]
                        _add_row(d, u, i, k, -f)
                    else:
                        g, x, y = _xgcd(d[k][k], d[i][k])
                        a, b = d[k][k] // g, d[i][k] // g
                        _combine_rows(d, u, k, i, x, y, -b, a)
                    done = False
            for j in range(k + 1, m):
                if d[k][j]:
                    if d[k][j] % d[k][k] == 0:
                        f = d[k][j] // d[k][k]
                        _add_col(d, v, j, k, -f)
                    else:
                        g, x, y = _xgcd(d[k][k], d[k][j])
                        a, b = d[k][k] // g, d[k][j] // g
                        _combine_cols(d, v, k, j, x, y, -b, a)
                    done = False
            if done:
                break
        if d[k][k] < 0:
            _scale_row(d, u, k, -1)
        k += 1
    # enforce divisibility chain
    changed = True
    while changed:
        changed = False
        for t in range(min(n, m) - 1):
            a, b = d[t][t], d[t + 1][t + 1]
            if b and a and b % a != 0:
                # standard trick: add col t+1 to col t, then re-clear
                _add_col(d, v, t, t + 1, 1)
                g, x, y = _xgcd(d[t][t], d[t + 1][t])
                aa, bb = d[t][t] // g, d[t + 1][t] // g
                _combine_rows(d, u, t, t + 1, x, y, -bb, aa)
                f = d[t][t + 1] // d[t][t]
                _add_col(d, v, t + 1, t, -f)
                if d[t + 1][t + 1] < 0:
                    _scale_row(d, u, t + 1, -1)
                changed = True
    return u, d, v


def _swap_rows(d: Matrix, u: Matrix, i: int, j: int) -> None:
    if i != j:
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]


def _swap_cols(d: Matrix, v: Matrix, i: int, j: int) -> None:
    if i != j:
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]


def _add_row(d: Matrix, u: Matrix, dst: int, src: int, f: int) -> None:
    d[dst] = [a + f * b for a, b in zip(d[dst], d[src])]
    u[dst] = [a + f * b for a, b in zip(u[dst], u[src])]


def _add_col(d: Matrix, v: Matrix, dst: int, src: int, f: int) -> None:
    for row in d:
        row[dst] += f * row[src]
    for row in v:
        row[dst] += f * row[src]


def _combine_rows(d: Matrix, u: Matrix, i: int, j: int, x: int, y: int, z: int, w: int) -> None:
    ri = [x * a + y * b for a, b in zip(d[i], d[j])]
    rj = [z * a + w * b for a, b in zip(d[i], d[j])]
    d[i], d[j] = ri, rj
    si = [x * a + y * b for a, b in zip(u[i], u[j])]
    sj = [z * a + w * b for a, b in zip(u[i], u[j])]
    u[i], u[j] = si, sj


def _combine_cols(d: Matrix, v: Matrix, i: int, j: int, x: int, y: int, z: int, w: int) -> None:
    for row in d:
        a, b = row[i], row[j]
        row[i], row[j] = x * a + y * b, z * a + w * b
    for row in v:
        a, b = row[i], row[j]
        row[i], row[j] = x * a + y * b, z * a + w * b


def _scale_row(d: Matrix, u: Matrix, i: int, f: int) -> None:
    d[i] = [f * a for a in d[i]]
    u[i] = [f * a for a in u[i]]


class Lattice:
    """A sublattice of Z^n, stored in Hermite normal form."""

    def __init__(self, rows: Matrix, ambient: int):
        self.ambient = ambient
        self.rows = hnf(rows, ambient)
        self._pivots = [next(j for j in range(ambient) if r[j]) for r in self.rows]

    @property
    def rank(self) -> int:
        return len(self.rows)

    def contains(self, vec: Sequence[int]) -> bool:
        return self.reduce(vec) is not None

    def reduce(self, vec: Sequence[int]) -> Optional[List[int]]:
        """Express vec in the HNF basis; None if vec is not in the lattice."""
        v = list(vec)
        coeffs = [0] * len(self.rows)
        for k, (row, p) in enumerate(zip(self.rows, self._pivots)):
            if v[p] % row[p] != 0:
                return None
            f = v[p] // row[p]
            coeffs[k] = f
            if f:
                v = [a - f * b for a, b in zip(v, row)]
        if any(v):
            return None
        return coeffs

    def add(self, other: "Lattice") -> "Lattice":
        return Lattice(self.rows + other.rows, self.ambient)

    def intersect(self, other: "Lattice") -> "Lattice":
        """Intersection via kernel of the stacked projection."""
        if not self.rows or not other.rows:
            return Lattice([], self.ambient)
        stacked = self.rows + [[-x for x in r] for r in other.rows]
        ker = kernel_basis(transpose(stacked))
        rows = []
        for kv in ker:
            coeffs = kv[: len(self.rows)]
            vec = [0] * self.ambient
            for c, row in zip(coeffs, self.rows):
                if c:
                    vec = [a + c * b for a, b in zip(vec, row)]
            rows.append(vec)
        return Lattice(rows, self.ambient)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Lattice) and self.ambient == other.ambient and self.rows == other.rows

    def __repr__(self) -> str:
        return f"Lattice(rank={self.rank}, ambient={self.ambient})"


def kernel_basis(mat: Matrix) -> Matrix:
    """Basis of the integer kernel {x : mat @ x = 0}, as rows."""
    n = len(mat)
    m = len(mat[0]) if n else 0
    if m == 0:
        return []
    if n == 0:
        return identity(m)
    u, d, v = smith_normal_form(mat)
    r = sum(1 for i in range(min(n, m)) if d[i][i])
    # kernel is spanned by the last m - r columns of v
    cols = transpose(v)
    return [cols[j] for j in range(r, m)]


def unimodular_inverse(v: Matrix) -> Matrix:
    """Inverse of a unimodular integer matrix."""
    n = len(v)
    cols = [solve(v, [1 if i == j else 0 for i in range(n)]) for j in range(n)]
    assert all(c is not None for c in cols)
    return transpose([c for c in cols if c is not None])


def solve(mat: Matrix, target: Sequence[int]) -> Optional[List[int]]:
    """One integer solution x of mat @ x = target, or None."""
    n = len(mat)
    m = len(mat[0]) if n else 0
    if n == 0:
        return [0] * m
    u, d, v = smith_normal_form(mat)
    b = mat_vec(u, target)
    x = [0] * m
    for i in range(n):
        di = d[i][i] if i < m else 0
        if di:
            if b[i] % di != 0:
                return None
            x[i] = b[i] // di
        elif b[i]:
            return None
    return mat_vec(v, x)


@dataclass(frozen=True)
class FGAbelianGroup:
    """Canonical form of a finitely generated abelian group.

    `torsion` holds the invariant factors (each dividing the next), `rank`
    the number of free summands.
    """

    torsion: Tuple[int, ...]
    rank: int

    @staticmethod
    def from_presentation(relations: Matrix, n_gens: int) -> "FGAbelianGroup":
        """Group Z^n_gens / rowspan(relations)."""
        if n_gens == 0:
            return FGAbelianGroup((), 0)
        if not relations:
            return FGAbelianGroup((), n_gens)
        _, d, _ = smith_normal_form([list(r) for r in relations])
        divisors = [d[i][i] for i in range(min(len(d), n_gens)) if i < len(d[0] if d else [])]
        tors = [x for x in divisors if x not in (0, 1)]
        n_killed = sum(1 for x in divisors if x != 0)
        return FGAbelianGroup(tuple(sorted(tors)), n_gens - n_killed)

    @property
    def order(self) -> Optional[int]:
        if self.rank:
            return None
        out = 1
        for t in self.torsion:
            out *= t
        return out

    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.torsion

    def __str__(self) -> str:
        parts = [f"Z/{t}" for t in self.torsion]
        if self.rank == 1:
            parts.append("Z")
        elif self.rank > 1:
            parts.append(f"Z^{self.rank}")
        return " + ".join(parts) if parts else "0"


class Subquotient:
    """A subquotient (S + L) / (B + L) of Z^n, where L is a fixed "ambient
    relation" lattice (e.g. generator orders), S the currently surviving
    sublattice and B the boundaries accumulated so far.

    Used as the page-state container for spectral sequence entries: S starts
    as Z^n, shrinks to cycles; B grows by images.
    """

    def __init__(self, n: int, rel: Lattice, s: Optional[Lattice] = None, b: Optional[Lattice] = None):
        self.n = n
        self.rel = rel
        self.s = s if s is not None else Lattice(identity(n), n)
        self.b = b if b is not None else Lattice([], n)

    def group(self) -> FGAbelianGroup:
        gens = self.s.rows
        if not gens:
            return FGAbelianGroup((), 0)
        rel_rows = self._relation_rows(gens)
        return FGAbelianGroup.from_presentation(rel_rows, len(gens))

    def _relation_rows(self, gens: Matrix) -> Matrix:
        """Relations of (S + L)/(B + L) in the S-basis: coordinates of the
        lattice span(S) cap (B + L)."""
        denom = self.b.add(self.rel)
        span = Lattice(gens, self.n)
        inter = span.intersect(denom)
        rel_rows = []
        for row in inter.rows:
            coeffs = span.reduce(row)
            assert coeffs is not None
            rel_rows.append(coeffs)
        return rel_rows

    def is_zero_element(self, vec: Sequence[int]) -> bool:
        return self.b.add(self.rel).contains(vec)

    def element_order(self, vec: Sequence[int]) -> int:
        """Order of the class of vec (must be finite)."""
        denom = self.b.add(self.rel)
        k = 1
        cur = list(vec)
        while not denom.contains(cur):
            k += 1
            cur = [k * x for x in vec]
            if k > 64:
                raise ValueError("element order too large")
        return k

    def generators(self) -> List[List[int]]:
        """Generator representatives (in Z^n coordinates) of the group, one per
        invariant-factor summand, matching the order of group().torsion then
        free summands."""
        gens = self.s.rows
        if not gens:
            return []
        rel_rows = self._relation_rows(gens)
        k = len(gens)
        if not rel_rows:
            return [list(g) for g in gens]
        u, d, v = smith_normal_form([list(r) for r in rel_rows])
        # in coordinates y = x v the relations are diagonal d, so quotient
        # generator j is row j of v^{-1} in the original generator basis,
        # with order d[j][j]
        vinv = unimodular_inverse(v)
        out = []
        for j in range(k):
            dj = d[j][j] if j < len(d) and j < len(d[0] if d else []) else 0
            if dj == 1:
                continue
            vec = [0] * self.n
            for i in range(k):
                c = vinv[j][i]
                if c:
                    vec = [a + c * b for a, b in zip(vec, gens[i])]
            out.append(vec)
        return out


def map_on_subquotient(mat: Matrix, src: Subquotient, dst: Subquotient) -> Matrix:
    """Matrix of the induced map on generators() bases.  The map must carry
    src.s into dst.s + dst.rel + dst.b up to the usual well-definedness."""
    src_gens = src.generators()
    dst_gens = dst.generators()
    denom = dst.b.add(dst.rel)
    cols = []
    for g in src_gens:
        img = mat_vec(mat, g)
        coeffs = _express(img, dst_gens, denom, dst.n)
        if coeffs is None:
            raise ValueError("map does not descend to subquotient")
        cols.append(coeffs)
    return transpose(cols) if cols else [[] for _ in dst_gens]


def _express(vec: Sequence[int], gens: Matrix, denom: Lattice, n: int) -> Optional[List[int]]:
    """Coefficients c with vec = sum c_i gens_i modulo denom."""
    cols = transpose(gens) if gens else [[] for _ in range(n)]
    aug = [list(col) + [0] * len(denom.rows) for col in cols]
    for j, row in enumerate(denom.rows):
        for i in range(n):
            aug[i][len(gens) + j] = row[i]
    sol = solve(aug, list(vec))
    if sol is None:
        return None
    return sol[: len(gens)]


__all__ = [
    "Matrix",
    "smith_normal_form",
    "hnf",
    "kernel_basis",
    "solve",
    "Lattice",
    "FGAbelianGroup",
    "Subquotient",
    "map_on_subquotient",
    "mat_mul",
    "mat_vec",
    "transpose",
    "identity",
    "zeros",
]
