"""The mod-2 dual Steenrod algebra F_2[xi_1, xi_2, ...] with its conjugation
involution, per-degree Tate cohomology of the conjugation action, and the
bidegree combinatorics certifying nontriviality of (xi_i zeta_i)^k.

A monomial is a tuple of exponents (e_1, e_2, ...) with trailing zeros
trimmed; xi_i has topological degree 2^i - 1.  A polynomial is a frozenset of
monomials (F_2 coefficients).
"""

from __future__ import annotations

import functools
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .gf2 import (
    gf2_in_span,
    gf2_kernel,
    gf2_reduce_against,
    gf2_row_reduce,
    gf2_solve,
)

Monomial = Tuple[int, ...]
Polynomial = FrozenSet[Monomial]

ZERO: Polynomial = frozenset()
ONE: Polynomial = frozenset({()})


def xi(i: int, e: int = 1) -> Polynomial:
    """The monomial xi_i^e as a polynomial."""
    if e == 0:
        return ONE
    mono = tuple(0 if j < i - 1 else e for j in range(i))
    return frozenset({mono})


def mono_mul(p: Monomial, q: Monomial) -> Monomial:
    n = max(len(p), len(q))
    out = tuple((p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n))
    return _trim(out)


def _trim(m: Sequence[int]) -> Monomial:
    out = list(m)
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def topdeg(m: Monomial) -> int:
    return sum(e * (2 ** (i + 1) - 1) for i, e in enumerate(m))


def mondeg(m: Monomial) -> int:
    return sum(m)


def bidegree(m: Monomial) -> Tuple[int, int]:
    """(a, b) with b the monomial degree and a - b the topological degree."""
    b = mondeg(m)
    return topdeg(m) + b, b


def add(p: Polynomial, q: Polynomial) -> Polynomial:
    return p ^ q


def multiply(p: Polynomial, q: Polynomial) -> Polynomial:
    out: set = set()
    for mp in p:
        for mq in q:
            m = mono_mul(mp, mq)
            if m in out:
                out.discard(m)
            else:
                out.add(m)
    return frozenset(out)


def power(p: Polynomial, k: int) -> Polynomial:
    out = ONE
    base = p
    while k:
        if k & 1:
            out = multiply(out, base)
        base = multiply(base, base)
        k >>= 1
    return out


def frobenius(p: Polynomial, j: int) -> Polynomial:
    """p^(2^j), computed by scaling exponents (char 2)."""
    return frozenset(_trim(tuple(e << j for e in m)) for m in p)


@functools.lru_cache(maxsize=None)
def zeta(i: int) -> Polynomial:
    """Milnor conjugate of xi_i: zeta_i = sum_{j=0}^{i-1} xi_{i-j}^{2^j} zeta_j."""
    if i == 0:
        return ONE
    out: Polynomial = ZERO
    for j in range(i):
        out = add(out, multiply(frobenius(xi(i - j), j), zeta(j)))
    return out


def conjugate(p: Polynomial) -> Polynomial:
    out: Polynomial = ZERO
    for m in p:
        term = ONE
        for i, e in enumerate(m):
            if e:
                # binary-split the exponent so each factor is a Frobenius power
                j = 0
                while e:
                    if e & 1:
                        term = multiply(term, frobenius(zeta(i + 1), j))
                    e >>= 1
                    j += 1
        out = add(out, term)
    return out


def transfer(p: Polynomial) -> Polynomial:
    return add(p, conjugate(p))


def bin_count(t: int) -> int:
    """Number of 1s in the binary expansion."""
    return bin(t).count("1")


def monomials_of_topdeg(d: int, max_i: Optional[int] = None) -> List[Monomial]:
    """All monomials of topological degree d."""
    if max_i is None:
        max_i = 1
        while 2 ** (max_i + 1) - 1 <= d:
            max_i += 1
    out: List[Monomial] = []

    def rec(i: int, rem: int, acc: List[int]) -> None:
        if rem == 0:
            out.append(_trim(acc + [0] * (max_i - len(acc))))
            return
        if i > max_i:
            return
        w = 2 ** i - 1
        e = 0
        while e * w <= rem:
            rec(i + 1, rem - e * w, acc + [e])
            e += 1

    rec(1, d, [])
    return sorted(out, key=lambda m: (mondeg(m), m))


def monomials_of_bidegree(a: int, b: int) -> List[Monomial]:
    """Monomials with exactly b factors and sum of 2^i equal to a."""
    if b < 0 or bin_count(a) > b or a < b:
        return []
    max_i = 1
    while 2 ** (max_i + 1) <= a:
        max_i += 1
    out: List[Monomial] = []

    def rec(i: int, rem: int, nfac: int, acc: List[int]) -> None:
        if nfac == 0:
            if rem == 0:
                out.append(_trim(acc + [0] * (max_i - len(acc))))
            return
        if i > max_i or rem < nfac * (2 ** i):
            return
        w = 2 ** i
        e = 0
        while e <= nfac and e * w <= rem:
            rec(i + 1, rem - e * w, nfac - e, acc + [e])
            e += 1

    rec(1, a, b, [])
    return out


class DegreeTable:
    """Indexed monomial basis of a single topological degree, with the
    transfer matrix of the conjugation action."""

    def __init__(self, degree: int):
        self.degree = degree
        self.basis = monomials_of_topdeg(degree)
        self.index: Dict[Monomial, int] = {m: i for i, m in enumerate(self.basis)}

    def vec(self, p: Polynomial) -> int:
        out = 0
        for m in p:
            out |= 1 << self.index[m]
        return out

    def poly(self, v: int) -> Polynomial:
        return frozenset(m for i, m in enumerate(self.basis) if v & (1 << i))

    def transfer_image(self) -> List[int]:
        return gf2_row_reduce([self.vec(transfer(frozenset({m}))) for m in self.basis])

    def kernel_of_transfer(self) -> List[int]:
        """Invariant combinations, as masks over the monomial basis."""
        cols = [self.vec(transfer(frozenset({m}))) for m in self.basis]
        return gf2_kernel(cols, len(cols))


def tate_group(degree: int, bound: int = 28) -> Tuple[int, List[Tuple[str, Polynomial]]]:
    """Dimension and named representatives of Hhat(C2; A_*) in one degree,
    computed as ker(1+gamma)/im(1+gamma) by F_2 row reduction."""
    if degree < 0:
        raise ValueError("degree must be nonnegative")
    if degree > bound:
        raise ValueError(f"degree {degree} above linear-algebra bound {bound}")
    table = DegreeTable(degree)
    image = table.transfer_image()
    invariant_masks = table.kernel_of_transfer()
    # row-reduce invariant representatives modulo the image
    reps: List[int] = []
    span = list(image)
    for mask in invariant_masks:
        vec = 0
        for i in range(len(table.basis)):
            if mask & (1 << i):
                vec |= 1 << i
        red = gf2_reduce_against(vec, span)
        if red:
            reps.append(red)
            span = gf2_row_reduce(span + [red])
    named = [(_name_representative(table.poly(v), degree), table.poly(v)) for v in reps]
    named.sort(key=lambda kv: min(kv[1]))
    return len(reps), named


def _name_representative(p: Polynomial, degree: int) -> str:
    """Deterministic display name: norm products where the class matches
    (xi_k zeta_k)-powers modulo transfers, else b1-powers, else the smallest
    monomial spelled out."""
    match = _match_norm_product(p, degree)
    if match is not None:
        parts = []
        for i, k in sorted(match.items()):
            nm = f"N(xi{i})" + (f"^{k}" if k > 1 else "")
            us = k * (2 ** i - 1)
            parts.append(nm + (f" u_s^{us}" if us else ""))
        return " ".join(parts)
    lead = min(p, key=lambda m: (mondeg(m), m))
    if len(lead) <= 1:
        e = lead[0] if lead else 0
        return f"b1^{e}" if e > 1 else ("b1" if e == 1 else "1")
    return " ".join(f"xi{i+1}^{e}" if e > 1 else f"xi{i+1}" for i, e in enumerate(lead) if e)


def _match_norm_product(p: Polynomial, degree: int) -> Optional[Dict[int, int]]:
    """Search small products prod (xi_i zeta_i)^{k_i} of the right degree that
    agree with p modulo transfers."""
    if degree % 2:
        return None
    table = DegreeTable(degree)
    image = table.transfer_image()
    target = table.vec(p)
    weights = []
    i = 1
    while 2 * (2 ** i - 1) <= degree:
        weights.append(i)
        i += 1

    def candidates(idx: int, rem: int, acc: Dict[int, int]):
        if rem == 0:
            yield dict(acc)
            return
        if idx >= len(weights):
            return
        w = 2 * (2 ** weights[idx] - 1)
        k = 0
        while k * w <= rem:
            if k:
                acc[weights[idx]] = k
            yield from candidates(idx + 1, rem - k * w, acc)
            acc.pop(weights[idx], None)
            k += 1

    for cand in candidates(0, degree, {}):
        if not cand:
            continue
        prod = ONE
        for i, k in cand.items():
            prod = multiply(prod, power(multiply(xi(i), zeta(i)), k))
        if gf2_in_span(target ^ table.vec(prod), image):
            return cand
    return None


def power_nontrivial(i: int, k: int, bound: int = 28) -> Tuple[bool, dict]:
    """Decide whether (xi_i zeta_i)^k is nonzero in Hhat^0, with certificate.

    Below the linear-algebra bound this is a direct row reduction.  Above it
    the combinatorial route first enumerates every monomial whose transfer
    could contribute the leading term xi_i^2k (monomial degree below 2k,
    bidegree arithmetic pruned by the binary-digit count).  An empty list
    certifies nontriviality; an exact solve over those transfers certifies
    triviality with an explicit witness.  A failed solve is inconclusive,
    because cancelling the higher terms may take sources of larger monomial
    degree, so it falls back to the full row reduction in that degree.
    """
    if i < 1 or k < 1:
        raise ValueError("need i, k >= 1")
    d = 2 * k * (2 ** i - 1)
    target_poly = power(multiply(xi(i), zeta(i)), k)
    if d <= bound:
        table = DegreeTable(d)
        image = table.transfer_image()
        nz = not gf2_in_span(table.vec(target_poly), image)
        return nz, {"route": "linear-algebra", "degree": d}
    # combinatorial certificate: transfers strictly raise monomial degree, so
    # only sources of monomial degree < 2k matter; their bidegree (a, b) has
    # a = d + b with b factors, so Bin(d + b) <= b
    sources: List[Monomial] = []
    for b in range(1, 2 * k):
        sources.extend(monomials_of_bidegree(d + b, b))
    if not sources:
        return True, {"route": "certificate", "degree": d, "candidates": []}
    # small solve: restrict to the monomials actually appearing
    polys = [transfer(frozenset({m})) for m in sources]
    support = set(target_poly)
    for p in polys:
        support |= p
    order = {m: j for j, m in enumerate(sorted(support))}

    def enc(p: Polynomial) -> int:
        out = 0
        for m in p:
            out |= 1 << order[m]
        return out

    sol = gf2_solve([enc(p) for p in polys], enc(target_poly))
    if sol is not None:
        witness = [list(sources[j]) for j in range(len(sources)) if (sol >> j) & 1]
        return False, {
            "route": "certificate",
            "degree": d,
            "candidates": [list(m) for m in sources],
            "witness": witness,
        }
    table = DegreeTable(d)
    image = table.transfer_image()
    nz = not gf2_in_span(table.vec(target_poly), image)
    return nz, {
        "route": "linear-algebra",
        "degree": d,
        "candidates": [list(m) for m in sources],
    }


__all__ = [
    "Monomial",
    "Polynomial",
    "ZERO",
    "ONE",
    "xi",
    "zeta",
    "add",
    "multiply",
    "power",
    "conjugate",
    "transfer",
    "bin_count",
    "bidegree",
    "topdeg",
    "mondeg",
    "monomials_of_topdeg",
    "monomials_of_bidegree",
    "DegreeTable",
    "tate_group",
    "power_nontrivial",
]
