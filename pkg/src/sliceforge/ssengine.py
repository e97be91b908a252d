"""Spectral sequence engine for the localized slice chart.

Pages are tracked spotwise as subquotients of the integral E2 basis, at both
the C4 and C2 levels.  Differentials come from a small list of seed rules
stated on u-class monomials; they propagate to the chart by dividing each
basis class by a seed source and multiplying the seed target by the
quotient, using the Frobenius relation x Tr(y) = Tr(Res(x) y) and the gold
relation for normalization.  A quotient is only accepted when it is inert on
the page, i.e. its own u-part cannot support an earlier or equal
differential, which is exactly the hypothesis of the Leibniz rule.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .abelian import Lattice, Subquotient, identity, kernel_basis, mat_vec
from .coefficients import CoefMono, mono_mul
from .e2page import (
    DEFAULT_WINDOW,
    E2Table,
    Orbit,
    Window,
    build_e2,
    gamma_monomial,
    is_fixed,
    monomial_name,
    norm_name,
    orbit_rep,
    rho2_degree,
    trim,
)
from .mackey import MackeyC4, PresentedGroup

INF = 10**9


# ---------------------------------------------------------------------------
# class atoms and the naming grammar


@dataclass(frozen=True)
class C2Mono:
    """p u2S2^m aS2^a at the C2 level, coefficient in F2."""

    orbit: Orbit
    m: int
    a: int

    def gamma(self) -> "C2Mono":
        return C2Mono(gamma_monomial(self.orbit), self.m, self.a)

    def canonical(self) -> "C2Mono":
        return C2Mono(orbit_rep(self.orbit), self.m, self.a)

    def degree(self) -> Tuple[int, int]:
        d = rho2_degree(self.orbit)
        return (d + 2 * self.m, d - 2 * self.m - self.a)

    def name(self) -> str:
        parts = [] if self.orbit == () else [monomial_name(self.orbit)]
        if self.m == 1:
            parts.append("u2S2")
        elif self.m:
            parts.append(f"u2S2^{self.m}")
        if self.a == 1:
            parts.append("aS2")
        elif self.a:
            parts.append(f"aS2^{self.a}")
        return " ".join(parts) if parts else "1"


@dataclass(frozen=True)
class NormAtom:
    """c N(t1)^n1 N(t2)^n2 ... u2S^x uL^y aS^z aL^e at the C4 level."""

    coeff: int
    norms: Tuple[int, ...]
    coef: CoefMono

    def d_half(self) -> int:
        return sum((2 ** (i + 1) - 1) * n for i, n in enumerate(self.norms))

    def degree(self) -> Tuple[int, int, int]:
        d = self.d_half()
        a, b, c = self.coef.degree().a, self.coef.degree().b, self.coef.degree().c
        return (a + d, b + d, c + d)

    def restriction(self) -> Optional[C2Mono]:
        """Res: N(ti) -> ti gti, u2S -> 1, uL -> u2S2, aL -> aS2^2, aS -> 0."""
        if self.coef.z > 0:
            return None
        orbit = trim((n, n) for n in self.norms)
        return C2Mono(orbit, self.coef.y, 2 * self.coef.e)

    def name(self) -> str:
        head = norm_name(trim((n, n) for n in self.norms))
        coef = CoefMono(1, self.coef.x, self.coef.y, self.coef.z, self.coef.e)
        tail = coef.name()
        if head == "1":
            body = tail
        elif tail == "1":
            body = head
        else:
            body = f"{head} {tail}"
        return body if self.coeff == 1 else f"{self.coeff} {body}"


@dataclass(frozen=True)
class TrAtom:
    inner: C2Mono

    def name(self) -> str:
        return f"Tr[{self.inner.canonical().name()}]"


Atom = object  # NormAtom | TrAtom


def norm_atom(coeff=1, norms=(), x=0, y=0, z=0, e=0) -> NormAtom:
    return NormAtom(coeff, tuple(norms), CoefMono(1, x, y, z, e))


def _mul_norms(a: Tuple[int, ...], b: Tuple[int, ...]) -> Tuple[int, ...]:
    n = max(len(a), len(b))
    a = a + (0,) * (n - len(a))
    b = b + (0,) * (n - len(b))
    return tuple(x + y for x, y in zip(a, b))


def _orbit_mul(a: Orbit, b: Orbit) -> Orbit:
    n = max(len(a), len(b))
    a = tuple(a) + ((0, 0),) * (n - len(a))
    b = tuple(b) + ((0, 0),) * (n - len(b))
    return trim((x[0] + y[0], x[1] + y[1]) for x, y in zip(a, b))


def mul_c2(a: C2Mono, b: C2Mono) -> C2Mono:
    return C2Mono(_orbit_mul(a.orbit, b.orbit), a.m + b.m, a.a + b.a)


def mul_atoms(a: Atom, b: Atom) -> List[Atom]:
    """Product in the Green functor; returns a list of summands."""
    if isinstance(a, TrAtom) and isinstance(b, NormAtom):
        a, b = b, a
    if isinstance(a, NormAtom) and isinstance(b, NormAtom):
        prod = mono_mul(a.coef, b.coef)
        coeff = a.coeff * b.coeff * prod.coeff
        if coeff % 4 == 0:
            return []
        return [NormAtom(coeff, _mul_norms(a.norms, b.norms), CoefMono(1, prod.x, prod.y, prod.z, prod.e))]
    if isinstance(a, NormAtom) and isinstance(b, TrAtom):
        res = a.restriction()
        if res is None or a.coeff % 2 == 0:
            return []
        return [TrAtom(mul_c2(res, b.inner))]
    # Tr[y] Tr[y'] = Tr[y (y' + gamma y')]
    out = [TrAtom(mul_c2(a.inner, b.inner)), TrAtom(mul_c2(a.inner, b.inner.gamma()))]
    return _cancel_tr(out)


def _cancel_tr(atoms: List[TrAtom]) -> List[Atom]:
    counts: Dict[C2Mono, int] = {}
    for t in atoms:
        key = t.inner.canonical()
        counts[key] = counts.get(key, 0) + 1
    return [TrAtom(k) for k, v in counts.items() if v % 2]


def mul_expr(xs: List[Atom], ys: List[Atom]) -> List[Atom]:
    out: List[Atom] = []
    for x in xs:
        for y in ys:
            out.extend(mul_atoms(x, y))
    return out


# ---------------------------------------------------------------------------
# parsing


_GENERATORS = {"aS": "z", "aL": "e", "u2S": "x", "uL": "y"}
_C2_GENERATORS = {"aS2": "a", "u2S2": "m"}


def _parse_token(tok: str) -> Tuple[str, int, int]:
    """Return (base, index, exponent) for one token."""
    if "^" in tok:
        base, exp = tok.rsplit("^", 1)
        exp = int(exp)
    else:
        base, exp = tok, 1
    if base.startswith("N(") and base.endswith(")"):
        inner = base[2:-1]
        if not inner.startswith("t"):
            raise ValueError(f"bad norm token {tok}")
        return ("N", int(inner[1:]), exp)
    if base.startswith("gt"):
        return ("gt", int(base[2:]), exp)
    if base in _GENERATORS or base in _C2_GENERATORS:
        return (base, 0, exp)
    if base.startswith("t") and base[1:].isdigit():
        return ("t", int(base[1:]), exp)
    raise ValueError(f"unknown token {tok}")


def _split_factors(text: str) -> List[str]:
    out, depth, cur = [], 0, ""
    for ch in text:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if ch == " " and depth == 0:
            if cur:
                out.append(cur)
            cur = ""
        else:
            cur += ch
    if cur:
        out.append(cur)
    return out


def parse_c2_mono(text: str) -> Tuple[int, C2Mono]:
    coeff, exps, m, a = 1, {}, 0, 0
    for tok in _split_factors(text.strip()):
        if tok.lstrip("-").isdigit():
            coeff *= int(tok)
            continue
        base, idx, exp = _parse_token(tok)
        if base == "t":
            cur = exps.get(idx, (0, 0))
            exps[idx] = (cur[0] + exp, cur[1])
        elif base == "gt":
            cur = exps.get(idx, (0, 0))
            exps[idx] = (cur[0], cur[1] + exp)
        elif base == "u2S2":
            m += exp
        elif base == "aS2":
            a += exp
        else:
            raise ValueError(f"token {tok} is not a C2 class")
    n = max(exps) if exps else 0
    orbit = trim(exps.get(i, (0, 0)) for i in range(1, n + 1))
    return coeff, C2Mono(orbit, m, a)


def parse_term(text: str) -> List[Atom]:
    """One product term of the grammar into a sum of atoms."""
    text = text.strip()
    coeff = 1
    norms: Dict[int, int] = {}
    x = y = z = e = 0
    trs: List[TrAtom] = []
    for tok in _split_factors(text):
        if tok.lstrip("-").isdigit():
            coeff *= int(tok)
            continue
        if tok.startswith("Tr[") and tok.endswith("]"):
            c2c, inner = parse_c2_mono(tok[3:-1])
            if c2c % 2 == 0:
                return []
            trs.append(TrAtom(inner))
            continue
        base, idx, exp = _parse_token(tok)
        if base == "N":
            norms[idx] = norms.get(idx, 0) + exp
        elif base == "u2S":
            x += exp
        elif base == "uL":
            y += exp
        elif base == "aS":
            z += exp
        elif base == "aL":
            e += exp
        else:
            raise ValueError(f"token {tok} is not a C4 class")
    n = max(norms) if norms else 0
    head: List[Atom] = [norm_atom(coeff, tuple(norms.get(i, 0) for i in range(1, n + 1)), x, y, z, e)]
    for t in trs:
        head = mul_expr(head, [t])
    return head


def parse_expr(text: str) -> List[Atom]:
    """A sum of product terms, or the zero expression '0'."""
    text = text.strip()
    if text in ("0", ""):
        return []
    out: List[Atom] = []
    for term in text.split(" + "):
        out.extend(parse_term(term))
    return out


# ---------------------------------------------------------------------------
# locating atoms in the E2 chart


def atom_spot(atom: Atom) -> Optional[Tuple[int, int]]:
    if isinstance(atom, NormAtom):
        a, b, c = atom.degree()
        if b != 0 or c != 0:
            return None
        d = atom.d_half()
        return (a, 4 * d - a)
    t, sgn = atom.inner.degree()
    if sgn != 0:
        return None
    d = rho2_degree(atom.inner.orbit)
    return (t, d - 2 * atom.inner.m)


def locate_level4(table: E2Table, atom: Atom) -> Optional[Tuple[Tuple[int, int], List[int]]]:
    """Ambient level4 vector of an atom, or None when outside the window.

    A class absent from the chart basis evaluates to the zero vector."""
    spot = atom_spot(atom)
    if spot is None:
        raise ValueError(f"atom {atom} is not integer graded")
    entry = table.entry(*spot)
    if entry is None:
        if spot in _window_spots(table):
            return (spot, [])
        return None
    n = len(entry.c4)
    vec = [0] * n
    if isinstance(atom, NormAtom):
        name = NormAtom(1, atom.norms, atom.coef).name()
        for i, cls in enumerate(entry.c4):
            if cls.name == name:
                vec[i] = atom.coeff % cls.order
                return (spot, vec)
        return (spot, vec)
    inner = atom.inner.canonical()
    if is_fixed(inner.orbit):
        # transfer of a gamma-fixed class: apply tr24 of the spot
        j = _locate_level2_index(entry, inner)
        if j is None:
            return (spot, vec)
        col = [row[j] for row in entry.mackey.tr24]
        return (spot, col)
    name = f"Tr[{inner.name()}]"
    for i, cls in enumerate(entry.c4):
        if cls.name == name:
            vec[i] = 1
            return (spot, vec)
    return (spot, vec)


def _locate_level2_index(entry, mono: C2Mono) -> Optional[int]:
    for j, o in enumerate(entry.c2_orbits):
        if o == mono.orbit:
            return j
    return None


def locate_level2(table: E2Table, mono: C2Mono) -> Optional[Tuple[Tuple[int, int], List[int]]]:
    t, sgn = mono.degree()
    if sgn != 0:
        raise ValueError(f"{mono} is not integer graded")
    spot = (t, rho2_degree(mono.orbit) - 2 * mono.m)
    entry = table.entry(*spot)
    if entry is None:
        return (spot, []) if spot in _window_spots(table) else None
    vec = [0] * len(entry.c2_orbits)
    j = _locate_level2_index(entry, mono)
    if j is not None:
        vec[j] = 1
    return (spot, vec)


def _window_spots(table: E2Table):
    (s0, s1), (f0, f1) = table.window
    return {(s, f) for s in range(s0, s1 + 1) for f in range(f0, f1 + 1)}


def eval_level4(table: E2Table, atoms: List[Atom]) -> Dict[Tuple[int, int], List[int]]:
    """Evaluate a sum of atoms to ambient vectors, grouped by spot."""
    out: Dict[Tuple[int, int], List[int]] = {}
    for atom in atoms:
        loc = locate_level4(table, atom)
        if loc is None:
            continue
        spot, vec = loc
        if not vec:
            continue
        cur = out.setdefault(spot, [0] * len(vec))
        for i, v in enumerate(vec):
            cur[i] += v
    return {k: v for k, v in out.items() if any(v)}


# ---------------------------------------------------------------------------
# differential rules


@dataclass(frozen=True)
class DifferentialRule:
    page: int
    source: str
    target: str
    provenance: str = ""
    scope: str = "C4"


def builtin_rules() -> List[DifferentialRule]:
    """Seed differentials of the localized slice spectral sequence.

    C2-scope rules are the u2S2 tower; C4-scope rules are stated on u-class
    monomials and propagate to the chart through Leibniz division."""
    rules = [
        DifferentialRule(3, "uL", "Tr[t1 u2S2^0 aS2^3]", "restriction of u2S2 tower"),
        DifferentialRule(5, "u2S", "N(t1) aS^3 aL", "norm tower"),
        DifferentialRule(5, "uL^2", "N(t1) uL aS aL^2", "comparison with u2S2^2"),
        DifferentialRule(5, "uL^2 aS", "2 N(t1) u2S aL^3", "gold relation"),
        DifferentialRule(7, "2 uL^2", "Tr[t1^3 aS2^7]", "transfer of u2S2^2 tower"),
        DifferentialRule(7, "uL^4", "Tr[t1^3 u2S2^2 aS2^7]", "Frobenius from 2 uL^2"),
        DifferentialRule(
            11,
            "Tr[t1^3 u2S2^2 aS2^-1]",
            "N(t1)^4 u2S aS^2 aL^4",
            "C2 d7 plus exotic transfer",
        ),
        DifferentialRule(13, "u2S^2", "N(t2) aS^7 aL^3", "norm tower"),
        DifferentialRule(13, "uL^4 u2S", "N(t2) uL u2S^2 aS aL^6", "comparison with u2S2^4"),
        DifferentialRule(
            13,
            "uL^4 aS",
            "2 N(t2) u2S^2 aL^7 + N(t1)^3 u2S^2 aL^7"
            " + Tr[t1 gt1^2 t2 aS2^14] + Tr[t2^2 aS2^14] + Tr[t1^2 gt1 t2 aS2^14]",
            "norm of the C2 d7 target",
        ),
        DifferentialRule(
            15,
            "2 uL^4",
            "Tr[gt1 t2^2 aS2^15] + Tr[t1^4 gt2 aS2^15]",
            "transfer of u2S2^4 tower",
        ),
        DifferentialRule(29, "u2S^4", "N(t3) aS^15 aL^7", "norm tower"),
    ]
    for k in range(1, 5):
        r = 2 ** (k + 1) - 1
        vbar = " + ".join(_vbar_terms(k))
        rules.append(
            DifferentialRule(
                r,
                f"u2S2^{2 ** (k - 1)}",
                vbar,
                "u2S2 tower",
                scope="C2",
            )
        )
    return rules


def _vbar_terms(k: int) -> List[str]:
    """Monomials of vbar_k = sum_i t_{k-i}^{2^i} gt_i times aS2^(2^(k+1)-1)."""
    out = []
    a = 2 ** (k + 1) - 1
    for i in range(k + 1):
        parts = []
        if k - i >= 1:
            exp = 2 ** i
            parts.append(f"t{k - i}" + (f"^{exp}" if exp > 1 else ""))
        if i >= 1:
            parts.append(f"gt{i}")
        parts.append(f"aS2^{a}")
        out.append(" ".join(parts))
    return out


def load_script(text: str) -> List[DifferentialRule]:
    data = json.loads(text)
    return [
        DifferentialRule(d["page"], d["source"], d["target"], d.get("ref", ""), d.get("scope", "C4"))
        for d in data
    ]


def rules_to_script(rules: Sequence[DifferentialRule]) -> str:
    return json.dumps(
        [
            {"page": r.page, "source": r.source, "target": r.target, "ref": r.provenance, "scope": r.scope}
            for r in rules
        ],
        indent=1,
    )


# ---------------------------------------------------------------------------
# seed matching

MIN_PAGE_CAP = 31


def min_page(coeff: int, x: int, y: int, z: int) -> int:
    """First page on which c u2S^x uL^y aS^z can support a differential."""
    c = 2 if coeff % 2 == 0 else 1
    if y % 2 == 1:
        if z == 0:
            return 3
        return min_page(c, x, y - 1, z - 1)
    if y % 4 == 2:
        return 5 if c == 1 else 7
    if y > 0:
        if c == 2:
            return 15
        if z > 0 or x > 0:
            return 13
        return 7
    if c == 2 or x == 0:
        return INF
    if x % 2 == 1:
        return 5
    if x % 4 == 2:
        return 13
    return 29


@dataclass(frozen=True)
class Seed:
    rule: DifferentialRule
    coeff: int
    norms: Tuple[int, ...]
    x: int
    y: int
    z: int
    tr_inner: Optional[C2Mono]
    target: Tuple[Atom, ...]


def compile_seeds(rules: Sequence[DifferentialRule]) -> List[Seed]:
    seeds = []
    for rule in rules:
        if rule.scope != "C4":
            continue
        atoms = parse_term(rule.source)
        assert len(atoms) == 1, f"seed source must be a single term: {rule.source}"
        a = atoms[0]
        tgt = tuple(parse_expr(rule.target))
        if isinstance(a, NormAtom):
            seeds.append(Seed(rule, a.coeff, a.norms, a.coef.x, a.coef.y, a.coef.z, None, tgt))
        else:
            seeds.append(Seed(rule, 1, (), 0, 0, 0, a.inner, tgt))
    return seeds


def u_differential(
    seeds: Dict[str, Seed], page: int, c: int, x: int, y: int, z: int
) -> List[Tuple[int, Seed, Tuple[int, int, int]]]:
    """Leibniz terms of d_page on c u2S^x uL^y aS^z.

    Each term is (multiplicity, seed, quotient u-part).  The page-r cycles
    among u-classes form an algebra on a few generators; the differential is
    the derivation taking the seed values on those generators.  Transfer
    targets hit by an even multiplicity or an aS factor vanish on their own
    during evaluation."""
    out: List[Tuple[int, Seed, Tuple[int, int, int]]] = []

    def put(mult: int, key: str, quot: Tuple[int, int, int]) -> None:
        seed = seeds.get(key)
        if seed is not None:
            out.append((mult, seed, quot))

    if c % 2 == 0:
        if page == 7 and y % 4 == 2:
            put(y // 2, "2 uL^2", (x, y - 2, z))
        elif page == 15 and y % 8 == 4:
            put(y // 4, "2 uL^4", (x, y - 4, z))
        return out
    if page == 3:
        if y >= 1:
            put(y, "uL", (x, y - 1, z))
    elif page == 5:
        if y % 2 == 1 and z == 0:
            return []
        if y >= 2:
            put(y // 2, "uL^2", (x, y - 2, z))
        if x >= 1:
            put(x, "u2S", (x - 1, y, z))
    elif page == 7:
        if x % 2 == 0 and y >= 4:
            put(y // 4, "uL^4", (x, y - 4, z))
    elif page == 13:
        if x >= 2:
            put(x // 2, "u2S^2", (x - 2, y, z))
        if x % 2 == 1 and y % 8 == 4:
            put(1, "uL^4 u2S", (x - 1, y - 4, z))
        if x % 2 == 0 and y % 8 == 4 and z >= 1:
            put(1, "uL^4 aS", (x, y - 4, z - 1))
    elif page == 29:
        if x >= 4 and y == 0:
            put(x // 4, "u2S^4", (x - 4, y, z))
    return out


def _divide_tr(inner: C2Mono, seed_inner: C2Mono, page: int) -> Optional[NormAtom]:
    """Quotient q with Tr[inner] = q Tr[seed_inner]; q must be a norm class."""
    for cand in (inner, inner.gamma()):
        if cand.m != seed_inner.m:
            continue
        o = tuple(cand.orbit) + ((0, 0),) * (len(seed_inner.orbit) - len(cand.orbit))
        so = tuple(seed_inner.orbit) + ((0, 0),) * (len(o) - len(seed_inner.orbit))
        diff = [(a[0] - b[0], a[1] - b[1]) for a, b in zip(o, so)]
        if any(m < 0 or n < 0 or m != n for m, n in diff):
            continue
        da = cand.a - seed_inner.a
        if da % 2:
            continue
        return norm_atom(1, tuple(m for m, _ in trim(diff)), 0, 0, 0, da // 2)
    return None


# ---------------------------------------------------------------------------
# page state


@dataclass
class SpotState:
    level4: Subquotient
    level2: Subquotient


@dataclass
class AppliedDifferential:
    page: int
    level: int
    source_spot: Tuple[int, int]
    source: List[int]
    target_spot: Tuple[int, int]
    target: List[int]
    source_name: str
    target_name: str


@dataclass
class ExoticAssertion:
    kind: str  # "transfer" | "restriction"
    stem: int
    source_filtration: int
    target_filtration: int
    source_name: str
    target_name: str
    jump: int
    page: int

    def check_jump(self) -> bool:
        return self.jump <= self.page - 1


class PageState:
    """Spotwise subquotients of the E2 basis, plus the differential log."""

    def __init__(self, table: E2Table, rules: Optional[Sequence[DifferentialRule]] = None):
        self.table = table
        self.rules = list(rules) if rules is not None else builtin_rules()
        self.seeds = compile_seeds(self.rules)
        self.page = 2
        self.spots: Dict[Tuple[int, int], SpotState] = {}
        self.log: List[AppliedDifferential] = []
        self.contradictions: List[str] = []
        for key, entry in table.entries.items():
            n4 = len(entry.c4)
            rel4 = Lattice(
                [[entry.c4[i].order if i == j else 0 for j in range(n4)] for i in range(n4)], n4
            )
            n2 = len(entry.c2_orbits)
            rel2 = Lattice([[2 if i == j else 0 for j in range(n2)] for i in range(n2)], n2)
            self.spots[key] = SpotState(Subquotient(n4, rel4), Subquotient(n2, rel2))

    # -- naming ------------------------------------------------------------

    def vec_name(self, spot: Tuple[int, int], vec: Sequence[int], level: int = 4) -> str:
        entry = self.table.entry(*spot)
        names = [c.name for c in entry.c4] if level == 4 else entry.c2
        parts = []
        for i, v in enumerate(vec):
            if not v:
                continue
            parts.append(names[i] if v == 1 else f"{v} {names[i]}")
        return " + ".join(parts) if parts else "0"

    def class_names(self, spot: Tuple[int, int], level: int = 4) -> List[str]:
        st = self.spots.get(spot)
        if st is None:
            return []
        sq = st.level4 if level == 4 else st.level2
        denom = sq.b.add(sq.rel)
        out = []
        for g in sq.generators():
            out.append(self.vec_name(spot, _residue(denom, g), level))
        return out

    # -- differential generation -------------------------------------------

    def _alive(self, spot, vec, level=4) -> bool:
        st = self.spots.get(spot)
        if st is None or not vec:
            return False
        sq = st.level4 if level == 4 else st.level2
        if sq.is_zero_element(vec):
            return False
        return sq.s.add(sq.b.add(sq.rel)).contains(vec)

    def differentials(self, page: int) -> List[AppliedDifferential]:
        """All chart differentials of the given page from the seed rules."""
        out: List[AppliedDifferential] = []
        by_source = {s.rule.source: s for s in self.seeds}
        for spot, entry in self.table.entries.items():
            tgt_spot = (spot[0] - 1, spot[1] + page)
            for i, cls in enumerate(entry.c4):
                if cls.kind == "norm":
                    atom = parse_term(cls.name)[0]
                    for c in (1, 2) if cls.order == 4 else (1,):
                        terms = u_differential(
                            by_source, page, c, atom.coef.x, atom.coef.y, atom.coef.z
                        )
                        if not terms:
                            continue
                        src_vec = [0] * len(entry.c4)
                        src_vec[i] = c
                        if not self._alive(spot, src_vec):
                            continue
                        tgt_vec = self._eval_terms(atom, c, terms, tgt_spot, spot)
                        if tgt_vec is None or not self._alive(tgt_spot, tgt_vec):
                            continue
                        out.append(self._mk_diff(page, spot, src_vec, tgt_spot, tgt_vec))
                else:
                    inner = parse_c2_mono(cls.name[3:-1])[1]
                    for seed in self.seeds:
                        if seed.rule.page != page or seed.tr_inner is None:
                            continue
                        quo = _divide_tr(inner, seed.tr_inner, page)
                        if quo is None:
                            continue
                        src_vec = [0] * len(entry.c4)
                        src_vec[i] = 1
                        if not self._alive(spot, src_vec):
                            continue
                        prod = mul_expr([quo], list(seed.target))
                        if any(atom_spot(t) is None for t in prod):
                            # non integral product: the division does not
                            # present this class, so the seed does not apply
                            continue
                        targets = eval_level4(self.table, prod)
                        tgt_vec = targets.get(tgt_spot)
                        if tgt_vec is None or not self._alive(tgt_spot, tgt_vec):
                            continue
                        out.append(self._mk_diff(page, spot, src_vec, tgt_spot, tgt_vec))
        return out

    def _eval_terms(self, atom: NormAtom, c: int, terms, tgt_spot, spot):
        acc = None
        for mult, seed, (qx, qy, qz) in terms:
            quo = NormAtom(mult, atom.norms, CoefMono(1, qx, qy, qz, atom.coef.e))
            prod = mul_expr([quo], list(seed.target))
            if any(atom_spot(t) is None for t in prod):
                continue
            targets = eval_level4(self.table, prod)
            for extra in targets:
                if extra != tgt_spot:
                    self.contradictions.append(
                        f"rule {seed.rule.source} propagated off-bidegree at {spot}"
                    )
            vec = targets.get(tgt_spot)
            if vec is None:
                continue
            if acc is None:
                acc = list(vec)
            else:
                acc = [a + b for a, b in zip(acc, vec)]
        if acc is None:
            return None
        entry = self.table.entry(*tgt_spot)
        acc = [v % cls.order for v, cls in zip(acc, entry.c4)]
        return acc if any(acc) else None

    def _mk_diff(self, page, spot, src_vec, tgt_spot, tgt_vec):
        return AppliedDifferential(
            page,
            4,
            spot,
            src_vec,
            tgt_spot,
            tgt_vec,
            self.vec_name(spot, src_vec),
            self.vec_name(tgt_spot, tgt_vec),
        )

    def tr_differentials(self, page: int) -> List[AppliedDifferential]:
        """Differentials on transfer classes: d(Tr[x]) = Tr[d(x)] with d(x)
        taken from the u2S2 tower."""
        k = {3: 1, 7: 2, 15: 3, 31: 4}.get(page)
        if k is None:
            return []
        step = 2 ** (k - 1)
        out = []
        for spot, entry in self.table.entries.items():
            for i, cls in enumerate(entry.c4):
                if cls.kind != "transfer":
                    continue
                inner = parse_c2_mono(cls.name[3:-1])[1]
                if inner.m % (2 * step) != step:
                    continue
                src_vec = [0] * len(entry.c4)
                src_vec[i] = 1
                if not self._alive(spot, src_vec):
                    continue
                tgt_spot = (spot[0] - 1, spot[1] + page)
                tgt_entry = self.table.entry(*tgt_spot)
                if tgt_entry is None:
                    continue
                atoms: List[Atom] = []
                for term in _vbar_terms(k):
                    _, mono = parse_c2_mono(term)
                    atoms.append(TrAtom(mul_c2(inner, C2Mono(mono.orbit, -step, mono.a))))
                tgt_vec = [0] * len(tgt_entry.c4)
                for atom in _cancel_tr(atoms):
                    loc = locate_level4(self.table, atom)
                    if loc is None:
                        continue
                    sp, vec = loc
                    if sp != tgt_spot or not vec:
                        continue
                    tgt_vec = [a + b for a, b in zip(tgt_vec, vec)]
                if not any(tgt_vec) or not self._alive(tgt_spot, tgt_vec):
                    continue
                out.append(
                    AppliedDifferential(
                        page,
                        4,
                        spot,
                        src_vec,
                        tgt_spot,
                        tgt_vec,
                        self.vec_name(spot, src_vec),
                        self.vec_name(tgt_spot, tgt_vec),
                    )
                )
        return out

    def c2_differentials(self, page: int) -> List[AppliedDifferential]:
        """Level-2 differentials from the u2S2 tower."""
        k = {3: 1, 7: 2, 15: 3, 31: 4}.get(page)
        if k is None:
            return []
        step = 2 ** (k - 1)
        out = []
        for spot, entry in self.table.entries.items():
            for j, orbit in enumerate(entry.c2_orbits):
                m = (spot[0] - spot[1]) // 4
                if m % (2 * step) != step:
                    continue
                src_vec = [0] * len(entry.c2_orbits)
                src_vec[j] = 1
                if not self._alive(spot, src_vec, level=2):
                    continue
                a_exp = spot[1]
                tgt_spot = (spot[0] - 1, spot[1] + page)
                tgt_entry = self.table.entry(*tgt_spot)
                if tgt_entry is None:
                    continue
                tgt_vec = [0] * len(tgt_entry.c2_orbits)
                base = C2Mono(orbit, m, a_exp)
                for term in _vbar_terms(k):
                    _, mono = parse_c2_mono(term)
                    prod = mul_c2(base, C2Mono(mono.orbit, -step, mono.a))
                    jj = _locate_level2_index(tgt_entry, prod)
                    if jj is not None:
                        tgt_vec[jj] ^= 1
                if not any(tgt_vec) or not self._alive(tgt_spot, tgt_vec, level=2):
                    continue
                out.append(
                    AppliedDifferential(
                        page,
                        2,
                        spot,
                        src_vec,
                        tgt_spot,
                        tgt_vec,
                        self.vec_name(spot, src_vec, 2),
                        self.vec_name(tgt_spot, tgt_vec, 2),
                    )
                )
        return out

    # -- page turning -------------------------------------------------------

    def turn_page(self) -> List[AppliedDifferential]:
        """Advance to the next odd page, applying all differentials."""
        page = self.page + 1 if self.page % 2 == 0 else self.page + 2
        diffs = (
            self.differentials(page)
            + self.tr_differentials(page)
            + self.c2_differentials(page)
        )
        self._check_dd(diffs)
        by_src: Dict[Tuple[Tuple[int, int], int], List[AppliedDifferential]] = {}
        for d in diffs:
            by_src.setdefault((d.source_spot, d.level), []).append(d)
        # shrink cycles against the pre-page denominators, then add boundaries
        new_s = {}
        for (spot, level), ds in by_src.items():
            st = self.spots[spot]
            sq = st.level4 if level == 4 else st.level2
            new_s[(spot, level)] = self._shrink(sq, ds)
        for d in diffs:
            st = self.spots[d.target_spot]
            sq = st.level4 if d.level == 4 else st.level2
            sq.b = sq.b.add(Lattice([list(d.target)], sq.n))
        for (spot, level), lat in new_s.items():
            st = self.spots[spot]
            if level == 4:
                st.level4.s = lat
            else:
                st.level2.s = lat
        self.log.extend(diffs)
        self.page = page
        return diffs

    def _shrink(self, sq: Subquotient, ds: List[AppliedDifferential]) -> Lattice:
        gens = sq.s.rows
        if not gens:
            return sq.s
        srcs = [list(d.source) for d in ds]
        touched = {i for v in srcs for i, c in enumerate(v) if c}
        free = [i for i in range(sq.n) if i not in touched]
        denom = sq.b.add(sq.rel)
        tgt_n = len(ds[0].target)
        tgt_spot = ds[0].target_spot
        tgt_sq = (
            self.spots[tgt_spot].level4 if ds[0].level == 4 else self.spots[tgt_spot].level2
        )
        tgt_denom = tgt_sq.b.add(tgt_sq.rel)
        images = []
        for g in gens:
            coeffs = _express_mixed(g, srcs, free, denom, sq.n)
            if coeffs is None:
                self.contradictions.append("page class not expressible through rule sources")
                images.append([0] * tgt_n)
                continue
            img = [0] * tgt_n
            for c, d in zip(coeffs, ds):
                for i, v in enumerate(d.target):
                    img[i] += c * v
            images.append(img)
        rows = [img + [0] * 0 for img in images]
        stacked = [list(r) for r in rows] + [list(r) for r in tgt_denom.rows]
        ker = kernel_basis(_transpose_pad(stacked, tgt_n))
        new_rows = []
        for combo in ker:
            vec = [0] * sq.n
            for c, g in zip(combo[: len(gens)], gens):
                for i, v in enumerate(g):
                    vec[i] += c * v
            if any(vec):
                new_rows.append(vec)
        return Lattice(new_rows, sq.n)

    def _check_dd(self, diffs: List[AppliedDifferential]) -> None:
        targets = {(d.target_spot, d.level, tuple(d.target)) for d in diffs}
        for d in diffs:
            if (d.source_spot, d.level, tuple(d.source)) in targets:
                self.contradictions.append(
                    f"d o d != 0 at {d.source_spot} page {d.page}: {d.source_name}"
                )

    def run(self, max_page: int = MIN_PAGE_CAP) -> None:
        while self.page < max_page:
            self.turn_page()

    # -- inspection ---------------------------------------------------------

    def group(self, spot: Tuple[int, int], level: int = 4):
        st = self.spots.get(spot)
        if st is None:
            return PresentedGroup.zero().group()
        sq = st.level4 if level == 4 else st.level2
        return sq.group()

    def mackey(self, spot: Tuple[int, int]) -> MackeyC4:
        from .abelian import map_on_subquotient

        st = self.spots.get(spot)
        entry = self.table.entry(*spot)
        if st is None or entry is None:
            return MackeyC4.zero()
        g4, g2 = st.level4.group(), st.level2.group()
        p4 = PresentedGroup(g4.rank + len(g4.torsion), _diag_rel(g4))
        p2 = PresentedGroup(g2.rank + len(g2.torsion), _diag_rel(g2))
        try:
            res = map_on_subquotient(entry.mackey.res42, st.level4, st.level2)
            tr = map_on_subquotient(entry.mackey.tr24, st.level2, st.level4)
            weyl = map_on_subquotient(entry.mackey.weyl2, st.level2, st.level2)
        except ValueError:
            return MackeyC4(p4, p2, PresentedGroup.zero(), [], [], [], [], [], [])
        return MackeyC4(p4, p2, PresentedGroup.zero(), res, [], tr, [], weyl, [])

    def chart_json(self) -> str:
        (s0, s1), (f0, f1) = self.table.window
        dots = []
        for spot in sorted(self.spots):
            names = self.class_names(spot)
            c2n = self.class_names(spot, 2)
            if not names and not c2n:
                continue
            dots.append(
                {
                    "stem": spot[0],
                    "filtration": spot[1],
                    "mackey": self.mackey(spot).classify(),
                    "names": names,
                    "c2_names": c2n,
                }
            )
        diffs = [
            {
                "page": d.page,
                "level": d.level,
                "from": list(d.source_spot),
                "to": list(d.target_spot),
                "source": d.source_name,
                "target": d.target_name,
            }
            for d in self.log
        ]
        exotic = [
            {
                "kind": e.kind,
                "stem": e.stem,
                "from": e.source_filtration,
                "to": e.target_filtration,
                "source": e.source_name,
                "target": e.target_name,
                "jump": e.jump,
            }
            for e in detect_exotic(self)
        ]
        return json.dumps(
            {
                "schema": "sliceforge/1",
                "window": {"stem_min": s0, "stem_max": s1, "filt_min": f0, "filt_max": f1},
                "page": self.page,
                "dots": dots,
                "diffs": diffs,
                "exotic": exotic,
            },
            indent=1,
        )


def _residue(denom: Lattice, vec: Sequence[int]) -> List[int]:
    """Canonical small representative of vec modulo the lattice."""
    v = list(vec)
    for row, p in zip(denom.rows, denom._pivots):
        f = v[p] // row[p]
        if f:
            v = [a - f * b for a, b in zip(v, row)]
    return v


def _diag_rel(g) -> List[List[int]]:
    n = g.rank + len(g.torsion)
    rel = []
    for i, t in enumerate(g.torsion):
        row = [0] * n
        row[i] = t
        rel.append(row)
    return rel


def _transpose_pad(rows: List[List[int]], width: int) -> List[List[int]]:
    return [[row[j] if j < len(row) else 0 for row in rows] for j in range(width)]


def _express_mixed(vec, srcs, free, denom, n):
    """vec = sum a_i srcs_i + (free coords) + denom; returns the a_i."""
    from .abelian import solve

    cols = []
    for s in srcs:
        cols.append(list(s))
    for j in free:
        e = [0] * n
        e[j] = 1
        cols.append(e)
    for row in denom.rows:
        cols.append(list(row))
    mat = [[col[i] for col in cols] for i in range(n)]
    sol = solve(mat, list(vec))
    if sol is None:
        return None
    return sol[: len(srcs)]


# ---------------------------------------------------------------------------
# exotic extensions and homotopy assembly


def detect_exotic(state: PageState) -> List[ExoticAssertion]:
    """Exotic transfers and restrictions in a stem column.

    The pattern: a norm class y at the top of the cone (s, 3s), divisible by
    a_sigma, of order 2, with zero restriction, survives while a_sigma y
    falls above the vanishing line; its preimage under transfer must come
    from the surviving C2 class on the diagonal (s, s).  The companion
    statement feeds the diagonal class as the restriction of the circle
    remnant 2 u-class on the zero line (s, -s).  The filtration jump is 2s,
    realized on page 2s + 1."""
    out: List[ExoticAssertion] = []
    (s0, s1), _ = state.table.window
    for stem in range(2, s1 + 1, 2):
        top, mid, bot = (stem, 3 * stem), (stem, stem), (stem, -stem)
        y = _surviving_top_norm(state, top)
        if y is None:
            continue
        mid_vec = _surviving_level2(state, mid)
        if mid_vec is None:
            continue
        bot_vec = _surviving_double(state, bot)
        if bot_vec is None:
            continue
        page = 2 * stem + 1
        out.append(
            ExoticAssertion(
                "transfer",
                stem,
                stem,
                3 * stem,
                state.vec_name(mid, mid_vec, 2),
                state.vec_name(top, y),
                2 * stem,
                page,
            )
        )
        out.append(
            ExoticAssertion(
                "restriction",
                stem,
                -stem,
                stem,
                state.vec_name(bot, bot_vec),
                state.vec_name(mid, mid_vec, 2),
                2 * stem,
                page,
            )
        )
    return out


def _surviving_top_norm(state: PageState, spot):
    """A surviving order-2 norm class with positive aS exponent and zero
    restriction at the top of the cone."""
    st = state.spots.get(spot)
    entry = state.table.entry(*spot)
    if st is None or entry is None:
        return None
    for i, cls in enumerate(entry.c4):
        if cls.kind != "norm" or cls.order != 2:
            continue
        atom = parse_term(cls.name)[0]
        if atom.coef.z < 1 or cls.coef is None or cls.coef.res_nonzero:
            continue
        vec = [0] * len(entry.c4)
        vec[i] = 1
        if state._alive(spot, vec):
            return vec
    return None


def _surviving_level2(state: PageState, spot):
    st = state.spots.get(spot)
    if st is None:
        return None
    for g in st.level2.generators():
        if not st.level2.is_zero_element(g):
            return g
    return None


def _surviving_double(state: PageState, spot):
    """The order-2 remnant 2x of a circle class x on the zero line."""
    st = state.spots.get(spot)
    entry = state.table.entry(*spot)
    if st is None or entry is None:
        return None
    for i, cls in enumerate(entry.c4):
        if cls.kind != "norm" or cls.order != 4:
            continue
        vec = [0] * len(entry.c4)
        vec[i] = 2
        if state._alive(spot, vec) and not st.level4.is_zero_element(vec):
            return vec
    return None


def norm_vanishing(rules: Sequence[DifferentialRule]) -> List[str]:
    """If x dies by E_{r+2} on the C2 level, N(x) dies by E_{2r+2}.

    Checked on the u-class towers; returns violations."""
    out = []
    c2_pages = {}
    for rule in rules:
        if rule.scope == "C2":
            _, mono = parse_c2_mono(rule.source)
            c2_pages[mono.m] = rule.page
    for m, p in c2_pages.items():
        norm_page = min_page(1, 0, m, 0)
        if norm_page >= 2 * p:
            out.append(f"norm of u2S2^{m} outlives page {2 * p - 1}")
    return out


def permanent_cycle_audit(rules: Sequence[DifferentialRule], k_max: int = 3) -> List[dict]:
    """Survival of N(tk) aS^i.

    N(tk) aS^i supports nothing (its u-part is a permanent cycle) and is hit
    exactly when a norm-tower differential target N(tk) aS^z aL^e divides it
    with a nonnegative aS quotient, i.e. i >= z.  Reports, per k and i, the
    survival verdict and the killing page when one exists."""
    seeds = compile_seeds(rules)
    out = []
    for k in range(1, k_max + 1):
        top = 2 ** (k + 1) - 1
        for i in range(top + 1):
            hit = None
            for seed in seeds:
                if seed.tr_inner is not None or len(seed.target) != 1:
                    continue
                atom = seed.target[0]
                if not isinstance(atom, NormAtom) or atom.coeff % 2 == 0:
                    continue
                want = _trim_tuple(tuple(0 if j != k - 1 else 1 for j in range(k)))
                if _trim_tuple(atom.norms) != want:
                    continue
                if atom.coef.x == 0 and atom.coef.y == 0 and atom.coef.z <= i:
                    hit = seed.rule.page
            out.append({"k": k, "i": i, "survives": hit is None, "killed_by": hit})
    return out


def _trim_tuple(t):
    t = list(t)
    while t and t[-1] == 0:
        t.pop()
    return tuple(t)


# ---------------------------------------------------------------------------
# C2 level in isolation


class C2Run:
    """GF(2) page runner for the C2 slice spectral sequence.

    Spots hold classes p u2S2^m aS2^(D-2m) with p a monomial of degree D;
    subspaces are bitmask rows over the monomial basis of each spot."""

    def __init__(self, max_stem: int):
        self.max_stem = max_stem
        self.basis: Dict[Tuple[int, int], List[Orbit]] = {}
        self.cycles: Dict[Tuple[int, int], List[int]] = {}
        self.bounds: Dict[Tuple[int, int], List[int]] = {}
        from .e2page import monomials_of_degree

        for s in range(0, max_stem + 2):
            for m in range(0, s // 2 + 1):
                d = s - 2 * m
                monos = monomials_of_degree(d)
                spot = (s, d - 2 * m)
                self.basis[spot] = monos
                self.cycles[spot] = [1 << i for i in range(len(monos))]
                self.bounds[spot] = []
        self._run()

    def _image(self, spot, vec: int, k: int) -> Tuple[Tuple[int, int], int]:
        s, f = spot
        step = 2 ** (k - 1)
        page = 2 ** (k + 1) - 1
        tgt = (s - 1, f + page)
        monos = self.basis[spot]
        tgt_monos = self.basis.get(tgt)
        if tgt_monos is None:
            return tgt, 0
        index = {o: i for i, o in enumerate(tgt_monos)}
        out = 0
        for i, p in enumerate(monos):
            if not (vec >> i) & 1:
                continue
            for term in _vbar_terms(k):
                _, mono = parse_c2_mono(term)
                prod = _orbit_mul(p, mono.orbit)
                j = index.get(prod)
                if j is not None:
                    out ^= 1 << j
        return tgt, out

    def _run(self) -> None:
        from .gf2 import gf2_kernel, gf2_row_reduce

        for k in range(1, 5):
            step = 2 ** (k - 1)
            new_cycles = {}
            new_bounds: Dict[Tuple[int, int], List[int]] = {}
            for spot in self.basis:
                s, f = spot
                m = (s - f) // 4
                if m % (2 * step) != step:
                    continue
                rows = self.cycles[spot]
                if not rows:
                    continue
                images = [self._image(spot, v, k) for v in rows]
                tgt = images[0][0]
                cols = [img for _, img in images] + list(self.bounds.get(tgt, []))
                width = len(self.basis.get(tgt, []))
                combos = gf2_kernel(cols, len(cols)) if width else None
                if width == 0:
                    new_cycles[spot] = rows
                    continue
                kept = []
                for combo in combos:
                    vec = 0
                    for i in range(len(rows)):
                        if (combo >> i) & 1:
                            vec ^= rows[i]
                    if vec:
                        kept.append(vec)
                new_cycles[spot] = gf2_row_reduce(kept)
                new_bounds.setdefault(tgt, []).extend(img for _, img in images)
            for spot, rows in new_cycles.items():
                self.cycles[spot] = rows
            for tgt, rows in new_bounds.items():
                self.bounds[tgt] = gf2_row_reduce(list(self.bounds.get(tgt, [])) + rows)

    def dim(self, spot) -> int:
        from .gf2 import gf2_rank

        s = self.cycles.get(spot, [])
        b = self.bounds.get(spot, [])
        return gf2_rank(list(s) + list(b)) - gf2_rank(list(b))

    def survivors(self, stem: int) -> Dict[int, int]:
        """E-infinity dimensions by filtration in one stem."""
        out = {}
        for m in range(0, stem // 2 + 1):
            f = stem - 4 * m
            d = self.dim((stem, f))
            if d:
                out[f] = d
        return out


def quotient_algebra_dim(n: int, k_max: int = 4) -> int:
    """dim_F2 of degree n of F2[tbar_i, gamma tbar_i] / (vbar_1, vbar_2, ...)."""
    from .e2page import monomials_of_degree
    from .gf2 import gf2_rank

    monos = monomials_of_degree(n)
    index = {o: i for i, o in enumerate(monos)}
    rows = []
    for k in range(1, k_max + 1):
        w = 2 ** k - 1
        if w > n:
            break
        for p in monomials_of_degree(n - w):
            vec = 0
            for term in _vbar_terms(k):
                _, mono = parse_c2_mono(term)
                j = index.get(_orbit_mul(p, mono.orbit))
                if j is not None:
                    vec ^= 1 << j
            rows.append(vec)
    return len(monos) - gf2_rank(rows)


def naturality_audit(state: PageState) -> List[str]:
    """Compatibility of the differential log with restriction and transfer.

    Outside the u2S2 tower pages the C2 level has no differentials, so the
    restriction of every C4 differential target must die at the C2 level,
    either as zero or as a boundary of the C2 tower differentials; on tower
    pages the transfer of every C2 differential must be hit by the logged
    C4 differentials."""
    issues = []
    tower = {3, 7, 15, 31}
    for d in state.log:
        if d.level != 4 or d.page in tower:
            continue
        entry = state.table.entry(*d.target_spot)
        res = mat_vec(entry.mackey.res42, d.target)
        if not any(v % 2 for v in res):
            continue
        st = state.spots[d.target_spot]
        if not st.level2.b.add(st.level2.rel).contains(res):
            issues.append(
                f"res of d{d.page} target {d.target_name} "
                "is not a C2 boundary"
            )
    for d in state.log:
        if d.level != 2:
            continue
        entry = state.table.entry(*d.target_spot)
        tr_tgt = mat_vec(entry.mackey.tr24, d.target)
        if not any(tr_tgt):
            continue
        st = state.spots[d.target_spot]
        if not st.level4.b.add(st.level4.rel).contains(tr_tgt):
            issues.append(
                f"transfer of C2 d{d.page} target {d.target_name} "
                "is not a C4 boundary"
            )
    return issues


# ---------------------------------------------------------------------------
# homotopy assembly


@dataclass
class HomotopySummary:
    stem: int
    orders: List[int]
    colors: List[str]
    generators: List[str]
    unresolved: List[str] = field(default_factory=list)


def assemble_homotopy(state: PageState, max_stem: int = 8) -> List[HomotopySummary]:
    """Read the E-infinity columns and resolve extensions.

    The only extensions taken are those forced by Tr Res = 2 through exotic
    transfer/restriction pairs; anything else ambiguous is reported."""
    exotic = detect_exotic(state)
    paired = {}
    for e in exotic:
        if e.kind != "transfer":
            continue
        rest = next((x for x in exotic if x.kind == "restriction" and x.stem == e.stem), None)
        if rest is not None:
            paired[e.stem] = (rest, e)
    out = []
    _, (f0, f1) = state.table.window
    for stem in range(0, max_stem + 1):
        orders: List[int] = []
        colors: List[str] = []
        gens: List[str] = []
        unresolved: List[str] = []
        merged = set()
        if stem in paired:
            rest, tr = paired[stem]
            merged = {rest.source_filtration, tr.target_filtration}
            orders.append(4)
            colors.append("red")
            gens.append(rest.source_name)
        for f in range(f0, f1 + 1):
            spot = (stem, f)
            if spot not in state.spots or f in merged:
                continue
            g = state.group(spot)
            if g.is_trivial():
                continue
            if g.rank:
                unresolved.append(f"free summand at filtration {f}")
            names = state.class_names(spot)
            tr_image = _transfer_image(state, spot)
            st = state.spots[spot]
            for idx, (order, rep) in enumerate(zip(g.torsion, st.level4.generators())):
                name = names[idx] if idx < len(names) else "?"
                orders.append(order)
                colors.append("black" if tr_image.contains(rep) else "red")
                gens.append(name)
        out.append(HomotopySummary(stem, orders, colors, gens, unresolved))
    return out


def _transfer_image(state: PageState, spot) -> Lattice:
    """Boundaries plus transfers of surviving C2 classes, at one spot.

    Classes inside this lattice are generated by ordinary transfers; they
    make up the black part of the homotopy column."""
    st = state.spots[spot]
    entry = state.table.entry(*spot)
    denom = st.level4.b.add(st.level4.rel)
    rows = [list(r) for r in denom.rows]
    for g2 in st.level2.s.rows:
        rows.append(mat_vec(entry.mackey.tr24, g2))
    return Lattice(rows, st.level4.n)


def run(
    window: Window = DEFAULT_WINDOW,
    rules: Optional[Sequence[DifferentialRule]] = None,
    max_page: int = MIN_PAGE_CAP,
) -> PageState:
    table = build_e2(window, localized=True)
    state = PageState(table, rules)
    state.run(max_page)
    return state


def shuffle_invariant(window: Window, seed: int = 0) -> bool:
    """The final chart is independent of rule order."""
    base = run(window).chart_json()
    rules = builtin_rules()
    rng = random.Random(seed)
    rng.shuffle(rules)
    other = run(window, rules).chart_json()
    return base == other


__all__ = [
    "C2Mono",
    "NormAtom",
    "TrAtom",
    "DifferentialRule",
    "ExoticAssertion",
    "PageState",
    "AppliedDifferential",
    "HomotopySummary",
    "builtin_rules",
    "load_script",
    "rules_to_script",
    "parse_expr",
    "parse_term",
    "parse_c2_mono",
    "mul_expr",
    "mul_atoms",
    "eval_level4",
    "locate_level4",
    "locate_level2",
    "min_page",
    "detect_exotic",
    "norm_vanishing",
    "permanent_cycle_audit",
    "assemble_homotopy",
    "run",
    "shuffle_invariant",
]
