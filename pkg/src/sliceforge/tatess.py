"""Doubled pulled-back Tate and homotopy fixed point charts of the norm
of the mod 2 Eilenberg-MacLane spectrum.

The C4 level of the doubled Tate chart is H^0-hat(C2; A)[aL^pm, aS^pm,
uS^pm] where A is the dual Steenrod algebra.  The integer-graded chart
is F2[x^pm] tensor H^0-hat with x = uS aS^-1, so the spot (s, f) holds
the degree (s+f)/2 part of H^0-hat whenever s+f is even.  Differentials
come from the uS tower d_{2^{k+2}-3}(uS^{2^k}) = N(xi_k) aS^{2^{k+1}-1}
together with d3(uS) = b1 uS^-1 aS^2, d3(b1) = N(xi1) uS^-1 aS^2 and
d9(N(xi1) uS^2) = N(xi2) uS^-1 aS^5, closed under the Leibniz rule."""

from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional, Sequence, Tuple

from . import steenrod
from .gf2 import gf2_rank, gf2_reduce_against, gf2_row_reduce, gf2_solve

Spot = Tuple[int, int]
Window = Tuple[Tuple[int, int], Tuple[int, int]]

DEFAULT_WINDOW: Window = ((-2, 11), (-24, 28))

NORM_DEGREE = (2, 6, 14)  # topological degree of N(xi_i), i = 1..3
NORM_U = (1, 3, 7)  # uS exponent packed into the integral name of N(xi_i)


# ---------------------------------------------------------------------------
# classes


@dataclass(frozen=True)
class TateClass:
    """A monomial of the doubled pullback chart in normal form.

    The H^0-hat part is b1^eps N(xi1)^n1 N(xi2)^n2 N(xi3)^n3 uS^u0 with
    u_sigma the total uS exponent (u0 plus any loose power); a_sigma and
    a_lambda are the loose exponents."""

    b1: int
    norms: Tuple[int, int, int]
    u_sigma: int
    a_sigma: int
    a_lambda: int

    def degree(self) -> int:
        """Topological degree of the H^0-hat part, uS powers removed."""
        return self.b1 + sum(n * d for n, d in zip(self.norms, NORM_DEGREE))

    def ro_degree(self) -> Tuple[int, int, int]:
        """(trivial, sigma, lambda) coefficients of the stem."""
        nd = sum(n * d for n, d in zip(self.norms, NORM_DEGREE)) // 2
        m = self.b1 + nd + self.u_sigma
        s = nd - self.u_sigma - self.a_sigma
        return m, s, -self.a_lambda

    def filtration(self) -> int:
        nd = sum(n * d for n, d in zip(self.norms, NORM_DEGREE))
        return self.b1 + nd + self.a_sigma + 2 * self.a_lambda

    def is_integral(self) -> bool:
        _, s, l = self.ro_degree()
        return s == 0 and l == 0

    def spot(self) -> Spot:
        m, s, l = self.ro_degree()
        return m + s + 2 * l, self.filtration()

    def restriction(self) -> steenrod.Polynomial:
        p = steenrod.power(steenrod.xi(1), self.b1)
        for i, n in enumerate(self.norms):
            pair = steenrod.multiply(steenrod.xi(i + 1), steenrod.zeta(i + 1))
            p = steenrod.multiply(p, steenrod.power(pair, n))
        return p

    def name(self) -> str:
        parts = []
        if self.b1:
            parts.append("b1" if self.b1 == 1 else f"b1^{self.b1}")
        u0 = 0
        for i, n in enumerate(self.norms):
            if n:
                parts.append(f"N(xi{i + 1})" + (f"^{n}" if n > 1 else ""))
                u0 += n * NORM_U[i]
        if u0:
            parts.append(f"u_s^{u0}")
        loose = self.u_sigma - u0
        if loose and self.a_sigma == -loose:
            parts.append(f"x^{loose}")
        else:
            if loose:
                parts.append(f"uS^{loose}")
            if self.a_sigma:
                parts.append(f"aS^{self.a_sigma}")
        if self.a_lambda:
            parts.append(f"aL^{self.a_lambda}")
        return " ".join(parts) if parts else "1"


def normalize(c: TateClass) -> TateClass:
    """Rewrite b1 powers through b1^2 = N(xi1) uS."""
    if c.b1 < 2:
        return c
    k = c.b1 // 2
    n1, n2, n3 = c.norms
    return replace(c, b1=c.b1 % 2, norms=(n1 + k, n2, n3), u_sigma=c.u_sigma + k)


# ---------------------------------------------------------------------------
# the Tate cohomology frame per degree


class DegreeFrame:
    """Basis of H^0-hat(C2; A_d) with generator factorizations where known.

    Frame classes are monomials in b1, N(xi1), N(xi2), N(xi3); classes of
    tate_group outside that span are carried as opaque generators with no
    differential provenance."""

    def __init__(self, degree: int):
        self.degree = degree
        self.table = steenrod.DegreeTable(degree)
        self.transfer_span = gf2_row_reduce(self.table.transfer_image())
        self.names: List[str] = []
        self.frames: List[Optional[TateClass]] = []
        self.vecs: List[int] = []
        span: List[int] = []
        for frame in self._monomials(degree):
            v = self._reduce(frame.restriction())
            if v and gf2_reduce_against(v, span):
                span.append(v)
                self.names.append(frame.name())
                self.frames.append(frame)
                self.vecs.append(v)
        for name, poly in steenrod.tate_group(degree)[1]:
            v = self._reduce(poly)
            if v and gf2_reduce_against(v, span):
                span.append(v)
                self.names.append(name)
                self.frames.append(None)
                self.vecs.append(v)

    @staticmethod
    def _monomials(degree: int) -> List[TateClass]:
        out = []
        for n3 in range(degree // 14 + 1):
            for n2 in range((degree - 14 * n3) // 6 + 1):
                for n1 in range((degree - 14 * n3 - 6 * n2) // 2 + 1):
                    eps = degree - 14 * n3 - 6 * n2 - 2 * n1
                    if eps > 1:
                        continue
                    u0 = n1 * NORM_U[0] + n2 * NORM_U[1] + n3 * NORM_U[2]
                    out.append(TateClass(eps, (n1, n2, n3), u0, 0, 0))
        return out

    def _reduce(self, poly: steenrod.Polynomial) -> int:
        return gf2_reduce_against(self.table.vec(poly), self.transfer_span)

    def dim(self) -> int:
        return len(self.vecs)

    def coords(self, poly: steenrod.Polynomial) -> Optional[int]:
        """Express poly in the frame basis, or None if outside the span."""
        v = self._reduce(poly)
        if not v:
            return 0
        return gf2_solve(self.vecs, v)


# ---------------------------------------------------------------------------
# E2 assembly


@dataclass
class TateEntry:
    stem: int
    filtration: int
    names: List[str]
    frames: List[Optional[TateClass]]
    u_total: List[int]


class TateTable:
    def __init__(self, window: Window, variant: str):
        self.window = window
        self.variant = variant  # "tate" | "hfp"
        self.entries: Dict[Spot, TateEntry] = {}

    def entry(self, stem: int, filtration: int) -> Optional[TateEntry]:
        return self.entries.get((stem, filtration))

    def spots(self) -> List[Spot]:
        return sorted(self.entries)


def tate_e2(window: Window = DEFAULT_WINDOW, variant: str = "tate") -> TateTable:
    """The integer-graded doubled pullback chart in the window.

    Each populated spot (s, f) with s + f even carries the Tate cohomology
    of A in degree (s + f) // 2, placed there by powers of x = uS aS^-1.
    The homotopy fixed point variant keeps only the spots with f >= s,
    where the loose aS exponent in normal form is nonnegative."""
    (s0, s1), (f0, f1) = window
    frames: Dict[int, DegreeFrame] = {}
    table = TateTable(window, variant)
    for s in range(s0, s1 + 1):
        for f in range(f0, f1 + 1):
            if (s + f) % 2 or s + f < 0:
                continue
            if variant == "hfp" and f < s:
                continue
            d = (s + f) // 2
            if d not in frames:
                frames[d] = DegreeFrame(d)
            fr = frames[d]
            if not fr.dim():
                continue
            j = (s - f) // 2
            names = [n if j == 0 else f"{n} x^{j}" for n in fr.names]
            u_total = [
                (fc.u_sigma if fc is not None else 0) + j for fc in fr.frames
            ]
            table.entries[(s, f)] = TateEntry(s, f, names, fr.frames, u_total)
    table.degree_frames = frames
    return table


def double(table) -> object:
    """Regrade a chart by f -> 2f, the doubling of the underlying tower."""
    out = type(table)(table.window, *(
        [table.variant] if isinstance(table, TateTable) else [table.localized]
    ))
    for (s, f), entry in table.entries.items():
        out.entries[(s, 2 * f)] = replace(entry, filtration=2 * f)
    (w0, (f0, f1)) = table.window
    out.window = (w0, (2 * f0, 2 * f1))
    return out


# ---------------------------------------------------------------------------
# differentials

TATE_PAGES = (3, 5, 9, 13, 29)


def tate_derivation(page: int, frame: TateClass, u: int) -> List[TateClass]:
    """Leibniz terms of the page differential on a normal-form monomial.

    u is the total uS exponent of the chart instance.  Terms with even
    multiplicity are dropped; products are normalized so that vanishing
    (through N(xi1)^2 = 0 and the transfer ideal) is decided later by the
    degree frame."""
    eps, (n1, n2, n3) = frame.b1, frame.norms
    out = []
    a = frame.a_sigma
    if page == 3:
        mult = (u % 2) + (eps % 2)
        if u % 2:
            out.append(
                replace(frame, b1=eps + 1, u_sigma=frame.u_sigma - 2,
                        a_sigma=a + 2)
            )
        if eps % 2:
            out.append(
                replace(frame, b1=eps - 1, norms=(n1 + 1, n2, n3),
                        u_sigma=frame.u_sigma - 1, a_sigma=a + 2)
            )
        if mult == 2:
            out = []
    elif page == 5 and u % 4 == 2 and (u // 2) % 2:
        out.append(
            replace(frame, norms=(n1 + 1, n2, n3), u_sigma=frame.u_sigma - 2,
                    a_sigma=a + 3)
        )
    elif page == 9 and n1 % 2 and u % 4 == 2:
        out.append(
            replace(frame, norms=(n1 - 1, n2 + 1, n3),
                    u_sigma=frame.u_sigma - 3, a_sigma=a + 5)
        )
    elif page == 13 and u % 8 == 4 and (u // 4) % 2:
        out.append(
            replace(frame, norms=(n1, n2 + 1, n3), u_sigma=frame.u_sigma - 4,
                    a_sigma=a + 7)
        )
    elif page == 29 and u % 16 == 8 and (u // 8) % 2:
        out.append(
            replace(frame, norms=(n1, n2, n3 + 1), u_sigma=frame.u_sigma - 8,
                    a_sigma=a + 15)
        )
    return [normalize(t) for t in out]


@dataclass
class TateDifferential:
    page: int
    source_spot: Spot
    source_name: str
    target_spot: Spot
    target_name: str
    provenance: str


class TateRun:
    """GF(2) page runner over the integer-graded doubled Tate chart."""

    def __init__(self, window: Window = DEFAULT_WINDOW):
        self.table = tate_e2(window)
        self.cycles: Dict[Spot, List[int]] = {}
        self.bounds: Dict[Spot, List[int]] = {}
        self.first_hit: Dict[Tuple[Spot, int], int] = {}
        self.log: List[TateDifferential] = []
        for spot, entry in self.table.entries.items():
            self.cycles[spot] = [1 << i for i in range(len(entry.names))]
            self.bounds[spot] = []
        for page in TATE_PAGES:
            self._turn(page)

    def _d_row(self, page: int, spot: Spot, idx: int):
        entry = self.table.entries[spot]
        frame = entry.frames[idx]
        if frame is None:
            return None, 0
        tgt_spot = (spot[0] - 1, spot[1] + page)
        vec = 0
        external = False
        terms = tate_derivation(page, frame, entry.u_total[idx])
        if not terms:
            return tgt_spot, 0
        tgt_entry = self.table.entries.get(tgt_spot)
        for term in terms:
            if tgt_entry is None:
                d = term.degree()
                fr = self.table.degree_frames.get(d) or DegreeFrame(d)
                self.table.degree_frames[d] = fr
                if fr.coords(term.restriction()):
                    external = True
                continue
            d = (tgt_spot[0] + tgt_spot[1]) // 2
            coords = self.table.degree_frames[d].coords(term.restriction())
            if coords is None:
                raise RuntimeError(
                    f"d{page} target {term.name()} outside the degree frame"
                )
            vec ^= coords
        if external:
            return None, 1  # dies into a spot outside the window
        return tgt_spot, vec

    def _turn(self, page: int) -> None:
        images: Dict[Spot, List[int]] = {}
        new_cycles: Dict[Spot, List[int]] = {}
        for spot, rows in self.cycles.items():
            entry = self.table.entries[spot]
            tgt_spot = (spot[0] - 1, spot[1] + page)
            n = len(entry.names)
            per_basis = {}
            for i in range(n):
                sp, v = self._d_row(page, spot, i)
                per_basis[i] = v << 1 if sp is not None else v
            pairs = []
            for row in rows:
                rep = gf2_reduce_against(row, self.bounds[spot])
                img = 0
                for i in range(n):
                    if (rep >> i) & 1:
                        img ^= per_basis[i]
                red = (
                    gf2_reduce_against(img >> 1, self.bounds.get(tgt_spot, []))
                    << 1
                ) | (img & 1)
                pairs.append((row, red))
            kept = self._kernel(pairs)
            for row, img in pairs:
                red = gf2_reduce_against(row, kept)
                if not red:
                    continue
                if img >> 1:
                    images.setdefault(tgt_spot, []).append(img >> 1)
                    self.log.append(
                        TateDifferential(
                            page, spot, self._name(spot, row),
                            tgt_spot, self._name(tgt_spot, img >> 1),
                            "uS tower with Leibniz closure",
                        )
                    )
                else:
                    self.log.append(
                        TateDifferential(
                            page, spot, self._name(spot, row),
                            tgt_spot, "(outside window)",
                            "uS tower with Leibniz closure",
                        )
                    )
            new_cycles[spot] = kept
        for spot, rows in images.items():
            for row in rows:
                red = gf2_reduce_against(row, self.bounds[spot])
                if red:
                    self.bounds[spot].append(red)
                    for i in range(len(self.table.entries[spot].names)):
                        if (red >> i) & 1 and (spot, i) not in self.first_hit:
                            self.first_hit[(spot, i)] = page
        self.cycles = new_cycles

    @staticmethod
    def _kernel(pairs: List[Tuple[int, int]]) -> List[int]:
        """Span of combinations of the rows whose image vanishes."""
        work = [(img, row) for row, img in pairs]
        out = []
        pivots: List[Tuple[int, int, int]] = []
        for img, row in work:
            changed = True
            while changed:
                changed = False
                for p, pi, pr in pivots:
                    if (img >> p) & 1:
                        img ^= pi
                        row ^= pr
                        changed = True
            if img:
                pivots.append((img.bit_length() - 1, img, row))
            elif row:
                out.append(row)
        return out

    def _name(self, spot: Spot, row: int) -> str:
        entry = self.table.entries[spot]
        return " + ".join(
            entry.names[i] for i in range(len(entry.names)) if (row >> i) & 1
        ) or "0"

    def dim(self, spot: Spot) -> int:
        if spot not in self.cycles:
            return 0
        return gf2_rank(self.cycles[spot]) - gf2_rank(self.bounds[spot])

    def survivors(self, spot: Spot) -> List[str]:
        out = []
        for row in self.cycles.get(spot, []):
            red = gf2_reduce_against(row, self.bounds[spot] + out)
            if red:
                out.append(red)
        return [self._name(spot, r) for r in out]


def run_tate_rules(window: Window = DEFAULT_WINDOW) -> TateRun:
    return TateRun(window)


# ---------------------------------------------------------------------------
# the comparison map


def comparison_map(name: str):
    """Image of a slice chart monomial in the doubled Tate chart.

    N(t_i)^j aL^k aS^l u2S^m goes to N(xi_i)^j aL^(k - j(2^i - 1)) aS^l
    uS^(2m); a C2 monomial goes through t_i -> aS2^-(2^i - 1) xi_i.  The
    image is zero exactly when (xi_i zeta_i)^j dies in Tate cohomology.
    Returns (TateClass or polynomial, nontrivial flag, certificate)."""
    from . import ssengine

    atoms = ssengine.parse_expr(name)
    if len(atoms) != 1:
        raise ValueError("comparison map is defined on monomials only")
    atom = atoms[0]
    if isinstance(atom, ssengine.TrAtom):
        raise ValueError("transfer classes are outside the comparison subring")
    if isinstance(atom, ssengine.C2Mono):
        if atom.m:
            raise ValueError("u2S2 powers are outside the comparison subring")
        poly = [()]
        shift = 0
        for i, (e, g) in enumerate(atom.orbit):
            poly = steenrod.multiply(poly, steenrod.power(steenrod.xi(i + 1), e))
            poly = steenrod.multiply(poly, steenrod.power(steenrod.zeta(i + 1), g))
            shift += (2 ** (i + 1) - 1) * (e + g)
        return poly, bool(poly), {"aS2_shift": atom.a - shift}
    if atom.coeff % 2 == 0:
        return None, False, {"reason": "even coefficient"}
    idx = [i for i, n in enumerate(atom.norms) if n]
    if len(idx) > 1:
        raise ValueError("mixed norm monomials are outside the comparison subring")
    if atom.coef.y:
        raise ValueError("uL powers are outside the comparison subring")
    i = idx[0] + 1 if idx else 1
    j = atom.norms[idx[0]] if idx else 0
    if idx and i > 3:
        raise ValueError("norm index beyond the chart frame")
    norms = [0, 0, 0]
    if idx:
        norms[i - 1] = j
    cls = normalize(
        TateClass(
            0,
            tuple(norms),
            2 * atom.coef.x,
            atom.coef.z,
            atom.coef.e - (j * (2 ** i - 1) if idx else 0),
        )
    )
    if not idx or j == 0:
        return cls, True, {"reason": "unit frame"}
    ok, cert = steenrod.power_nontrivial(i, j)
    return cls, ok, cert


def comparison_audit(rules=None) -> List[str]:
    """Every slice rule inside the comparison subring must map to zero on
    both ends or to an applied Tate differential on the same page."""
    from . import ssengine

    if rules is None:
        rules = ssengine.builtin_rules()
    issues = []
    for rule in rules:
        try:
            src, src_ok, _ = comparison_map(rule.source)
            tgt, tgt_ok, _ = comparison_map(rule.target)
        except ValueError:
            continue
        if not isinstance(src, TateClass) or not isinstance(tgt, TateClass):
            continue
        if not src_ok and not tgt_ok:
            continue
        if not src_ok and tgt_ok:
            issues.append(f"d{rule.page}({rule.source}): source dies, target not")
            continue
        terms = tate_derivation(rule.page, src, src.u_sigma)
        want = normalize(tgt)
        got = [
            t for t in terms
            if DegreeFrame(t.degree()).coords(t.restriction())
        ]
        if tgt_ok and want not in got:
            issues.append(
                f"d{rule.page}({rule.source}) image mismatch: "
                f"expected {want.name()}, derived {[t.name() for t in got]}"
            )
    return issues


# ---------------------------------------------------------------------------
# audits over the run


def collapse_audit(run: TateRun) -> Tuple[List[str], List[str]]:
    """Below slope 1 in stems 0..8 everything the rules reach must die.

    Returns (violations, unruled): violations are survivors with some rule
    provenance attached to their spot, unruled are survivors whose Leibniz
    derivation vanishes on every rule page and which no rule can hit, so
    they carry the no-rule marker instead of a differential."""
    violations = []
    unruled = []
    for (s, f) in sorted(run.cycles):
        if not (0 <= s <= 8 and f < s and run.dim((s, f))):
            continue
        entry = run.table.entries[(s, f)]
        for name in run.survivors((s, f)):
            idx = next(
                (i for i, n in enumerate(entry.names) if n in name), None
            )
            has_rule = idx is not None and any(
                run._d_row(p, (s, f), idx)[1] for p in TATE_PAGES
            )
            tag = f"({s},{f}) {name}"
            (violations if has_rule else unruled).append(tag)
    return violations, unruled


def norm_timing_audit(run: TateRun) -> List[str]:
    """N(xi_k) aS^(2^(k+1) - 1) is never hit before page 2^(k+2) - 3."""
    issues = []
    for k in (1, 2):
        cls = TateClass(
            0,
            tuple(1 if i == k - 1 else 0 for i in range(3)),
            NORM_U[k - 1],
            0,
            0,
        )
        inst = replace(
            cls, u_sigma=cls.u_sigma - (2 ** k - 1), a_sigma=2 ** k - 1
        )
        spot = inst.spot()
        entry = run.table.entries.get(spot)
        if entry is None:
            continue
        d = (spot[0] + spot[1]) // 2
        coords = run.table.degree_frames[d].coords(inst.restriction())
        if not coords:
            continue
        for i in range(len(entry.names)):
            if (coords >> i) & 1:
                page = run.first_hit.get((spot, i))
                if page is not None and page < 2 ** (k + 2) - 3:
                    issues.append(
                        f"N(xi{k}) tower target hit on page {page}"
                    )
    return issues


def hfpss_image_test(c: TateClass) -> bool:
    """A Tate class lifts to the homotopy fixed point chart exactly when
    its loose aS exponent is nonnegative."""
    return c.a_sigma >= 0


def golden_chart(run: TateRun) -> dict:
    """Rule-provenance reference chart: E-infinity dims and the kill log."""
    dots = []
    for spot in sorted(run.table.entries):
        dim = run.dim(spot)
        if dim:
            dots.append(
                {
                    "stem": spot[0],
                    "filtration": spot[1],
                    "dim": dim,
                    "names": run.survivors(spot),
                }
            )
    kills = [
        {
            "page": d.page,
            "source": [*d.source_spot, d.source_name],
            "target": [*d.target_spot, d.target_name],
            "provenance": d.provenance,
        }
        for d in run.log
    ]
    _, unruled = collapse_audit(run)
    return {"schema": "sliceforge/1", "chart": "tate-doubled", "dots": dots,
            "kills": kills, "no_rule": unruled}


# ---------------------------------------------------------------------------
# Radon-Hurwitz bounds


def radon_hurwitz(n: int) -> int:
    """rho(n) = 8b + 2^c where n = odd * 2^(4b + c), 0 <= c < 4."""
    if n < 1:
        raise ValueError("n must be positive")
    e = (n & -n).bit_length() - 1
    b, c = divmod(e, 4)
    return 8 * b + 2 ** c


def tate_generator_bounds(k: int) -> Tuple[int, int]:
    """Differential length bounds on v^(2^k) on the first diagonal:
    rho(2^(k+1)) below, 2^(k+2) - 1 above."""
    return radon_hurwitz(2 ** (k + 1)), 2 ** (k + 2) - 1


__all__ = [
    "TateClass",
    "TateEntry",
    "TateTable",
    "TateRun",
    "TateDifferential",
    "DegreeFrame",
    "DEFAULT_WINDOW",
    "TATE_PAGES",
    "normalize",
    "tate_e2",
    "double",
    "tate_derivation",
    "run_tate_rules",
    "comparison_map",
    "comparison_audit",
    "collapse_audit",
    "norm_timing_audit",
    "hfpss_image_test",
    "golden_chart",
    "radon_hurwitz",
    "tate_generator_bounds",
]
