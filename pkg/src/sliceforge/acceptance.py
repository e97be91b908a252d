"""Acceptance suite: one check per headline claim, shared by cmd_verify
and the test suite.

Each check returns a CriterionResult with a verdict and a diff-style detail
list.  Verdicts are "pass", "fail", or "fail (documented)" for the one
claim whose literal reading contradicts exact arithmetic; the detail lines
say which part holds and which does not.
"""

import json
import random
import time
from dataclasses import dataclass, field
from importlib import resources
from typing import Callable, List

from . import ssengine as ss
from . import steenrod, tatess
from .bredon import localized_homotopy
from .coefficients import CoefMono, coef_piece_c4, mono_mul
from .e2page import DEFAULT_WINDOW
from .repgrade import DegreeC4


@dataclass
class CriterionResult:
    name: str
    verdict: str
    seconds: float
    details: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.verdict.startswith("pass") or self.verdict == "fail (documented)"

    def line(self) -> str:
        return f"[{self.verdict.upper():>18}] {self.name} ({self.seconds:.1f}s)"


EXPECTED_HOMOTOPY = [
    (0, [4], ["red"], ["1"]),
    (1, [2], ["red"], ["N(t1) aS aL"]),
    (2, [4], ["red"], ["2 uL aL^-1"]),
    (3, [2, 2], ["black", "red"], ["Tr[gt2 aS2^3]", "N(t2) aS^3 aL^3"]),
    (4, [2], ["black"], ["Tr[gt1 t2 aS2^4]"]),
    (5, [2], ["black"], ["Tr[t1 gt1 gt2 aS2^5]"]),
    (6, [4, 2], ["red", "black"], ["2 uL^3 aL^-3", "Tr[t1 gt1^2 t2 aS2^6]"]),
    (
        7,
        [2, 2, 2, 2],
        ["red", "black", "black", "red"],
        [
            "N(t2) u2S uL aS aL^2",
            "Tr[gt3 aS2^7]",
            "Tr[t1^2 gt1^2 gt2 aS2^7]",
            "N(t3) aS^7 aL^7",
        ],
    ),
    (
        8,
        [2, 2, 2],
        ["black", "red", "black"],
        ["Tr[gt1 t3 aS2^8]", "N(t1) N(t2) u2S^2 aL^4", "N(t1)^4 u2S^2 aL^4"],
    ),
]

TATE_DIMS = [1, 1, 1, 0, 0, 0, 1, 0, 0, 1, 0, 0, 1,
             0, 1, 1, 0, 1, 1, 0, 1, 0, 0, 1, 0]

# published power list restricted to total degree <= 120
PROP_POWERS = {(1, 1), (2, 1), (2, 2), (3, 1), (3, 2), (3, 3),
               (4, 1), (4, 2), (4, 3), (4, 4), (5, 1)}


def _shared_state():
    if not hasattr(_shared_state, "state"):
        _shared_state.state = ss.run()
    return _shared_state.state


def check_homotopy_table() -> CriterionResult:
    t0 = time.time()
    state = ss.run()
    details = []
    if state.contradictions:
        details.append(f"contradictions: {state.contradictions}")
    table = ss.assemble_homotopy(state)
    got = [(h.stem, h.orders, h.colors, h.generators) for h in table]
    for want, have in zip(EXPECTED_HOMOTOPY, got):
        if want != have:
            details.append(f"stem {want[0]}: expected {want[1:]}, got {have[1:]}")
    unresolved = [h.stem for h in table if h.unresolved]
    if unresolved:
        details.append(f"unresolved extensions in stems {unresolved}")
    seconds = time.time() - t0
    verdict = "pass" if not details and seconds < 60 else "fail"
    if seconds >= 60:
        details.append(f"runtime {seconds:.1f}s over the 60s budget")
    return CriterionResult("homotopy table pi_0..pi_8", verdict, seconds, details)


def check_c2_einfty() -> CriterionResult:
    t0 = time.time()
    run = ss.C2Run(16)
    details = []
    for n in range(17):
        surv = run.survivors(n)
        if set(surv) - {n}:
            details.append(f"stem {n}: classes off the diagonal at {sorted(surv)}")
        want = ss.quotient_algebra_dim(n)
        have = sum(surv.values())
        if have != want:
            details.append(f"stem {n}: dim {have}, quotient algebra has {want}")
    verdict = "pass" if not details else "fail"
    return CriterionResult("C2-level E-infinity stems 0..16", verdict, time.time() - t0, details)


def check_oracle_grid() -> CriterionResult:
    t0 = time.time()
    details = []
    for a in range(-6, 7):
        for b in range(-6, 7):
            for c in range(0, 4):
                deg = DegreeC4(a, b, c)
                mk = coef_piece_c4(deg).to_mackey()
                if mk.signature() != localized_homotopy(deg, 0).signature():
                    details.append(f"mismatch at degree ({a},{b},{c})")
    pi0 = coef_piece_c4(DegreeC4(0, 0, 0)).to_mackey().levels()[0]
    if tuple(pi0.torsion) != (4,) or pi0.rank:
        details.append(f"level-4 pi_0 is {pi0}, not Z/4")
    seconds = time.time() - t0
    verdict = "pass" if not details and seconds < 300 else "fail"
    if seconds >= 300:
        details.append(f"runtime {seconds:.1f}s over the 5min budget")
    return CriterionResult("coefficients vs Bredon oracle grid", verdict, seconds, details)


def check_tate_cohomology() -> CriterionResult:
    t0 = time.time()
    details = []
    dims = [steenrod.tate_group(d)[0] for d in range(25)]
    if dims != TATE_DIMS:
        details.append(f"dims 0..24: got {dims}")
    for d, want in [(2, 1), (3, 0), (7, 0)]:
        if dims[d] != want:
            details.append(f"relation check degree {d}: dim {dims[d]} != {want}")
    if steenrod.power_nontrivial(1, 2)[0]:
        details.append("(xi1 zeta1)^2 should be trivial")
    truth = {}
    for i in range(1, 6):
        k = 1
        while 2 * k * (2 ** i - 1) <= 120:
            ok, cert = steenrod.power_nontrivial(i, k)
            truth[(i, k)] = ok
            if "route" not in cert:
                details.append(f"missing certificate for ({i},{k})")
            k += 1
    true_set = {key for key, v in truth.items() if v}
    missing = PROP_POWERS - true_set
    if missing:
        details.append(f"claimed powers found trivial: {sorted(missing)}")
    extras = true_set - PROP_POWERS
    seconds = time.time() - t0
    if details or seconds >= 300:
        verdict = "fail"
        if seconds >= 300:
            details.append(f"runtime {seconds:.1f}s over the 5min budget")
    elif extras:
        verdict = "fail (documented)"
        details.append(
            "every claimed nontrivial power is nontrivial and (xi1 zeta1)^2 is"
            " trivial, but the claimed list is not exhaustive: exact row"
            f" reduction also finds {sorted(extras)} nontrivial, consistent"
            " with the source's own remark that higher powers survive."
            " See notes/decisions.md."
        )
    else:
        verdict = "pass"
    return CriterionResult("Tate cohomology dims and power list", verdict, seconds, details)


def check_tate_differentials() -> CriterionResult:
    t0 = time.time()
    details = []
    run = tatess.run_tate_rules()
    frozen = json.loads(
        resources.files("sliceforge.data").joinpath("tate_golden.json").read_text()
    )
    fresh = tatess.golden_chart(run)
    if fresh != frozen:
        details.append("regenerated golden chart differs from the frozen file")
    violations, unruled = tatess.collapse_audit(run)
    if violations:
        details.append(f"sub-slope-1 survivors with rule provenance: {violations}")
    if unruled != ["(8,4) N(xi2) u_s^3 x^2"]:
        details.append(f"unexpected no-rule markers: {unruled}")
    audit = tatess.comparison_audit()
    if audit:
        details.append(f"comparison-naturality audit: {audit}")
    timing = tatess.norm_timing_audit(run)
    if timing:
        details.append(f"norm timing audit: {timing}")
    verdict = "pass" if not details else "fail"
    return CriterionResult("Tate differential rules and golden chart", verdict, time.time() - t0, details)


def check_bounds() -> CriterionResult:
    t0 = time.time()
    details = []
    got = [tatess.tate_generator_bounds(k) for k in range(4)]
    want = [(2, 3), (4, 7), (8, 15), (9, 31)]
    if got != want:
        details.append(f"bounds: got {got}, want {want}")
    rho = [tatess.radon_hurwitz(2 ** e) for e in range(6)]
    if rho != [1, 2, 4, 8, 9, 10]:
        details.append(f"rho on 2-powers: {rho}")
    verdict = "pass" if not details else "fail"
    return CriterionResult("Tate generator bounds", verdict, time.time() - t0, details)


def check_permanent_cycles() -> CriterionResult:
    t0 = time.time()
    details = []
    for row in ss.permanent_cycle_audit(ss.builtin_rules()):
        k, i = row["k"], row["i"]
        want = i < 2 ** (k + 1) - 1
        if row["survives"] != want:
            details.append(f"N(t{k}) aS^{i}: survives={row['survives']}, want {want}")
    verdict = "pass" if not details else "fail"
    return CriterionResult("norm permanent cycles", verdict, time.time() - t0, details)


def check_property_suites() -> CriterionResult:
    t0 = time.time()
    details = []
    state = _shared_state()
    # Mackey axioms on every emitted functor
    for spot in sorted(state.spots):
        mk = state.mackey(spot)
        issues = mk.check_axioms()
        if issues:
            details.append(f"Mackey axioms at {spot}: {issues}")
    # d of d = 0 and the odd-page checkerboard over the full log
    for d in state.log:
        s, f = d.source_spot
        if d.page % 2 == 0:
            details.append(f"even page {d.page} at {d.source_spot}")
        if d.target_spot != (s - 1, f + d.page):
            details.append(f"bidegree violation at {d.source_spot}")
    if state.contradictions:
        details.append(f"d^2 contradictions: {state.contradictions}")
    # gold-relation confluence: associativity of the reduced product
    monos = [
        CoefMono(c, x, y, z, e)
        for c in (1, 2)
        for x in (0, 1)
        for y in (0, 1, 2)
        for z in (0, 1, 2)
        for e in (0, 1)
    ]
    rng = random.Random(0)
    for _ in range(300):
        a, b, c = rng.choice(monos), rng.choice(monos), rng.choice(monos)
        if mono_mul(mono_mul(a, b), c) != mono_mul(a, mono_mul(b, c)):
            details.append(f"gold confluence breaks on {a}, {b}, {c}")
    # conjugation involution
    for d in range(13):
        for m in steenrod.monomials_of_topdeg(d):
            p = frozenset({m})
            if steenrod.conjugate(steenrod.conjugate(p)) != p:
                details.append(f"conjugation not involutive on {m}")
    # batch/interactive equivalence in a shuffled order
    from .service import Session

    session = Session(DEFAULT_WINDOW)
    rules = ss.builtin_rules()
    rng.shuffle(rules)
    for rule in rules:
        status, payload = session.apply(rule)
        if status == "contradiction":
            details.append(f"interactive assert of {rule.source} contradicted: {payload}")
    if session.chart != state.chart_json():
        details.append("interactive chart differs from the batch chart")
    verdict = "pass" if not details else "fail"
    return CriterionResult("property suites", verdict, time.time() - t0, details)


CHECKS: List[Callable[[], CriterionResult]] = [
    check_homotopy_table,
    check_c2_einfty,
    check_oracle_grid,
    check_tate_cohomology,
    check_tate_differentials,
    check_bounds,
    check_permanent_cycles,
    check_property_suites,
]


def run_all() -> List[CriterionResult]:
    return [check() for check in CHECKS]
