"""Command-line surface: batch runs, the verification suite, and the service."""

import argparse
import dataclasses
import json
import os
import pathlib
import sys
from typing import List, Optional

from .coefficients import DegreeC4, coef_piece_c4
from .e2page import DEFAULT_WINDOW, Window
from .ssengine import (
    DifferentialRule,
    assemble_homotopy,
    builtin_rules,
    load_script,
    run,
)
from . import acceptance, steenrod, svg, tatess

PAGES = [3, 5, 7, 9, 11, 13, 15, 29, 31]


def parse_window(text: str) -> Window:
    """Parse "smin:smax,fmin:fmax" into a window."""
    try:
        stems, filts = text.split(",")
        s0, s1 = (int(v) for v in stems.split(":"))
        f0, f1 = (int(v) for v in filts.split(":"))
    except ValueError:
        raise SystemExit(f"bad window {text!r}; expected smin:smax,fmin:fmax")
    return ((s0, s1), (f0, f1))


def _load_rules(path: Optional[str]) -> List[DifferentialRule]:
    if path is None:
        return builtin_rules()
    return load_script(pathlib.Path(path).read_text())


def _emit(out_dir: pathlib.Path, name: str, chart: str, fmt: str) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / f"{name}.json").write_text(chart + "\n")
    if fmt == "svg":
        (out_dir / f"{name}.svg").write_text(svg.render_chart_json(chart))


def cmd_run(args) -> int:
    window = parse_window(args.window) if args.window else DEFAULT_WINDOW
    rules = _load_rules(args.rules)
    bad = [r for r in rules if r.page % 2 == 0 or r.page < 3]
    if bad:
        print(json.dumps({"schema": "sliceforge/1", "error": "even page rule",
                          "rules": [f"d{r.page}: {r.source}" for r in bad]}))
        return 2
    out_dir = pathlib.Path(args.out)
    (s0, s1), (f0, f1) = window
    if s0 >= s1 or f0 >= f1:
        _emit(out_dir, "page-final", json.dumps(
            {"schema": "sliceforge/1", "page": 2, "window": {
                "stem_min": s0, "stem_max": s1, "filt_min": f0, "filt_max": f1},
             "dots": [], "diffs": [], "exotic": []}), args.format)
        return 0
    state = run(window, rules, max_page=2)
    for r in PAGES:
        state.run(max_page=r)
        _emit(out_dir, f"page-{r}", state.chart_json(), args.format)
    state.run()
    if state.contradictions:
        print(json.dumps({"schema": "sliceforge/1", "error": "contradiction",
                          "contradictions": state.contradictions}))
        return 1
    _emit(out_dir, "page-final", state.chart_json(), args.format)
    rows = [dataclasses.asdict(h) for h in assemble_homotopy(state)]
    (out_dir / "homotopy.json").write_text(
        json.dumps({"schema": "sliceforge/1", "homotopy": rows}, indent=1) + "\n")
    for row in rows:
        gens = ", ".join(row["generators"])
        print(f"pi_{row['stem']}: {row['orders']}  {gens}")
    return 0


def cmd_verify(args) -> int:
    results = acceptance.run_all()
    for res in results:
        print(res.line())
    return 0 if all(res.ok for res in results) else 1


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    window = parse_window(args.window) if args.window else DEFAULT_WINDOW
    uvicorn.run(create_app(window), host="127.0.0.1", port=args.port)
    return 0


def cmd_bredon(args) -> int:
    from .bredon import localized_homotopy

    deg = DegreeC4(args.a, args.b, args.c)
    mk = localized_homotopy(deg, args.k)
    print(json.dumps({"schema": "sliceforge/1", "degree": [args.a, args.b, args.c],
                      "k": args.k, "mackey": mk.to_json(), "label": mk.classify()},
                     indent=1))
    return 0


def cmd_coef(args) -> int:
    piece = coef_piece_c4(DegreeC4(args.a, args.b, args.c))
    mk = piece.to_mackey()
    print(json.dumps({"schema": "sliceforge/1", "degree": [args.a, args.b, args.c],
                      "classes": [c.name for c in piece.classes],
                      "c2_generator": piece.c2_generator,
                      "mackey": mk.to_json(), "label": mk.classify()}, indent=1))
    return 0


def _cache_path(name: str) -> Optional[pathlib.Path]:
    root = os.environ.get("SLICEFORGE_CACHE")
    if not root:
        return None
    path = pathlib.Path(root)
    path.mkdir(parents=True, exist_ok=True)
    return path / name


def cmd_tate_h0(args) -> int:
    bound = args.max_degree
    cache = _cache_path(f"tate-h0-{bound}.json")
    if cache is not None and cache.exists():
        dims = json.loads(cache.read_text())["dims"]
    else:
        dims = [steenrod.tate_group(d, bound=bound)[0] for d in range(bound + 1)]
        if cache is not None:
            cache.write_text(json.dumps({"schema": "sliceforge/1", "dims": dims}))
    print(json.dumps({"schema": "sliceforge/1", "max_degree": bound, "dims": dims}))
    return 0


def cmd_power_check(args) -> int:
    cache = _cache_path(f"power-{args.i}-{args.k}-{args.max_degree}.json")
    if cache is not None and cache.exists():
        body = json.loads(cache.read_text())
    else:
        ok, report = steenrod.power_nontrivial(args.i, args.k, bound=args.max_degree)
        body = {"schema": "sliceforge/1", "i": args.i, "k": args.k,
                "nontrivial": ok, "route": report.get("route", ""),
                "degree": report.get("degree")}
        if cache is not None:
            cache.write_text(json.dumps(body))
    print(json.dumps(body))
    return 0


def cmd_bounds(args) -> int:
    rows = []
    for k in range(1, args.k + 1):
        lo, hi = tatess.tate_generator_bounds(k)
        rows.append({"k": k, "lower": lo, "upper": hi})
    print(json.dumps({"schema": "sliceforge/1", "bounds": rows}, indent=1))
    return 0


def cmd_tate(args) -> int:
    window = parse_window(args.window) if args.window else tatess.DEFAULT_WINDOW
    chart = tatess.golden_chart(tatess.run_tate_rules(window))
    text = json.dumps(chart, indent=1, sort_keys=True)
    if args.format == "svg":
        dots = [{"stem": d["stem"], "filtration": d["filtration"],
                 "mackey": "bullet", "names": d["names"], "c2_names": []}
                for d in chart["dots"]]
        (s0, s1), (f0, f1) = window
        text = svg.render_chart({"schema": "sliceforge/1", "page": 2,
                                 "window": {"stem_min": s0, "stem_max": s1,
                                            "filt_min": f0, "filt_max": f1},
                                 "dots": dots, "diffs": [], "exotic": []})
    print(text)
    return 0


def main(argv: Optional[List[str]] = None) -> int:
    parser = argparse.ArgumentParser(prog="sliceforge")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run the slice spectral sequence and emit charts")
    p.add_argument("--window")
    p.add_argument("--rules")
    p.add_argument("--format", choices=["json", "svg"], default="json")
    p.add_argument("--out", default="out")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("verify", help="run the acceptance checks")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("serve", help="serve the interactive chart session")
    p.add_argument("--window")
    p.add_argument("--port", type=int, default=8134)
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("bredon", help="Bredon homology Mackey functor of a sphere")
    p.add_argument("a", type=int)
    p.add_argument("b", type=int)
    p.add_argument("c", type=int)
    p.add_argument("--k", type=int, default=0)
    p.set_defaults(func=cmd_bredon)

    p = sub.add_parser("coef", help="localized coefficient piece in one degree")
    p.add_argument("a", type=int)
    p.add_argument("b", type=int)
    p.add_argument("c", type=int)
    p.set_defaults(func=cmd_coef)

    p = sub.add_parser("tate-h0", help="Tate zero-line dimensions by degree")
    p.add_argument("--max-degree", type=int, default=24)
    p.set_defaults(func=cmd_tate_h0)

    p = sub.add_parser("power-check", help="is (xi_i zeta_i)^k nonzero in Tate H^0")
    p.add_argument("i", type=int)
    p.add_argument("k", type=int)
    p.add_argument("--max-degree", type=int, default=28)
    p.set_defaults(func=cmd_power_check)

    p = sub.add_parser("bounds", help="dimension bounds for the k-th generator")
    p.add_argument("--k", type=int, default=4)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("tate", help="doubled Tate chart with rule provenance")
    p.add_argument("--window")
    p.add_argument("--format", choices=["json", "svg"], default="json")
    p.set_defaults(func=cmd_tate)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
