"""SVG rendering of chart JSON snapshots.

One glyph per Mackey shape, solid lines for differentials, dashed green
lines for exotic restrictions and dashed blue for exotic transfers.  A
legend of the glyphs in use is emitted under the grid.
"""

import json
from typing import Dict, List, Tuple

CELL = 28
MARGIN = 46
GLYPH_RADIUS = 5

GLYPHS = {
    "bullet": "filled disc",
    "circle": "open circle",
    "box": "open square",
    "bar_bullet": "disc with overbar",
    "hat_bullet": "disc with hat",
    "triangle_up": "upward triangle",
    "triangle_down": "downward triangle",
}


def _pos(stem: int, filt: int, window) -> Tuple[float, float]:
    (s0, s1), (f0, f1) = window
    x = MARGIN + (stem - s0) * CELL
    y = MARGIN + (f1 - filt) * CELL
    return x, y


def _glyph(label: str, x: float, y: float) -> str:
    r = GLYPH_RADIUS
    if label == "circle":
        return f'<circle cx="{x}" cy="{y}" r="{r}" fill="none" stroke="black"/>'
    if label == "box":
        return (
            f'<rect x="{x - r}" y="{y - r}" width="{2 * r}" height="{2 * r}"'
            ' fill="none" stroke="black"/>'
        )
    if label == "triangle_up":
        pts = f"{x},{y - r} {x - r},{y + r} {x + r},{y + r}"
        return f'<polygon points="{pts}" fill="none" stroke="black"/>'
    if label == "triangle_down":
        pts = f"{x},{y + r} {x - r},{y - r} {x + r},{y - r}"
        return f'<polygon points="{pts}" fill="none" stroke="black"/>'
    disc = f'<circle cx="{x}" cy="{y}" r="{r}" fill="black"/>'
    if label == "bar_bullet":
        return disc + (
            f'<line x1="{x - r}" y1="{y - r - 3}" x2="{x + r}"'
            f' y2="{y - r - 3}" stroke="black"/>'
        )
    if label == "hat_bullet":
        return disc + (
            f'<polyline points="{x - r},{y - r - 1} {x},{y - r - 5}'
            f' {x + r},{y - r - 1}" fill="none" stroke="black"/>'
        )
    return disc


def render_chart(chart: dict) -> str:
    """Chart JSON (parsed) to a standalone SVG document."""
    w = chart["window"]
    window = ((w["stem_min"], w["stem_max"]), (w["filt_min"], w["filt_max"]))
    (s0, s1), (f0, f1) = window
    width = MARGIN * 2 + (s1 - s0) * CELL
    height = MARGIN * 2 + (f1 - f0) * CELL + 20 * (len(GLYPHS) + 2)
    parts: List[str] = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}"'
        f' height="{height}" font-family="monospace" font-size="10">'
    ]
    for s in range(s0, s1 + 1):
        x, y = _pos(s, f0, window)
        parts.append(
            f'<text x="{x}" y="{y + 16}" text-anchor="middle">{s}</text>'
        )
    for f in range(f0, f1 + 1):
        x, y = _pos(s0, f, window)
        parts.append(
            f'<text x="{x - 14}" y="{y + 3}" text-anchor="end">{f}</text>'
        )
    used: Dict[str, str] = {}
    for dot in chart["dots"]:
        x, y = _pos(dot["stem"], dot["filtration"], window)
        label = dot["mackey"] if dot["mackey"] in GLYPHS else "bullet"
        used[label] = GLYPHS[label]
        title = "; ".join(dot["names"]) or "; ".join(dot.get("c2_names", []))
        parts.append(f"<g><title>{title}</title>{_glyph(label, x, y)}</g>")
    for d in chart.get("diffs", []):
        x1, y1 = _pos(*d["from"], window)
        x2, y2 = _pos(*d["to"], window)
        parts.append(
            f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"'
            ' stroke="black" stroke-width="0.7"/>'
        )
    for e in chart.get("exotic", []):
        x1, y1 = _pos(e["stem"], e["from"], window)
        x2, y2 = _pos(e["stem"], e["to"], window)
        color = "green" if e["kind"] == "restriction" else "blue"
        parts.append(
            f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"'
            f' stroke="{color}" stroke-dasharray="4 3" stroke-width="0.9"/>'
        )
    ly = MARGIN + (f1 - f0) * CELL + 30
    parts.append(f'<text x="{MARGIN}" y="{ly}">legend:</text>')
    for i, (label, desc) in enumerate(sorted(used.items())):
        y = ly + 18 * (i + 1)
        parts.append(_glyph(label, MARGIN + 6, y - 3))
        parts.append(f'<text x="{MARGIN + 18}" y="{y}">{label}: {desc}</text>')
    parts.append("</svg>")
    return "".join(parts)


def render_chart_json(text: str) -> str:
    return render_chart(json.loads(text))
