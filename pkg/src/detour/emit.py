"""CSV, SVG and JSON renderings of a traced locus."""
from __future__ import annotations

import json
import math
from typing import Optional

from .errors import EmptyLocus
from .tracer import Locus, LocusPoint, TraceConfig


def _num(x: float) -> str:
    """Shortest text that parses back to the same double (at most 17 significant digits)."""
    x = float(x)
    if x == 0:
        return "0"
    if x == int(x) and abs(x) < 1e16:
        return str(int(x))
    return repr(x)


def _t_parts(lp: LocusPoint) -> tuple[float, float]:
    return lp.t_at.real, lp.t_at.imag


def emit_csv(locus: Locus) -> str:
    lines = ["x,y,re_t,im_t"]
    for i, arc in enumerate(locus.arcs):
        if i:
            lines.append("")
        for lp in arc:
            if lp.point is None:
                lines.append("# infinity: " + ":".join(_num(v) for v in lp.hom))
            else:
                lines.append(",".join(_num(v) for v in (*lp.point, *_t_parts(lp))))
    return "\n".join(lines) + "\n"


def parse_csv(text: str) -> list[list[tuple[float, float, float, float]]]:
    """Inverse of :func:`emit_csv` for the finite rows, grouped by arc."""
    arcs, cur = [], []
    for line in text.splitlines()[1:]:
        if not line.strip():
            arcs.append(cur)
            cur = []
        elif not line.startswith("#"):
            cur.append(tuple(float(v) for v in line.split(",")))
    arcs.append(cur)
    return [a for a in arcs if a]


def _finite_arcs(locus: Locus) -> list[list[tuple]]:
    return [[lp.point for lp in arc if lp.point is not None] for arc in locus.arcs]


def emit_svg(locus: Locus, width: int = 800, height: int = 800, margin_fraction: float = 0.05,
             stroke: str = "#555", stroke_width: float = 1.5) -> str:
    """One polyline per arc, y pointing up, viewBox fitted to the finite points."""
    arcs = [a for a in _finite_arcs(locus) if a]
    if not arcs:
        raise EmptyLocus("locus has no finite points")
    xs = [p[0] for a in arcs for p in a]
    ys = [p[1] for a in arcs for p in a]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    # a degenerate extent (all points on a vertical or horizontal line) gets a unit box
    span = max(x1 - x0, y1 - y0) or 1.0
    w, h = (x1 - x0) or span, (y1 - y0) or span
    mx, my = margin_fraction * w, margin_fraction * h
    vb = (x0 - mx, -(y1 + my), w + 2 * mx, h + 2 * my)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="{" ".join(_fmt(v) for v in vb)}" preserveAspectRatio="xMidYMid meet">',
        f'<g fill="none" stroke="{stroke}" stroke-width="{_fmt(stroke_width * max(vb[2], vb[3]) / max(width, height))}" '
        'stroke-linejoin="round" stroke-linecap="round">',
    ]
    for arc in arcs:
        pts = " ".join(f"{_fmt(x)},{_fmt(-y)}" for x, y in arc)
        out.append(f'<polyline points="{pts}"/>')
    out += ["</g>", "</svg>"]
    return "\n".join(out) + "\n"


def _fmt(v: float) -> str:
    s = f"{v:.10g}"
    return "0" if s == "-0" else s


def emit_json(locus: Locus, config: Optional[TraceConfig] = None, **extra) -> str:
    meta = {
        "reversal_count": locus.reversal_count,
        "detours_used": locus.detours_used,
        "closed": locus.closed,
    }
    if config is not None:
        meta = {
            "variant": config.variant,
            "eps": config.eps,
            "detour_steps": config.detour_steps,
            "orientation": config.orientation,
            **meta,
        }
    meta.update(extra)
    arcs = []
    for arc in locus.arcs:
        pts, inf = [], []
        for lp in arc:
            if lp.point is None:
                inf.append(list(lp.hom))
            else:
                # t = infinity has no JSON number; it is written as null
                t = [v if math.isfinite(v) else None for v in _t_parts(lp)]
                pts.append([lp.point[0], lp.point[1], *t])
        arcs.append({"points": pts, "infinity": inf})
    return json.dumps({"metadata": meta, "arcs": arcs}, indent=1, allow_nan=False) + "\n"

