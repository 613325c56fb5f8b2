"""Angle trisection with a traced conchoid.

Frame: apex ``E`` at the origin, ``l`` the x-axis, ``D = r(cos phi, sin phi)``
and ``F = (r, 0)`` so that the circle about ``E`` through ``F`` has radius
``|DE|``.  The conchoid with pole ``D``, base ``l`` and distance ``|DE|`` is
traced, ``G`` is taken where it meets that circle above ``l`` away from the
pole, and ``H`` is where line ``DG`` meets ``l``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from . import projective as pg
from .bundled import trisection_conchoid_text
from .construction import evaluate
from .dsl import parse_construction
from .errors import AmbiguousStep, DegenerateConfiguration, DegenerateOp
from .oracles import angle_at, polyline_circle_intersections
from .tracer import Locus, TraceConfig, trace


@dataclass(frozen=True)
class Trisection:
    phi: float
    D: tuple
    E: tuple
    F: tuple
    G: tuple
    H: tuple
    locus: Locus

    @property
    def angle(self) -> float:
        return angle_at(self.H, self.E, self.G)

    @property
    def error(self) -> float:
        return abs(self.angle - self.phi / 3)


def _eval_from(c, state, t_from: float, t_to: float, depth: int = 0):
    """Continue ``state`` along the real t-axis, halving when proximity is unsure."""
    try:
        return evaluate(c, t_to, state)
    except (AmbiguousStep, DegenerateOp):
        if depth > 30:
            raise
        mid = 0.5 * (t_from + t_to)
        return _eval_from(c, _eval_from(c, state, t_from, mid, depth + 1), mid, t_to, depth + 1)


def _refine_on_circle(c, lp0, lp1, r: float, tol: float = 1e-15):
    """Secant on real t between two records for the tracer on ``|P| = r``."""
    t0, t1 = lp0.t_at.real, lp1.t_at.real
    state = lp0.state

    def g(t):
        x, y = pg.real_affine(_eval_from(c, state, t0, t).tracer(c))
        return x * x + y * y - r * r, (x, y)

    (g0, _), (g1, p1) = g(t0), g(t1)
    a, b = t0, t1
    best = p1
    for _ in range(60):
        if g1 == g0:
            break
        t2 = b - g1 * (b - a) / (g1 - g0)
        a, g0 = b, g1
        b = t2
        g1, best = g(b)
        if abs(g1) <= tol * r * r:
            break
    return best


def trisect(phi: float, r: float = 1.0, cfg: TraceConfig | None = None) -> Trisection:
    """Trisect the acute angle ``phi`` (radians)."""
    if not 0 < phi < math.pi / 2:
        raise ValueError("trisection expects an acute angle")
    cfg = cfg or TraceConfig()
    D = (r * math.cos(phi), r * math.sin(phi))
    E, F = (0.0, 0.0), (r, 0.0)
    c = parse_construction(trisection_conchoid_text(phi, r))
    locus = trace(c, 0.0, cfg)
    hits = [
        h
        for h in polyline_circle_intersections(locus, E, r)
        if h.point[1] > 1e-9 and math.dist(h.point, D) > 0.1 * r
    ]
    if not hits:
        raise DegenerateConfiguration("the conchoid does not meet the circle above the base line")
    h = max(hits, key=lambda h: math.dist(h.point, D))
    arc = locus.arcs[h.arc]
    lp0, lp1 = arc[h.segment], arc[h.segment + 1]
    if lp0.state is not None and abs(lp0.t_at.imag) == 0 and abs(lp1.t_at.imag) == 0 and math.isfinite(lp1.t_at.real):
        G = _refine_on_circle(c, lp0, lp1, r)
    else:
        G = h.point
    m = pg.join(pg.HomPoint.affine(*D), pg.HomPoint.affine(*G))
    H = pg.real_affine(pg.meet(m, pg.HomLine(0j, 1 + 0j, 0j)))
    return Trisection(phi, D, E, F, G, H, locus)
