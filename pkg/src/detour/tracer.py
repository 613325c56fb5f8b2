"""Locus generation by complex detours.

The time parameter never runs along the real axis directly.  Each step from
``t`` to ``t' = t + s*eps`` is replaced by a walk on the circle with diameter
``[t, t']``; ambiguous construction elements are continued by proximity along
that walk, so that going around a ramification point swaps branches exactly
as analytic continuation does.

Variant A records the tracer only at real times and reverses the mover
(``s -> -s``) when the tracer is real again only after a full circle.
Variant B records the tracer wherever it becomes real on a detour, including
at complex times, and steers with ``s = (t - a) / |t - a|``.

Time lives on the Riemann sphere.  The walk uses the chart ``t`` while
``|t|`` is moderate and switches to ``w = -1/t`` beyond ``CHART_SWITCH`` so
that loops through ``t = infinity`` close after finitely many detours.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field, replace
from typing import Callable, Optional

from . import projective as pg
from .construction import Construction, ConstructionState, evaluate, initial_state
from .errors import AmbiguousStep, DegenerateOp, NonTerminating, RefinementExhausted
from .projective import HomPoint, Tolerances

CHART_SWITCH = 1.5
MAX_SHRINKS = 24
# eps shrink factor on a failed detour; not 1/2 so that retries do not land on
# the same grid of real times
SHRINK = 0.6180339887498949
SINGULAR_SEP = 1e-6
# radius of the junction probe circle, relative to the detour radius
JUNCTION_PROBE = 1e-3
# the infinity search is optional, so its continuation gets a small budget
INFINITY_WALK_DEPTH = 8
TWO_PI = 2 * math.pi


@dataclass(frozen=True)
class TraceConfig:
    variant: str = "A"
    eps: float = 0.05
    detour_steps: int = 32
    orientation: str = "anticlockwise"
    max_detours: int = 200_000
    tolerances: Tolerances = field(default_factory=Tolerances)
    max_refine_depth: int = 60
    margin_floor: float = 1e-9
    strict_return: bool = False

    def __post_init__(self):
        aliases = {"acw": "anticlockwise", "ccw": "anticlockwise", "cw": "clockwise"}
        object.__setattr__(self, "orientation", aliases.get(self.orientation, self.orientation))
        object.__setattr__(self, "variant", self.variant.upper())
        if self.variant not in ("A", "B"):
            raise ValueError(f"variant must be A or B, not {self.variant!r}")
        if self.orientation not in ("anticlockwise", "clockwise"):
            raise ValueError(f"bad orientation {self.orientation!r}")
        if not self.eps > 0:
            raise ValueError("eps must be positive")
        if self.detour_steps < 4 or self.detour_steps % 2:
            raise ValueError("detour_steps must be an even number >= 4")
        if self.max_detours < 1:
            raise ValueError("max_detours must be >= 1")

    @property
    def turn(self) -> int:
        return 1 if self.orientation == "anticlockwise" else -1


@dataclass(frozen=True)
class DetourState:
    """Position on the current detour circle.

    ``t`` is the coordinate in chart ``chart`` (0: ``t``, 1: ``w = -1/t``).
    """

    t: complex
    s: complex
    center: complex
    theta: float
    state: ConstructionState
    radius: float = 0.0
    chart: int = 0

    @property
    def time(self):
        return chart_time(self.chart, self.t)


@dataclass(frozen=True)
class LocusPoint:
    point: Optional[tuple]  # real affine (x, y), None at infinity
    hom: tuple  # normalized real homogeneous triple
    t_at: complex
    # construction state at the record, for refining or re-evaluating nearby
    state: Optional[ConstructionState] = field(default=None, compare=False, repr=False)

    @property
    def at_infinity(self) -> bool:
        return self.point is None


@dataclass
class Locus:
    arcs: list
    reversal_count: int = 0
    detours_used: int = 0
    closed: bool = False
    records: list = field(default_factory=list)
    bounces: list = field(default_factory=list)  # (chart, center, radius) of reversing detours

    @property
    def points(self) -> list:
        return [p for arc in self.arcs for p in arc]

    def finite_xy(self) -> list:
        return [p.point for p in self.points if p.point is not None]


# ---------------------------------------------------------------------------
# time charts


def chart_time(chart: int, z: complex):
    return (z, 1 + 0j) if chart == 0 else (-1 + 0j, z)


def to_chart(chart: int, time) -> complex:
    u, v = time
    num, den = (u, v) if chart == 0 else (-v, u)
    return complex(math.inf, 0) if den == 0 else num / den


def t_value(chart: int, z: complex) -> complex:
    if chart == 0:
        return z
    return complex(math.inf, 0) if z == 0 else -1 / z


def canonical_chart(t0: float) -> tuple[int, complex]:
    return (0, complex(t0)) if abs(t0) <= 1 else (1, -1 / complex(t0))


def chordal(time1, time2) -> float:
    return pg.projective_distance((time1[0], time1[1], 0j), (time2[0], time2[1], 0j))


def _switch_chart(chart, z, s):
    """Move to the other chart; directions transform with the derivative 1/z^2."""
    d = 1 / (z * z)
    return 1 - chart, -1 / z, s * d / abs(d)


# ---------------------------------------------------------------------------
# detour primitives


def detour_circle(t: complex, s: complex, eps: float) -> tuple[complex, float]:
    """Circle having the segment ``[t, t + s*eps]`` as its diameter."""
    return t + s * eps / 2, eps / 2


def _point_on_circle(center, radius, theta):
    return center + radius * cmath.exp(1j * theta)


def _advance(c, cfg, ds: DetourState, theta: float, depth: int = 0, t_exact=None) -> DetourState:
    """Move along the detour circle to angle ``theta``, halving on ambiguity."""
    t = t_exact if t_exact is not None else _point_on_circle(ds.center, ds.radius, theta)
    try:
        st = evaluate(c, chart_time(ds.chart, t), ds.state, cfg.tolerances.tol_degenerate, cfg.margin_floor)
    except (AmbiguousStep, DegenerateOp) as exc:
        if depth >= cfg.max_refine_depth:
            raise RefinementExhausted(f"step refinement exhausted near t={t:.6g}") from exc
        mid = 0.5 * (ds.theta + theta)
        half = _advance(c, cfg, ds, mid, depth + 1)
        return _advance(c, cfg, half, theta, depth + 1, t_exact)
    return replace(ds, t=t, theta=theta, state=st)


def step_on_detour(ds: DetourState, c: Construction, cfg: TraceConfig, t_exact=None) -> DetourState:
    """One substep of ``2*pi/detour_steps`` in the configured orientation."""
    return _advance(c, cfg, ds, ds.theta + cfg.turn * TWO_PI / cfg.detour_steps, 0, t_exact)


def _start_detour(chart, t, s, eps, state) -> DetourState:
    center, radius = detour_circle(t, s, eps)
    return DetourState(t, s, center, cmath.phase(-s), state, radius, chart)


# ---------------------------------------------------------------------------
# realness helpers


def _ref_index(p: HomPoint) -> int:
    return max(range(3), key=lambda i: abs(p[i]))


def _imag_parts(p: HomPoint, k: int) -> tuple:
    return tuple((p[j] / p[k]).imag for j in range(3))


def _max_imag(p: HomPoint) -> float:
    return max(abs(x.imag) for x in pg.normalize(p))


def _crossing_component(pa: HomPoint, pb: HomPoint, k: int, tol: float):
    """Component whose imaginary part changes sign between ``pa`` and ``pb``."""
    ia, ib = _imag_parts(pa, k), _imag_parts(pb, k)
    best, best_gap = None, 0.0
    for j in range(3):
        if j == k:
            continue
        if ia[j] * ib[j] < 0 and max(abs(ia[j]), abs(ib[j])) > tol:
            gap = abs(ia[j] - ib[j])
            if gap > best_gap:
                best, best_gap = j, gap
    return best


def refine_real_crossing(c: Construction, ds: DetourState, theta_lo: float, theta_hi: float, cfg: TraceConfig):
    """Bisect on the detour angle for a real position of the tracer.

    ``ds`` must sit at ``theta_lo``.  Returns ``(theta_star, DetourState)`` or
    None when the interval holds no crossing (a near miss or a sign change
    of only some of the coordinates).
    """
    tol = cfg.tolerances.tol_real
    lo = ds
    hi = _advance(c, cfg, lo, theta_hi)
    tr = c.tracer_index
    if _max_imag(lo.state.values[tr]) <= tol:
        return lo.theta, lo
    if _max_imag(hi.state.values[tr]) <= tol:
        return hi.theta, hi
    k = _ref_index(lo.state.values[tr])
    j = _crossing_component(lo.state.values[tr], hi.state.values[tr], k, tol)
    if j is None:
        return None
    sign_lo = _imag_parts(lo.state.values[tr], k)[j] > 0
    best = min((lo, hi), key=lambda d: _max_imag(d.state.values[tr]))
    # bisect down to the angular resolution; the realness tolerance is only
    # the acceptance test, stopping at it would leave t needlessly inexact
    for _ in range(cfg.max_refine_depth):
        mid_theta = 0.5 * (lo.theta + hi.theta)
        if mid_theta in (lo.theta, hi.theta):
            break
        mid = _advance(c, cfg, lo, mid_theta)
        p = mid.state.values[tr]
        if _max_imag(p) <= _max_imag(best.state.values[tr]):
            best = mid
        im = _imag_parts(p, k)[j]
        if im == 0:
            break
        if (im > 0) == sign_lo:
            lo = mid
        else:
            hi = mid
    if _max_imag(best.state.values[tr]) > math.sqrt(tol):
        return None
    return best.theta, best


# ---------------------------------------------------------------------------
# recording


def _real_hom(p: HomPoint) -> tuple:
    n = pg.normalize(p)
    return tuple(x.real for x in n)


def _locus_point(p: HomPoint, chart: int, z: complex, state=None) -> LocusPoint:
    hom = _real_hom(p)
    aff = None if abs(hom[2]) <= pg.TOL_DEGENERATE else (hom[0] / hom[2], hom[1] / hom[2])
    return LocusPoint(aff, hom, t_value(chart, z), state)


class _Recorder:
    def __init__(self, c: Construction, cfg: TraceConfig):
        self.c = c
        self.cfg = cfg
        self.records = []  # (LocusPoint, chart, z, state)

    def add(self, chart, z, state: ConstructionState, check_infinity=True):
        p = state.tracer(self.c)
        if not pg.is_real_point(p, self.cfg.tolerances.tol_real):
            return
        if check_infinity and self.cfg.variant == "B" and self.records:
            inf = _infinity_between(self.c, self.cfg, self.records[-1], chart, z, state)
            if inf is not None:
                self.records.append(inf)
        self.records.append((_locus_point(p, chart, z, state), chart, z, state))


def _same_sign_frame(p: HomPoint, q: HomPoint):
    """Real homogeneous triples of p and q scaled by a common nonzero component."""
    k = _ref_index(p)
    if abs(q[k]) <= 1e-3 * max(abs(x) for x in q):
        return None
    return [(x / p[k]).real for x in p], [(x / q[k]).real for x in q], k


def _infinity_between(c, cfg, prev, chart, z, state):
    """Locate the tracer's passage through the line at infinity between two records."""
    lp_prev, chart_prev, z_prev, st_prev = prev
    frame = _same_sign_frame(st_prev.tracer(c), state.tracer(c))
    if frame is None:
        return None
    a, b, k = frame
    if k == 2 or a[2] * b[2] >= 0:
        return None
    # Newton on g(t) = z/x_k, analytic near the crossing, in the previous chart
    z_new = to_chart(chart_prev, chart_time(chart, z))
    span = abs(z_new - z_prev)
    if not span > 0:
        return None

    def g(st):
        p = st.tracer(c)
        return p[2] / p[k]

    cur_z, cur = z_prev, st_prev
    for _ in range(40):
        h = 1e-7 * span
        try:
            fwd = _walk(c, cfg, chart_prev, cur_z, cur, cur_z + h, max_depth=INFINITY_WALK_DEPTH)
        except RefinementExhausted:
            return None
        gz = g(cur)
        dg = (g(fwd) - gz) / h
        if dg == 0:
            return None
        step = -gz / dg
        nxt_z = cur_z + step
        if abs(nxt_z - z_prev) > 2 * span:
            return None
        try:
            cur = _walk(c, cfg, chart_prev, cur_z, cur, nxt_z, max_depth=INFINITY_WALK_DEPTH)
        except RefinementExhausted:
            return None
        cur_z = nxt_z
        if abs(step) <= 1e-15 * max(1.0, abs(cur_z)):
            break
    p = cur.tracer(c)
    n = pg.normalize(p)
    if abs(n[2]) > 1e-9 or not pg.is_real_point(p, cfg.tolerances.tol_real):
        return None
    return (_locus_point(p, chart_prev, cur_z, cur), chart_prev, cur_z, cur)


def _walk(c, cfg, chart, z_from, state, z_to, depth=0, max_depth=24):
    """Straight-line continuation in one chart (used off the detour circles)."""
    try:
        return evaluate(c, chart_time(chart, z_to), state, cfg.tolerances.tol_degenerate, cfg.margin_floor)
    except (AmbiguousStep, DegenerateOp) as exc:
        if depth >= max_depth:
            raise RefinementExhausted("straight walk failed") from exc
        mid = 0.5 * (z_from + z_to)
        half = _walk(c, cfg, chart, z_from, state, mid, depth + 1, max_depth)
        return _walk(c, cfg, chart, mid, half, z_to, depth + 1, max_depth)


def _crosses_infinity(h1: tuple, h2: tuple) -> bool:
    """Whether the real homogeneous points change the sign of z relative to a shared pivot."""
    k = max(range(3), key=lambda i: min(abs(h1[i]), abs(h2[i])))
    if k == 2 or h1[k] == 0 or h2[k] == 0:
        return False
    return (h1[2] / h1[k]) * (h2[2] / h2[k]) < 0


def split_arcs(records: list, factor: float = 10.0, window: int = 8) -> list:
    """Break the ordered records into arcs.

    An arc ends after a point at infinity, where consecutive points lie on
    opposite sides of the line at infinity, and wherever the gap between two
    finite points exceeds ``factor`` times the median of the recent gaps.
    """
    arcs, cur, gaps = [], [], []
    last = None
    for lp in records:
        if lp.point is None:
            cur.append(lp)
            arcs.append(cur)
            cur, gaps, last = [], [], None
            continue
        if last is not None:
            d = math.dist(last.point, lp.point)
            jump = _crosses_infinity(last.hom, lp.hom)
            if not jump and len(gaps) >= 2:
                recent = sorted(gaps[-window:])
                med = recent[len(recent) // 2]
                jump = d > factor * med and d > 1e-12
            if jump:
                arcs.append(cur)
                cur, gaps = [], []
            else:
                gaps.append(d)
        cur.append(lp)
        last = lp
    if cur:
        arcs.append(cur)
    return [a for a in arcs if a]


# ---------------------------------------------------------------------------
# the two variants


def _returned(c, cfg, state, state0, time0, s, s0=1.0) -> bool:
    tol = cfg.tolerances.tol_return
    if chordal(state.time, time0) > tol or abs(s - s0) > tol:
        return False
    idx = range(len(state.values)) if cfg.strict_return else (c.tracer_index,)
    for i in idx:
        a, b = state.values[i], state0.values[i]
        if isinstance(a, pg.Circle):
            a, b = a.center, b.center
        if pg.projective_distance(a, b) > tol:
            return False
    return True


def _finish(rec: _Recorder, reversals, detours, closed, bounces) -> Locus:
    lps = [r[0] for r in rec.records]
    return Locus(split_arcs(lps), reversals, detours, closed, lps, bounces)


def trace_variant_a(c: Construction, t0: float, cfg: TraceConfig, on_step: Callable | None = None) -> Locus:
    """Record the tracer at real times; bounce where it stays complex."""
    tol = cfg.tolerances
    state0 = initial_state(c, t0, tol.tol_degenerate, tol.tol_real)
    chart, z = canonical_chart(t0)
    time0 = state0.time
    rec = _Recorder(c, cfg)
    rec.add(chart, z, state0)
    state, s = state0, 1.0
    half = cfg.detour_steps // 2
    reversals = detours = 0
    bounces = []

    while detours < cfg.max_detours:
        if abs(z) > CHART_SWITCH:
            chart, z, _ = _switch_chart(chart, z, s)
            z = complex(z.real, 0.0)
        eps = cfg.eps
        target = None
        z0 = to_chart(chart, time0)
        if detours and 0 < ((z0 - z) * s).real <= eps * (1 + 1e-9) and abs(z0.imag) == 0:
            eps = ((z0 - z) * s).real
            target = z0
        for _ in range(MAX_SHRINKS):
            detours += 1
            try:
                outcome = _variant_a_detour(c, cfg, chart, z, s, eps, state, half, target, on_step)
            except RefinementExhausted:
                outcome = None
            if outcome is not None:
                break
            eps *= SHRINK
            target = None
        else:
            raise RefinementExhausted(f"could not leave t={t_value(chart, z)} even with eps={eps:.3g}")
        kind, z, state = outcome
        if kind == "bounce":
            bounces.append((chart, z + s * eps / 2, eps / 2))
            s = -s
            reversals += 1
        rec.add(chart, z, state)
        if _returned(c, cfg, state, state0, time0, s):
            return _finish(rec, reversals, detours, True, bounces)
    locus = _finish(rec, reversals, detours, False, bounces)
    raise NonTerminating(cfg.max_detours, locus)


def _variant_a_detour(c, cfg, chart, z, s, eps, state, half, target, on_step):
    ds = _start_detour(chart, z, s, eps, state)
    tol_real = cfg.tolerances.tol_real
    ends = (target if target is not None else z + s * eps, z)
    for leg, t_end in enumerate(ends):
        for k in range(half):
            ds = step_on_detour(ds, c, cfg, t_exact=complex(t_end.real, 0.0) if k == half - 1 else None)
            if on_step is not None:
                on_step(ds)
        if ds.state.min_separation() <= SINGULAR_SEP:
            # landed on a singular time; proximity cannot continue from here
            return None
        if pg.is_real_point(ds.state.tracer(c), tol_real):
            return ("advance" if leg == 0 else "bounce"), ds.t, ds.state
    return None


def trace_variant_b(c: Construction, t0: float, cfg: TraceConfig, on_step: Callable | None = None) -> Locus:
    """Record every real tracer position, steering through complex time."""
    tol = cfg.tolerances
    state0 = initial_state(c, t0, tol.tol_degenerate, tol.tol_real)
    chart, z = canonical_chart(t0)
    chart0 = chart
    time0 = state0.time
    rec = _Recorder(c, cfg)
    rec.add(chart, z, state0)
    state, s = state0, 1 + 0j
    reversals = detours = 0
    bounces = []

    while detours < cfg.max_detours:
        if abs(z) > CHART_SWITCH:
            chart, z, s = _switch_chart(chart, z, s)
        eps, s_here = cfg.eps, s
        z0 = to_chart(chart, time0)
        landing = False
        gap = z0 - z
        if detours and 0 < abs(gap) <= eps and (gap * s.conjugate()).real > 0:
            eps, s_here, landing = abs(gap), gap / abs(gap), True
        for _ in range(MAX_SHRINKS):
            detours += 1
            try:
                found = _variant_b_detour(c, cfg, chart, z, s_here, eps, state, on_step)
            except RefinementExhausted:
                found = None
            if found is not None:
                break
            eps *= SHRINK
            landing = False
        else:
            raise RefinementExhausted(f"no real crossing around t={t_value(chart, z)}")
        ds = found
        t_new = ds.t
        if landing and abs(t_new - z0) <= 1e-8 * max(1.0, eps):
            t_new = z0
            ds = replace(ds, t=z0, state=evaluate(c, chart_time(chart, z0), ds.state, tol.tol_degenerate, cfg.margin_floor))
        s_new = (t_new - ds.center) / abs(t_new - ds.center)
        if abs(s_new + s_here) <= 1e-6:
            reversals += 1
            bounces.append((chart, ds.center, ds.radius))
        z, s, state = t_new, s_new, ds.state
        rec.add(chart, z, state)
        if chart == chart0 and _returned(c, cfg, state, state0, time0, s):
            return _finish(rec, reversals, detours, True, bounces)
    locus = _finish(rec, reversals, detours, False, bounces)
    raise NonTerminating(cfg.max_detours, locus)


def _variant_b_detour(c, cfg, chart, z, s, eps, state, on_step):
    """Walk the detour circle until the tracer is real again; None if it never is."""
    ds = _start_detour(chart, z, s, eps, state)
    theta0 = ds.theta
    n = cfg.detour_steps
    dtheta = cfg.turn * TWO_PI / n
    prev = step_on_detour(ds, c, cfg)
    if on_step is not None:
        on_step(prev)
    for k in range(2, n + 1):
        theta = theta0 + k * dtheta
        # the antipode and the start are hit exactly, not up to cos/sin rounding
        exact = z if k == n else (z + s * eps if 2 * k == n else None)
        cur = _advance(c, cfg, prev, theta, 0, exact)
        if on_step is not None:
            on_step(cur)
        hit = _crossing_in(c, cfg, prev, cur)
        if hit is not None:
            # a junction of real branches leaves the turn rule undefined there
            return None if _is_junction(c, cfg, hit) else hit
        prev = cur
    return None


def _is_junction(c, cfg, ds: DetourState, samples: int = 16) -> bool:
    """Whether several real branches meet at ``ds.t``.

    Near a regular point the real set of the tracer is a single curve, so the
    imaginary part of each coordinate changes sign twice around a small
    circle; at a critical point of the tracer it changes sign four times.
    """
    rho = JUNCTION_PROBE * ds.radius
    k = _ref_index(ds.state.tracer(c))
    # angles offset by half a sample so that no probe sits on a real direction
    probes = [ds.t + rho * cmath.exp(1j * TWO_PI * (i + 0.5) / samples) for i in range(samples)]
    try:
        z_prev, st = ds.t, ds.state
        ims = []
        for z_next in probes:
            st = _walk(c, cfg, ds.chart, z_prev, st, z_next)
            z_prev = z_next
            ims.append(_imag_parts(st.tracer(c), k))
    except RefinementExhausted:
        return True
    for j in range(3):
        if j == k:
            continue
        vals = [v[j] for v in ims]
        flips = sum(1 for a, b in zip(vals, vals[1:] + vals[:1]) if a * b < 0)
        if flips >= 4:
            return True
    return False


def _crossing_in(c, cfg, lo: DetourState, hi: DetourState):
    tol = cfg.tolerances.tol_real
    pa, pb = lo.state.tracer(c), hi.state.tracer(c)
    if _max_imag(pb) <= tol:
        return hi
    k = _ref_index(pa)
    if _crossing_component(pa, pb, k, tol) is None:
        return None
    res = refine_real_crossing(c, lo, lo.theta, hi.theta, cfg)
    if res is None:
        return None
    _, ds = res
    if not pg.is_real_point(ds.state.tracer(c), tol):
        return None
    return ds


def trace(c: Construction, t0: float = 0.0, cfg: TraceConfig | None = None, on_step=None) -> Locus:
    cfg = cfg or TraceConfig()
    if cfg.variant == "A":
        return trace_variant_a(c, t0, cfg, on_step)
    return trace_variant_b(c, t0, cfg, on_step)
