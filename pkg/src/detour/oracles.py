"""Independent checks for traced loci.

Nothing here uses the detour machinery to decide correctness: implicit
curve equations are evaluated directly, the linkage oracle solves the
mechanism in closed form with numpy, and conics are fitted by SVD.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, NamedTuple, Optional, Sequence

import numpy as np
import sympy as sp

from .errors import DegenerateConfiguration, DegenerateInput

_X, _Y = sp.symbols("x y", real=True)


@dataclass(frozen=True)
class ImplicitCurve:
    """Polynomial curve ``f(x, y) = 0`` with a gradient-based normalizer."""

    name: str
    params: tuple
    expr: sp.Expr = field(repr=False)
    _f: Callable = field(init=False, repr=False, compare=False)
    _grad: Callable = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        fx, fy = sp.diff(self.expr, _X), sp.diff(self.expr, _Y)
        object.__setattr__(self, "_f", sp.lambdify((_X, _Y), self.expr, "math"))
        object.__setattr__(self, "_grad", sp.lambdify((_X, _Y), (fx, fy), "math"))

    @property
    def degree(self) -> int:
        return sp.Poly(self.expr, _X, _Y).total_degree()

    def __call__(self, x: float, y: float) -> float:
        return float(self._f(x, y))

    def natural_scale(self, x: float, y: float) -> float:
        gx, gy = self._grad(x, y)
        return math.hypot(gx, gy) + 1.0

    def residual(self, x: float, y: float) -> float:
        return abs(self(x, y)) / self.natural_scale(x, y)


def projline_curve() -> ImplicitCurve:
    return ImplicitCurve("projline", (), (_X - 2) ** 2)


def conchoid_curve(a: float, b: float, pole=(0.0, 0.0)) -> ImplicitCurve:
    """Conchoid with pole ``pole``, base ``y = pole_y - a`` and distance ``b``."""
    x, y = _X - pole[0], _Y - pole[1]
    a, b = sp.Float(a), sp.Float(b)
    return ImplicitCurve("conchoid", (a, b), sp.expand((y + a) ** 2 * (x**2 + y**2) - b**2 * y**2))


def watt_curve(a: float, b: float, c: float) -> ImplicitCurve:
    a, b, c = (sp.Float(v) for v in (a, b, c))
    r2 = _X**2 + _Y**2
    expr = r2 * (r2 - a**2 - b**2 + c**2) ** 2 + 4 * a**2 * _Y**2 * (r2 - b**2)
    return ImplicitCurve("watt", (a, b, c), sp.expand(expr))


def fourbar_sextic_curve() -> ImplicitCurve:
    """Coupler-midpoint sextic of the 4, 1, 4, 2 linkage (ground centred at the origin)."""
    x, y = _X, _Y
    expr = (
        (6 + 5 * x - 2 * x**3) ** 2
        + 3 * (-45 + 4 * x * (-2 + 2 * x + x**3)) * y**2
        + 4 * (11 + 3 * x**2) * y**4
        + 4 * y**6
    )
    return ImplicitCurve("fourbar-sextic", (), sp.expand(expr))


def conic_curve(coeffs: Sequence[float]) -> ImplicitCurve:
    a, b, c, d, e, f = (sp.Float(float(v)) for v in coeffs)
    expr = a * _X**2 + b * _X * _Y + c * _Y**2 + d * _X + e * _Y + f
    return ImplicitCurve("conic5", tuple(float(v) for v in coeffs), expr)


def curve_from_spec(spec: str, free_points: Sequence[tuple] = ()) -> ImplicitCurve:
    """Build a curve from ``NAME[:p1,p2,...]`` as used on the command line.

    ``conic5`` takes ten numbers (five points) or, without parameters, the
    first five entries of ``free_points``.
    """
    name, _, rest = spec.partition(":")
    params = [float(v) for v in rest.split(",")] if rest.strip() else []
    need = {"projline": (0,), "fourbar-sextic": (0,), "conchoid": (2,), "watt": (3,), "conic5": (0, 10)}
    if name not in need:
        raise ValueError(f"unknown curve {name!r}; choose from {', '.join(need)}")
    if len(params) not in need[name]:
        raise ValueError(f"curve {name} takes {' or '.join(map(str, need[name]))} parameters, got {len(params)}")
    if name == "projline":
        return projline_curve()
    if name == "fourbar-sextic":
        return fourbar_sextic_curve()
    if name == "conchoid":
        return conchoid_curve(*params)
    if name == "watt":
        return watt_curve(*params)
    pts = [tuple(params[i : i + 2]) for i in range(0, 10, 2)] if params else list(free_points)[:5]
    if len(pts) < 5:
        raise ValueError("conic5 needs five points")
    return conic_curve(conic_through_five(pts))


class Residual(NamedTuple):
    max_residual: float
    n_points: int
    skipped_infinite: int


def _finite_points(locus) -> tuple[list, int]:
    if hasattr(locus, "points"):
        pts = [p.point for p in locus.points]
    else:
        pts = list(locus)
    finite = [p for p in pts if p is not None]
    return finite, len(pts) - len(finite)


def residual_implicit(curve: ImplicitCurve, locus) -> Residual:
    """Largest ``|f| / (|grad f| + 1)`` over the finite points of ``locus``."""
    pts, skipped = _finite_points(locus)
    worst = max((curve.residual(x, y) for x, y in pts), default=0.0)
    return Residual(worst, len(pts), skipped)


def conic_through_five(points: Sequence[tuple], rel_tol: float = 1e-10) -> np.ndarray:
    """Coefficients ``(A, B, C, D, E, F)`` of ``Ax^2 + Bxy + Cy^2 + Dx + Ey + F``.

    Unit Euclidean norm, first nonzero coefficient positive.
    """
    pts = np.asarray(points, dtype=float)
    if pts.shape != (5, 2):
        raise ValueError("need exactly five planar points")
    x, y = pts[:, 0], pts[:, 1]
    design = np.column_stack([x * x, x * y, y * y, x, y, np.ones(5)])
    _, sv, vt = np.linalg.svd(design)
    if sv[-1] <= rel_tol * sv[0]:
        raise DegenerateConfiguration("the five points lie on more than one conic")
    k = vt[-1]
    k = k / np.linalg.norm(k)
    lead = k[np.flatnonzero(np.abs(k) > 1e-14)[0]]
    return k if lead > 0 else -k


def hausdorff(a: Iterable, b: Iterable, chunk: int = 4096) -> float:
    """Symmetric Hausdorff distance between two finite point sets (brute force)."""
    A = np.asarray(list(a), dtype=float).reshape(-1, 2)
    B = np.asarray(list(b), dtype=float).reshape(-1, 2)
    if len(A) == 0 or len(B) == 0:
        raise ValueError("Hausdorff distance of an empty set")

    def directed(P, Q):
        worst = 0.0
        for i in range(0, len(P), chunk):
            d = np.sqrt(((P[i : i + chunk, None, :] - Q[None, :, :]) ** 2).sum(-1))
            worst = max(worst, float(d.min(axis=1).max()))
        return worst

    return max(directed(A, B), directed(B, A))


def sampling_density(points: Sequence[tuple]) -> float:
    """Largest gap between consecutive finite points."""
    pts = [p for p in points if p is not None]
    return max((math.dist(p, q) for p, q in zip(pts, pts[1:])), default=0.0)


def linkage_oracle(ground: float, crank: float, coupler: float, rocker: float, n_samples: int = 2000) -> np.ndarray:
    """Coupler midpoints of a four-bar linkage, solved in closed form.

    Ground pivots at ``(-ground/2, 0)`` (crank) and ``(ground/2, 0)``
    (rocker).  Both assembly modes are emitted where they are real.
    """
    if n_samples < 8:
        raise ValueError("n_samples must be at least 8")
    a = ground / 2
    theta = 2 * np.pi * np.arange(n_samples) / n_samples
    C = np.column_stack([-a + crank * np.cos(theta), crank * np.sin(theta)])
    B = np.array([a, 0.0])
    # D on circle(B, rocker) and circle(C, coupler)
    d_vec = C - B
    d = np.hypot(d_vec[:, 0], d_vec[:, 1])
    along = (rocker**2 - coupler**2 + d**2) / (2 * d)
    h2 = rocker**2 - along**2
    ok = h2 >= 0
    h = np.sqrt(np.where(ok, h2, 0.0))
    unit = d_vec / d[:, None]
    normal = np.column_stack([-unit[:, 1], unit[:, 0]])
    base = B + along[:, None] * unit
    out = []
    for sign in (1.0, -1.0):
        D = base + sign * h[:, None] * normal
        out.append(((C + D) / 2)[ok])
    return np.concatenate(out)


def angle_at(p, apex, q) -> float:
    u = np.subtract(p, apex, dtype=float)
    v = np.subtract(q, apex, dtype=float)
    nu, nv = np.linalg.norm(u), np.linalg.norm(v)
    if nu == 0 or nv == 0:
        raise DegenerateInput("angle with a zero-length arm")
    return float(np.arccos(np.clip(np.dot(u, v) / (nu * nv), -1.0, 1.0)))


class CircleHit(NamedTuple):
    point: tuple
    arc: int
    segment: int
    s: float  # position on the segment, in [0, 1]


def polyline_circle_intersections(arcs, center, radius: float, tol: float = 1e-12) -> list[CircleHit]:
    """Hits of every polyline segment with a circle, in traversal order.

    ``arcs`` is a Locus or a list of point lists.  Consecutive hits closer
    than ``tol`` (a tangency, or a hit at a shared vertex) are merged.
    """
    if hasattr(arcs, "arcs"):
        arcs = [[p.point for p in arc] for arc in arcs.arcs]
    cx, cy = center
    hits: list[CircleHit] = []
    for ai, arc in enumerate(arcs):
        for si, (p, q) in enumerate(zip(arc, arc[1:])):
            if p is None or q is None:
                continue
            dx, dy = q[0] - p[0], q[1] - p[1]
            fx, fy = p[0] - cx, p[1] - cy
            A = dx * dx + dy * dy
            if A == 0:
                continue
            Bq = 2 * (fx * dx + fy * dy)
            Cq = fx * fx + fy * fy - radius * radius
            roots = np.roots([A, Bq, Cq]) if Cq != 0 else np.array([0.0, -Bq / A])
            # a double root comes back with a tiny imaginary part
            reals = sorted(float(r.real) for r in roots if abs(r.imag) <= 1e-9 * max(1.0, abs(r.real)))
            for s in reals:
                if -1e-12 <= s <= 1 + 1e-12:
                    s = min(max(s, 0.0), 1.0)
                    pt = (p[0] + s * dx, p[1] + s * dy)
                    if hits and math.dist(hits[-1].point, pt) <= max(tol, 1e-9 * radius):
                        continue
                    hits.append(CircleHit(pt, ai, si, s))
    return hits


def direction_reversals(points: Sequence[Optional[tuple]]) -> int:
    """Number of times consecutive displacements turn by more than 90 degrees."""
    pts = [p for p in points if p is not None]
    steps = [(q[0] - p[0], q[1] - p[1]) for p, q in zip(pts, pts[1:])]
    steps = [d for d in steps if math.hypot(*d) > 1e-12]
    return sum(1 for u, v in zip(steps, steps[1:]) if u[0] * v[0] + u[1] * v[1] < 0)


def densify(arcs, spacing: float) -> np.ndarray:
    """Resample each polyline so that no two consecutive points are farther apart than ``spacing``."""
    if hasattr(arcs, "arcs"):
        arcs = [[p.point for p in arc if p.point is not None] for arc in arcs.arcs]
    out = []
    for arc in arcs:
        pts = np.asarray([p for p in arc if p is not None], dtype=float).reshape(-1, 2)
        if len(pts) == 0:
            continue
        out.append(pts[:1])
        for p, q in zip(pts, pts[1:]):
            n = max(1, int(math.ceil(math.dist(p, q) / spacing)))
            s = np.arange(1, n)[:, None] / n
            out.append(p + s * (q - p))
            out.append(q[None, :])
    return np.concatenate(out) if out else np.empty((0, 2))
