"""Complex homogeneous coordinates for points, lines and circles.

Points and lines are plain 3-tuples of complex numbers wrapped in
``NamedTuple`` subclasses so that they stay immutable, hashable and cheap.
All incidence operations are cross products; the two ambiguous primitives
(circle/line and circle/circle intersection) return both candidates in an
unspecified order and leave branch selection to the caller.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple, Union

from .errors import DegenerateInput

TOL_DEGENERATE = 1e-12
TOL_REAL = 1e-9


class HomPoint(NamedTuple):
    x: complex
    y: complex
    z: complex

    @classmethod
    def affine(cls, x, y) -> HomPoint:
        return cls(complex(x), complex(y), 1 + 0j)

    def conj(self) -> HomPoint:
        return HomPoint(self.x.conjugate(), self.y.conjugate(), self.z.conjugate())

    def __repr__(self):
        return f"HomPoint({self.x!r}, {self.y!r}, {self.z!r})"


class HomLine(NamedTuple):
    a: complex
    b: complex
    c: complex

    def conj(self) -> HomLine:
        return HomLine(self.a.conjugate(), self.b.conjugate(), self.c.conjugate())

    def __repr__(self):
        return f"HomLine({self.a!r}, {self.b!r}, {self.c!r})"


Hom = Union[HomPoint, HomLine]


@dataclass(frozen=True)
class Circle:
    """Circle with homogeneous ``center`` and squared radius.

    ``radius_sq`` is the affine squared radius; the center may be complex
    (and, in the limit, at infinity) while a construction is being traced.
    """

    center: HomPoint
    radius_sq: complex

    @classmethod
    def from_center(cls, x, y, r) -> Circle:
        return cls(HomPoint.affine(x, y), complex(r) ** 2)

    def conj(self) -> Circle:
        return Circle(self.center.conj(), self.radius_sq.conjugate())

    def linear_part(self) -> tuple[complex, complex, complex]:
        # circle = cz^2 (x^2 + y^2) + z * <L, P>
        cx, cy, cz = self.center
        return (-2 * cz * cx, -2 * cz * cy, cx * cx + cy * cy - self.radius_sq * cz * cz)

    def membership(self, p: HomPoint) -> complex:
        """Homogeneous circle polynomial evaluated at ``p`` (zero on the circle)."""
        cz2 = self.center.z * self.center.z
        lx, ly, lz = self.linear_part()
        return cz2 * (p.x * p.x + p.y * p.y) + p.z * (lx * p.x + ly * p.y + lz * p.z)


@dataclass(frozen=True)
class Tolerances:
    tol_real: float = TOL_REAL
    tol_degenerate: float = TOL_DEGENERATE
    tol_return: float = 1e-6

    def __post_init__(self):
        if min(self.tol_real, self.tol_degenerate, self.tol_return) <= 0:
            raise ValueError("tolerances must be strictly positive")


def cross(u, v) -> tuple[complex, complex, complex]:
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def dot(u, v) -> complex:
    """Bilinear (non-conjugating) pairing, i.e. incidence of a line and a point."""
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def norm(v) -> float:
    return math.sqrt(abs(v[0]) ** 2 + abs(v[1]) ** 2 + abs(v[2]) ** 2)


def _check_finite(v):
    for c in v:
        if not (math.isfinite(c.real) and math.isfinite(c.imag)):
            raise DegenerateInput(f"non-finite coordinate in {v!r}")


def join(p: HomPoint, q: HomPoint, tol: float = TOL_DEGENERATE) -> HomLine:
    """Line through two points."""
    r = cross(p, q)
    if norm(r) <= tol * norm(p) * norm(q):
        raise DegenerateInput("join of coincident points")
    _check_finite(r)
    return HomLine(*r)


def meet(l: HomLine, m: HomLine, tol: float = TOL_DEGENERATE) -> HomPoint:
    """Intersection point of two lines (possibly at infinity)."""
    r = cross(l, m)
    if norm(r) <= tol * norm(l) * norm(m):
        raise DegenerateInput("meet of coincident lines")
    _check_finite(r)
    return HomPoint(*r)


def perpendicular_through(l: HomLine, p: HomPoint, tol: float = TOL_DEGENERATE) -> HomLine:
    """Line through ``p`` perpendicular to ``l``."""
    a, b, _ = l
    r = (-b * p.z, a * p.z, b * p.x - a * p.y)
    if norm(r) <= tol * norm(l) * norm(p):
        raise DegenerateInput("perpendicular is undefined for this point")
    return HomLine(*r)


def midpoint(p: HomPoint, q: HomPoint, tol: float = TOL_DEGENERATE) -> HomPoint:
    if abs(p.z) <= tol * norm(p) or abs(q.z) <= tol * norm(q):
        raise DegenerateInput("midpoint with a point at infinity")
    return HomPoint(p.x * q.z + q.x * p.z, p.y * q.z + q.y * p.z, 2 * p.z * q.z)


def normalize(v: Hom, tol: float = 0.0):
    """Divide by the component of largest modulus (first one on ties)."""
    # on modulus ties an exact 1 wins, so normalized input comes back unchanged
    k = max(range(3), key=lambda i: (abs(v[i]), v[i] == 1))
    pivot = v[k]
    if abs(pivot) <= tol or pivot == 0:
        raise DegenerateInput("cannot normalize the zero vector")
    comps = [x / pivot for x in v]
    for j in range(3):
        # a tied component may overshoot modulus 1 by an ulp after division
        while abs(comps[j]) > 1:
            comps[j] *= 1 - 2.0**-52
    comps[k] = 1 + 0j
    return type(v)(*comps)


def normalize_circle(c: Circle) -> Circle:
    return Circle(normalize(c.center), c.radius_sq)


def projective_distance(p, q) -> float:
    """Scale-free chordal distance between two homogeneous vectors."""
    npq = norm(p) * norm(q)
    if npq == 0:
        raise DegenerateInput("projective distance of a zero vector")
    return norm(cross(p, q)) / npq


def is_real_point(p, tol_real: float = TOL_REAL) -> bool:
    n = normalize(p)
    return all(abs(c.imag) <= tol_real for c in n)


def real_affine(p: HomPoint) -> tuple[float, float] | None:
    """Real affine coordinates of a (real) point, or None at infinity."""
    n = normalize(p)
    if abs(n.z) <= TOL_DEGENERATE:
        return None
    return ((n.x / n.z).real, (n.y / n.z).real)


def _line_points(l: HomLine) -> tuple[tuple, tuple]:
    # two well-conditioned points spanning l
    cands = [cross(l, e) for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1))]
    order = sorted(range(3), key=lambda i: -norm(cands[i]))
    return cands[order[0]], cands[order[1]]


def solve_homogeneous_quadratic(alpha: complex, beta: complex, gamma: complex):
    """Roots ``(lam, mu)`` of ``alpha lam^2 + beta lam mu + gamma mu^2 = 0``.

    Uses the cancellation-free pairing ``q = -(beta + sgn sqrt(disc)) / 2``
    with the sign aligned to ``beta``; the roots are ``(q : alpha)`` and
    ``(gamma : q)``.
    """
    sq = cmath.sqrt(beta * beta - 4 * alpha * gamma)
    if (beta.conjugate() * sq).real < 0:
        sq = -sq
    q = -(beta + sq) / 2
    scale = max(abs(alpha), abs(beta), abs(gamma))
    if abs(q) <= 1e-15 * scale:
        # beta = disc = 0: double root along whichever axis kills the form
        root = (1 + 0j, 0j) if abs(alpha) <= abs(gamma) else (0j, 1 + 0j)
        return root, root
    return (q, alpha), (gamma, q)


def circle_line_meet(c: Circle, l: HomLine, tol: float = TOL_DEGENERATE) -> tuple[HomPoint, HomPoint]:
    """Both (possibly complex, possibly equal) intersections of a circle and a line."""
    nl = norm(l)
    if nl == 0:
        raise DegenerateInput("zero line")
    l = HomLine(l[0] / nl, l[1] / nl, l[2] / nl)
    if math.hypot(abs(l.a), abs(l.b)) <= tol:
        raise DegenerateInput("line at infinity")
    c = normalize_circle(c)
    p1, p2 = _line_points(l)
    cz2 = c.center.z * c.center.z
    lin = c.linear_part()

    def bilinear(p, q):
        return cz2 * (p[0] * q[0] + p[1] * q[1]) + 0.5 * (p[2] * dot(lin, q) + q[2] * dot(lin, p))

    alpha = bilinear(p1, p1)
    beta = 2 * bilinear(p1, p2)
    gamma = bilinear(p2, p2)
    scale = (abs(cz2) + norm(lin)) * norm(p1) * norm(p2)
    if max(abs(alpha), abs(beta), abs(gamma)) <= tol * scale:
        raise DegenerateInput("circle/line quadratic vanishes identically")
    out = []
    for lam, mu in solve_homogeneous_quadratic(alpha, beta, gamma):
        v = HomPoint(lam * p1[0] + mu * p2[0], lam * p1[1] + mu * p2[1], lam * p1[2] + mu * p2[2])
        _check_finite(v)
        out.append(normalize(v))
    return out[0], out[1]


def radical_line(c1: Circle, c2: Circle, tol: float = TOL_DEGENERATE) -> HomLine:
    c1, c2 = normalize_circle(c1), normalize_circle(c2)
    w1 = c2.center.z * c2.center.z
    w2 = c1.center.z * c1.center.z
    l1, l2 = c1.linear_part(), c2.linear_part()
    r = tuple(w1 * a - w2 * b for a, b in zip(l1, l2))
    if norm(r) <= tol * (abs(w1) * norm(l1) + abs(w2) * norm(l2)):
        raise DegenerateInput("identical circles have no radical line")
    return HomLine(*r)


def circle_circle_meet(c1: Circle, c2: Circle, tol: float = TOL_DEGENERATE) -> tuple[HomPoint, HomPoint]:
    """Both intersections of two circles, via their radical line."""
    try:
        return circle_line_meet(c1, radical_line(c1, c2, tol), tol)
    except DegenerateInput as exc:
        raise DegenerateInput(f"circle/circle meet: {exc}") from exc
