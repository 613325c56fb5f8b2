"""Constructions as straight-line programs evaluated over complex time.

A construction is an ordered list of nodes where every operand refers to an
earlier node.  Exactly one node is the mover, a point or line whose position
is a degree-2 rational function of the time ``t``.  Time is handled as a
homogeneous pair ``(u, v)`` with ``t = u / v`` so that the mover stays
polynomial when the tracer passes ``t = infinity``; passing a plain complex
number means ``(t, 1)``.

Ambiguous nodes (circle/line and circle/circle intersections) are resolved
by proximity: the candidate closest to the node's previous value wins.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Sequence, Union

from . import projective as pg
from .errors import AmbiguousStep, DegenerateInput, DegenerateOp, SingularStart
from .projective import Circle, HomLine, HomPoint

MARGIN_FLOOR = 1e-9
# a step is trusted only if the chosen candidate moved less than this fraction
# of the candidate separation
PROXIMITY_RATIO = 0.25
# candidate separation below which an ambiguous node counts as a double point
DOUBLE_POINT_SEP = 1e-6


# ---------------------------------------------------------------------------
# mover parameterizations


@dataclass(frozen=True)
class PointOnCircle:
    circle: Union[int, Circle]
    kind = "point"

    @property
    def ref(self):
        return self.circle


@dataclass(frozen=True)
class LineThroughPoint:
    point: Union[int, HomPoint]
    kind = "line"

    @property
    def ref(self):
        return self.point


@dataclass(frozen=True)
class PointOnLine:
    line: Union[int, HomLine]
    kind = "point"

    @property
    def ref(self):
        return self.line


MoverParam = Union[PointOnCircle, LineThroughPoint, PointOnLine]


# ---------------------------------------------------------------------------
# nodes


@dataclass(frozen=True)
class FreePoint:
    coords: HomPoint
    kind = "point"
    operands = ()


@dataclass(frozen=True)
class FreeLine:
    coeffs: HomLine
    kind = "line"
    operands = ()


@dataclass(frozen=True)
class CircleCR:
    center: int
    radius: float
    kind = "circle"

    @property
    def operands(self):
        return (self.center,)


@dataclass(frozen=True)
class Mover:
    param: MoverParam

    @property
    def kind(self):
        return self.param.kind

    @property
    def operands(self):
        ref = self.param.ref
        return (ref,) if isinstance(ref, int) else ()


@dataclass(frozen=True)
class Join:
    p: int
    q: int
    kind = "line"

    @property
    def operands(self):
        return (self.p, self.q)


@dataclass(frozen=True)
class Meet:
    l: int
    m: int
    kind = "point"

    @property
    def operands(self):
        return (self.l, self.m)


@dataclass(frozen=True)
class PerpThrough:
    l: int
    p: int
    kind = "line"

    @property
    def operands(self):
        return (self.l, self.p)


@dataclass(frozen=True)
class CircleLineMeet:
    c: int
    l: int
    kind = "point"

    @property
    def operands(self):
        return (self.c, self.l)


@dataclass(frozen=True)
class CircleCircleMeet:
    c1: int
    c2: int
    kind = "point"

    @property
    def operands(self):
        return (self.c1, self.c2)


@dataclass(frozen=True)
class Midpoint:
    p: int
    q: int
    kind = "point"

    @property
    def operands(self):
        return (self.p, self.q)


AMBIGUOUS = (CircleLineMeet, CircleCircleMeet)

_OPERAND_KINDS = {
    Join: ("point", "point"),
    Meet: ("line", "line"),
    PerpThrough: ("line", "point"),
    CircleLineMeet: ("circle", "line"),
    CircleCircleMeet: ("circle", "circle"),
    Midpoint: ("point", "point"),
    CircleCR: ("point",),
}

_MOVER_OPERAND_KIND = {PointOnCircle: "circle", LineThroughPoint: "point", PointOnLine: "line"}


@dataclass(frozen=True)
class Construction:
    nodes: tuple
    mover_index: int
    tracer_index: int
    initial_branches: tuple = ()
    names: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))
        object.__setattr__(self, "initial_branches", tuple(self.initial_branches))
        object.__setattr__(self, "names", tuple(self.names))
        movers = [i for i, n in enumerate(self.nodes) if isinstance(n, Mover)]
        if movers != [self.mover_index]:
            raise ValueError(f"expected exactly one mover at index {self.mover_index}, found {movers}")
        for i, node in enumerate(self.nodes):
            kinds = _OPERAND_KINDS.get(type(node))
            if isinstance(node, Mover):
                kinds = (_MOVER_OPERAND_KIND[type(node.param)],) if node.operands else ()
            for j, want in zip(node.operands, kinds or ()):
                if not 0 <= j < i:
                    raise ValueError(f"node {i} refers to node {j} which is not earlier")
                if self.nodes[j].kind != want:
                    raise ValueError(f"node {i} expects a {want} operand, node {j} is a {self.nodes[j].kind}")
        if self.nodes[self.tracer_index].kind != "point":
            raise ValueError("tracer must be a point")
        if len(self.initial_branches) != len(self.ambiguous_nodes):
            raise ValueError("need one initial branch per ambiguous node")
        if any(b not in (0, 1) for b in self.initial_branches):
            raise ValueError("branches are 0 or 1")

    @property
    def ambiguous_nodes(self) -> tuple[int, ...]:
        return tuple(i for i, n in enumerate(self.nodes) if isinstance(n, AMBIGUOUS))

    def name(self, i: int) -> str:
        return self.names[i] if i < len(self.names) and self.names[i] else f"#{i}"


@dataclass(frozen=True)
class ConstructionState:
    time: tuple  # homogeneous (u, v) with t = u / v
    values: tuple
    margins: dict = field(default_factory=dict, compare=False)
    separations: dict = field(default_factory=dict, compare=False)

    @property
    def t(self) -> complex:
        u, v = self.time
        if v == 0:
            return complex(math.inf, 0)
        return u / v

    def tracer(self, c: Construction) -> HomPoint:
        return self.values[c.tracer_index]

    def conj(self) -> ConstructionState:
        u, v = self.time
        return ConstructionState(
            (u.conjugate(), v.conjugate()),
            tuple(x.conj() for x in self.values),
            dict(self.margins),
            dict(self.separations),
        )

    def min_separation(self) -> float:
        return min(self.separations.values(), default=math.inf)


def as_time(t) -> tuple[complex, complex]:
    if isinstance(t, tuple):
        u, v = t
        return complex(u), complex(v)
    return complex(t), 1 + 0j


def mover_position(param: MoverParam, t, values: Sequence = ()) -> HomPoint | HomLine:
    """Position of the mover at time ``t`` (complex or homogeneous pair)."""
    u, v = as_time(t)
    uu, vv, uv = u * u, v * v, u * v

    def ref(x):
        return values[x] if isinstance(x, int) else x

    if isinstance(param, PointOnCircle):
        circ = ref(param.circle)
        cx, cy, cz = circ.center
        r = cmath.sqrt(circ.radius_sq)
        s = uu + vv
        out = HomPoint(cx * s + r * cz * (vv - uu), cy * s + r * cz * 2 * uv, cz * s)
    elif isinstance(param, LineThroughPoint):
        return pg.join(ref(param.point), HomPoint(vv - uu, 2 * uv, 0j))
    elif isinstance(param, PointOnLine):
        a, b, c = ref(param.line)
        nn = a * a + b * b
        if nn == 0:
            raise DegenerateInput("mover line has no finite direction")
        w = cmath.sqrt(nn)
        dx, dy = -b / w, a / w
        bx, by, bz = -a * c, -b * c, nn
        out = HomPoint(bx * (vv - uu) + dx * bz * 2 * uv, by * (vv - uu) + dy * bz * 2 * uv, bz * (vv - uu))
    else:
        raise TypeError(f"unknown mover parameterization {param!r}")
    if pg.norm(out) == 0:
        raise DegenerateInput("mover position is the zero vector")
    return out


def _candidate_key(p: HomPoint):
    n = pg.normalize(p)
    return tuple(x for c in n for x in (c.real, c.imag))


def _compute(node, values, time, tol):
    if isinstance(node, FreePoint):
        return pg.normalize(node.coords)
    if isinstance(node, FreeLine):
        return pg.normalize(node.coeffs)
    if isinstance(node, CircleCR):
        return Circle(values[node.center], complex(node.radius) ** 2)
    if isinstance(node, Mover):
        return pg.normalize(mover_position(node.param, time, values))
    if isinstance(node, Join):
        return pg.normalize(pg.join(values[node.p], values[node.q], tol))
    if isinstance(node, Meet):
        return pg.normalize(pg.meet(values[node.l], values[node.m], tol))
    if isinstance(node, PerpThrough):
        return pg.normalize(pg.perpendicular_through(values[node.l], values[node.p], tol))
    if isinstance(node, Midpoint):
        return pg.normalize(pg.midpoint(values[node.p], values[node.q], tol))
    if isinstance(node, CircleLineMeet):
        return pg.circle_line_meet(values[node.c], values[node.l], tol)
    if isinstance(node, CircleCircleMeet):
        return pg.circle_circle_meet(values[node.c1], values[node.c2], tol)
    raise TypeError(f"unknown node {node!r}")


def _run(c: Construction, time, choose, tol):
    values = []
    margins, seps = {}, {}
    for i, node in enumerate(c.nodes):
        try:
            val = _compute(node, values, time, tol)
        except DegenerateInput as exc:
            raise DegenerateOp(i, exc) from exc
        if isinstance(node, AMBIGUOUS):
            val, margins[i], seps[i] = choose(i, val)
        values.append(val)
    return ConstructionState(time, tuple(values), margins, seps)


def initial_state(c: Construction, t0=0.0, tol: float = pg.TOL_DEGENERATE, tol_real: float = pg.TOL_REAL) -> ConstructionState:
    """State at a real start time, with ambiguous nodes set by ``initial_branches``."""
    time = as_time(t0)
    if any(x.imag != 0 for x in time):
        raise SingularStart(f"start time must be real, got {t0!r}")
    branch = dict(zip(c.ambiguous_nodes, c.initial_branches))

    def choose(i, cands):
        a, b = sorted(cands, key=_candidate_key)
        sep = pg.projective_distance(a, b)
        if sep <= DOUBLE_POINT_SEP:
            raise SingularStart(f"node {c.name(i)} has a double point at the start time")
        return (a, b)[branch[i]], sep, sep

    try:
        state = _run(c, time, choose, tol)
    except DegenerateOp as exc:
        raise SingularStart(f"node {c.name(exc.node)} degenerates at the start time") from exc
    if not pg.is_real_point(state.tracer(c), tol_real):
        raise SingularStart("tracer is not real at the start time")
    return state


def evaluate(
    c: Construction,
    t,
    prev: ConstructionState,
    tol: float = pg.TOL_DEGENERATE,
    margin_floor: float = MARGIN_FLOOR,
    proximity_ratio: float = PROXIMITY_RATIO,
) -> ConstructionState:
    """Re-evaluate the construction at ``t``, continuing each ambiguous node from ``prev``.

    ``margins`` of the result map each ambiguous node to the distance gap
    between the rejected and the chosen candidate.  Raises AmbiguousStep when
    that gap is below ``margin_floor`` for distinct candidates, or when the
    chosen candidate moved more than ``proximity_ratio`` times the candidate
    separation (the step is too coarse to trust proximity).
    """
    time = as_time(t)

    def choose(i, cands):
        old = prev.values[i]
        a, b = cands
        da = pg.projective_distance(a, old)
        db = pg.projective_distance(b, old)
        if db < da:
            a, b, da, db = b, a, db, da
        margin = db - da
        sep = pg.projective_distance(a, b)
        if sep > margin_floor and (margin < margin_floor or da > proximity_ratio * sep):
            raise AmbiguousStep(i, margin)
        return a, margin, sep

    return _run(c, time, choose, tol)
