"""Source text for the bundled example constructions."""
from __future__ import annotations

import math

PROJLINE = """\
# orthogonal projection of the unit circle onto the line x = 2
point O = (0, 0)
circle c0 = circle(O, 1)
line b = (1, 0, -2)
point A = mover on_circle(c0)
line a = perp(b, A)
point B = meet(a, b)
trace mover=A tracer=B
"""


def _num(x: float) -> str:
    return repr(float(x))


def pascal_text(points) -> str:
    """Organic conic through five points via the converse of Pascal's theorem."""
    A, B, C, D, E = points
    decl = "\n".join(f"point {n} = ({_num(p[0])}, {_num(p[1])})" for n, p in zip("ABCDE", (A, B, C, D, E)))
    return f"""\
# K traces the conic through A, B, C, D, E while line c turns about F
{decl}
line a = join(A, B)
line b = join(D, E)
point F = meet(a, b)
line c = mover line_through(F)
line d = join(B, C)
point G = meet(c, d)
line e = join(C, D)
point H = meet(c, e)
line f = join(A, H)
line g = join(E, G)
point K = meet(f, g)
trace mover=c tracer=K
"""


# five points on the ellipse with semi-axes 3 and 2, spread around the curve
PASCAL_FIGURE_POINTS = tuple(
    (3 * math.cos(math.radians(d)), 2 * math.sin(math.radians(d))) for d in (140, -80, 50, -130, 95)
)


def conchoid_text(a: float = 2.0, b: float = 2.0, pole=(0.0, 0.0), branch: int = 1) -> str:
    """Conchoid with the given pole, base ``y = pole_y - a`` and distance ``b``."""
    px, py = pole
    return f"""\
# conchoid of Nicomedes: pole B, base g, distance {_num(b)}
line g = (0, 1, {_num(a - py)})
point B = ({_num(px)}, {_num(py)})
point A = mover on_line(g)
circle c0 = circle(A, {_num(b)})
line h = join(A, B)
point C = meet_cl(c0, h, branch={branch})
trace mover=A tracer=C
"""


def trisection_conchoid_text(phi: float, r: float = 1.0, branch: int = 1) -> str:
    """Conchoid with pole D = r(cos phi, sin phi), base the x-axis and distance r.

    Branch 1 starts the tracer at D, on the half of the curve above the base.
    """
    px, py = r * math.cos(phi), r * math.sin(phi)
    return f"""\
line l = (0, 1, 0)
point D = ({_num(px)}, {_num(py)})
point A = mover on_line(l)
circle c0 = circle(A, {_num(r)})
line h = join(A, D)
point C = meet_cl(c0, h, branch={branch})
trace mover=A tracer=C
"""


def linkage_text(a: float, crank: float, coupler: float, rocker: float, branch: int = 0) -> str:
    """Four-bar linkage with ground 2a on the x-axis; traces the coupler midpoint."""
    return f"""\
# four-bar linkage: ground {_num(2 * a)}, crank {_num(crank)}, coupler {_num(coupler)}, rocker {_num(rocker)}
point A = ({_num(-a)}, 0)
point B = ({_num(a)}, 0)
circle c0 = circle(A, {_num(crank)})
circle c1 = circle(B, {_num(rocker)})
point C = mover on_circle(c0)
circle c2 = circle(C, {_num(coupler)})
point D = meet_cc(c1, c2, branch={branch})
point E = midpoint(C, D)
trace mover=C tracer=E
"""


def watt_text(a: float = 2.0, b: float = 2.5, c: float = 1.5, branch: int = 0) -> str:
    return linkage_text(a, b, 2 * c, b, branch)


FOURBAR = linkage_text(2.0, 1.0, 4.0, 2.0, branch=1)

BUNDLED = {
    "pascal.cons": pascal_text(PASCAL_FIGURE_POINTS),
    "projline.cons": PROJLINE,
    "conchoid.cons": conchoid_text(),
    "watt.cons": watt_text(),
}
