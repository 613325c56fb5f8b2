import pytest
from hypothesis import given
from hypothesis import strategies as st

from detour import construction as cn
from detour.bundled import BUNDLED, pascal_text
from detour.dsl import ParseError, SourceSpan, parse_construction

HEAD = "point O = (0, 0)\ncircle c0 = circle(O, 1)\n"


def err(text) -> ParseError:
    with pytest.raises(ParseError) as info:
        parse_construction(text)
    return info.value


@pytest.mark.parametrize(
    "name, count",
    [("projline.cons", 6), ("pascal.cons", 16), ("conchoid.cons", 6), ("watt.cons", 8)],
)
def test_bundled_node_counts(name, count):
    c = parse_construction(BUNDLED[name])
    assert len(c.nodes) == count


def test_watt_structure():
    c = parse_construction(BUNDLED["watt.cons"])
    kinds = [type(n).__name__ for n in c.nodes]
    assert kinds == ["FreePoint", "FreePoint", "CircleCR", "CircleCR", "Mover", "CircleCR", "CircleCircleMeet", "Midpoint"]
    assert c.names[c.mover_index] == "C" and c.names[c.tracer_index] == "E"
    assert c.initial_branches == (0,)


def test_every_statement_form():
    c = parse_construction(
        """\
point P = (1, 2)  # trailing comment
line l = (0, 1, -3)
circle k = circle(P, 2.5)
point M = mover on_line(l)
line j = join(P, M)
line q = perp(l, P)
point X = meet(j, q)
point Y = meet_cl(k, j, branch=1)
circle k2 = circle(X, 1e-1)
point Z = meet_cc(k, k2, branch=0)
point W = midpoint(Y, Z)
trace mover=M tracer=W
"""
    )
    assert c.initial_branches == (1, 0)
    assert isinstance(c.nodes[3].param, cn.PointOnLine)
    assert isinstance(c.nodes[8], cn.CircleCR) and c.nodes[8].radius == pytest.approx(0.1)


def test_line_mover():
    c = parse_construction("point F = (1, 1)\nline m = mover line_through(F)\npoint P = (0, 0)\ntrace mover=m tracer=P\n")
    assert isinstance(c.nodes[1].param, cn.LineThroughPoint)


def test_unknown_identifier_span():
    e = err(HEAD + "line m = (1, 0, 0)\npoint P = meet(l, m)\ntrace mover=P tracer=P\n")
    assert e.kind == "UnknownIdentifier"
    assert e.span == SourceSpan(4, 16, 1)


def test_no_trace():
    assert err(HEAD).kind == "NoTraceDirective"


def test_forward_reference():
    e = err("point A = midpoint(B, B)\npoint B = (0, 0)\ntrace mover=A tracer=A\n")
    assert e.kind == "ForwardReference" and e.span.line == 1 and e.span.column == 20


def test_duplicate():
    e = err(HEAD + "point O = (1, 1)\n")
    assert e.kind == "DuplicateName" and e.span == SourceSpan(3, 7, 1)


def test_type_mismatch():
    e = err(HEAD + "point A = mover on_circle(O)\n")
    assert e.kind == "TypeMismatch" and e.span.line == 3


@pytest.mark.parametrize(
    "text, line",
    [
        (HEAD + "point A = mover on_circle(c0\n", 3),
        (HEAD + "point A = (1, )\n", 3),
        ("point = (1, 2)\n", 1),
        ("pointy A = (1, 2)\n", 1),
        (HEAD + "point A = mover on_circle(c0)\npoint B = meet_cc(c0, c0, branch=2)\ntrace mover=A tracer=B\n", 4),
        (HEAD + "point A = mover on_circle(c0)\ntrace mover=A tracer=A\npoint B = (0, 0)\n", 5),
        ("point A = (1, 2)\ntrace mover=A tracer=A\n", 2),
    ],
)
def test_syntax_errors(text, line):
    e = err(text)
    assert e.kind == "Syntax" and e.span.line == line and e.message
    assert e.span.column >= 1 and e.span.length >= 1


def test_first_error_wins():
    e = err("point A = (1, 2)\npoint A = (1, 2)\npoint B = meet(x, y)\n")
    assert e.kind == "DuplicateName" and e.span.line == 2


point_lists = st.lists(st.tuples(st.floats(-1e3, 1e3), st.floats(-1e3, 1e3)), min_size=5, max_size=5)


@given(point_lists)
def test_parse_determinism(pts):
    text = pascal_text(pts)
    assert parse_construction(text) == parse_construction(text)


@given(point_lists)
def test_free_points_parse_exactly(pts):
    c = parse_construction(pascal_text(pts))
    for node, (x, y) in zip(c.nodes[:5], pts):
        assert node.coords.x == x and node.coords.y == y and node.coords.z == 1
