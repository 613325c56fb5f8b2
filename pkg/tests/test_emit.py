import json
import math
import re

import pytest
from hypothesis import given
from hypothesis import strategies as st

from detour.emit import emit_csv, emit_json, emit_svg, parse_csv
from detour.errors import EmptyLocus, NonTerminating
from detour.tracer import Locus, LocusPoint, TraceConfig, trace


def lp(x, y, t=0j):
    return LocusPoint((x, y), (x, y, 1.0), t)


def inf(*hom):
    return LocusPoint(None, hom, 1j)


def locus(*arcs, **kw):
    return Locus([list(a) for a in arcs], **kw)


class TestCsv:
    def test_single_point(self):
        assert emit_csv(locus([lp(2.0, 0.0)])) == "x,y,re_t,im_t\n2,0,0,0\n"

    def test_arc_separator(self):
        text = emit_csv(locus([lp(0, 0), lp(1, 0)], [lp(5, 5)]))
        assert text.count("\n\n") == 1
        assert text.split("\n").count("") == 2  # the separator and the final newline

    def test_infinity_row(self):
        text = emit_csv(locus([lp(2, 5), inf(0.0, 1.0, 0.0)]))
        assert "# infinity: 0:1:0" in text.splitlines()

    def test_full_precision(self):
        text = emit_csv(locus([lp(1 / 3, math.pi, 0.1 + 0.2j)]))
        assert text.splitlines()[1] == f"{1/3!r},{math.pi!r},0.1,0.2"

    @given(
        st.lists(
            st.lists(st.tuples(*[st.floats(allow_nan=False, allow_infinity=False)] * 4), min_size=1, max_size=8),
            min_size=1,
            max_size=4,
        )
    )
    def test_round_trip(self, arcs):
        L = locus(*[[lp(x, y, complex(a, b)) for x, y, a, b in arc] for arc in arcs])
        back = parse_csv(emit_csv(L))
        assert back == [[tuple(v + 0.0 for v in row) for row in arc] for arc in arcs]


class TestSvg:
    def test_collinear(self):
        svg = emit_svg(locus([lp(0, 0), lp(1, 1), lp(2, 2)]))
        polys = re.findall(r'<polyline points="([^"]*)"', svg)
        assert len(polys) == 1 and len(polys[0].split()) == 3

    def test_y_flipped(self):
        svg = emit_svg(locus([lp(0, 3), lp(1, -1)]))
        assert re.search(r'points="0,-3 1,1"', svg)

    def test_viewbox_margin(self):
        svg = emit_svg(locus([lp(0, 0), lp(10, 10)]), margin_fraction=0.1)
        vb = [float(v) for v in re.search(r'viewBox="([^"]*)"', svg).group(1).split()]
        assert vb == pytest.approx([-1, -11, 12, 12])

    def test_infinite_points_omitted(self):
        svg = emit_svg(locus([lp(0, 0), lp(1, 0), inf(0.0, 1.0, 0.0)]))
        assert len(re.search(r'points="([^"]*)"', svg).group(1).split()) == 2

    def test_empty(self):
        with pytest.raises(EmptyLocus):
            emit_svg(locus())
        with pytest.raises(EmptyLocus):
            emit_svg(locus([inf(0.0, 1.0, 0.0)]))

    def test_deterministic(self, traced):
        L = traced("watt.cons")
        assert emit_svg(L) == emit_svg(L)


class TestJson:
    def test_closed_pascal(self, traced):
        doc = json.loads(emit_json(traced("pascal.cons"), TraceConfig()))
        assert doc["metadata"]["closed"] is True

    def test_nonterminating(self, constructions):
        with pytest.raises(NonTerminating) as info:
            trace(constructions["watt.cons"], 0.0, TraceConfig(max_detours=3))
        doc = json.loads(emit_json(info.value.locus, TraceConfig(max_detours=3)))
        assert doc["metadata"]["closed"] is False

    def test_metadata_round_trip(self):
        cfg = TraceConfig(variant="B", eps=0.02, detour_steps=48, orientation="cw")
        doc = json.loads(emit_json(locus([lp(1, 2, 0.5j)], reversal_count=2, detours_used=7), cfg, source="x.cons"))
        assert doc["metadata"] == {
            "variant": "B",
            "eps": 0.02,
            "detour_steps": 48,
            "orientation": "clockwise",
            "reversal_count": 2,
            "detours_used": 7,
            "closed": False,
            "source": "x.cons",
        }
        assert doc["arcs"] == [{"points": [[1, 2, 0, 0.5]], "infinity": []}]

    def test_infinite_time_is_null(self):
        doc = json.loads(emit_json(locus([lp(1, 2, complex(math.inf, 0))])))
        assert doc["arcs"][0]["points"][0][2] is None
