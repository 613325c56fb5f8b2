"""Trace every bundled example and check it against its curve equation."""
import argparse
import math
import time
from pathlib import Path

from detour.bundled import BUNDLED, FOURBAR, PASCAL_FIGURE_POINTS
from detour.dsl import parse_construction
from detour.emit import emit_csv, emit_svg
from detour.errors import NonTerminating
from detour.oracles import (
    conchoid_curve,
    conic_curve,
    conic_through_five,
    fourbar_sextic_curve,
    projline_curve,
    residual_implicit,
    watt_curve,
)
from detour.tracer import TraceConfig, trace

CURVES = {
    "projline.cons": projline_curve(),
    "pascal.cons": conic_curve(conic_through_five(PASCAL_FIGURE_POINTS)),
    "conchoid.cons": conchoid_curve(2, 2),
    "watt.cons": watt_curve(2, 2.5, 1.5),
    "fourbar.cons": fourbar_sextic_curve(),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--variant", choices=("A", "B"), default="A")
    ap.add_argument("--eps", type=float, default=0.05)
    ap.add_argument("--orientation", choices=("acw", "cw"), default="acw")
    ap.add_argument("--out-dir", type=Path, help="write <name>.svg and <name>.csv here")
    args = ap.parse_args()

    cfg = TraceConfig(variant=args.variant, eps=args.eps, orientation=args.orientation)
    examples = dict(BUNDLED, **{"fourbar.cons": FOURBAR})
    print(f"{'example':<15}{'points':>8}{'arcs':>6}{'detours':>9}{'bounces':>9}  closed  {'residual':>9}  time")
    for name, text in examples.items():
        c = parse_construction(text)
        t = time.perf_counter()
        try:
            locus = trace(c, 0.0, cfg)
        except NonTerminating as exc:
            locus = exc.locus
        dt = time.perf_counter() - t
        res = residual_implicit(CURVES[name], locus).max_residual
        print(
            f"{name:<15}{len(locus.records):>8}{len(locus.arcs):>6}{locus.detours_used:>9}"
            f"{locus.reversal_count:>9}  {str(locus.closed):<6}  {res:>9.1e}  {dt:.2f}s"
        )
        if args.out_dir:
            args.out_dir.mkdir(parents=True, exist_ok=True)
            stem = args.out_dir / Path(name).stem
            stem.with_suffix(".csv").write_text(emit_csv(locus))
            if any(p.point is not None and max(map(abs, p.point)) < math.inf for p in locus.points):
                stem.with_suffix(".svg").write_text(emit_svg(locus))


if __name__ == "__main__":
    main()
