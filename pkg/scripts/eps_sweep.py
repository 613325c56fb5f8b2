"""Sweep the detour diameter on the Watt linkage.

For each eps the trace is checked against the Watt sextic and against the
closed-form linkage oracle, showing how sampling density and cost trade off.
"""
import argparse
import time

from detour.bundled import watt_text
from detour.dsl import parse_construction
from detour.errors import NonTerminating
from detour.oracles import densify, hausdorff, linkage_oracle, residual_implicit, sampling_density, watt_curve
from detour.tracer import TraceConfig, trace


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--eps", type=float, nargs="+", default=[0.2, 0.1, 0.05, 0.025, 0.0125])
    ap.add_argument("--variant", choices=("A", "B"), default="A")
    ap.add_argument("--samples", type=int, default=2000, help="linkage oracle crank samples")
    args = ap.parse_args()

    c = parse_construction(watt_text())
    oracle = linkage_oracle(4, 2.5, 3, 2.5, args.samples)
    curve = watt_curve(2, 2.5, 1.5)
    print(f"{'eps':>8} {'detours':>8} {'points':>7} {'bounces':>8} {'closed':>7} {'residual':>9} "
          f"{'max gap':>8} {'H(vertex)':>10} {'H(polyline)':>12} {'time':>6}")
    for eps in args.eps:
        t = time.perf_counter()
        try:
            L = trace(c, 0.0, TraceConfig(variant=args.variant, eps=eps))
        except NonTerminating as exc:
            L = exc.locus
        dt = time.perf_counter() - t
        xy = L.finite_xy()
        print(
            f"{eps:>8g} {L.detours_used:>8} {len(xy):>7} {L.reversal_count:>8} {str(L.closed):>7} "
            f"{residual_implicit(curve, L).max_residual:>9.1e} {sampling_density(xy):>8.4f} "
            f"{hausdorff(xy, oracle):>10.4f} {hausdorff(densify(L, eps / 10), oracle):>12.4f} {dt:>5.2f}s"
        )


if __name__ == "__main__":
    main()
