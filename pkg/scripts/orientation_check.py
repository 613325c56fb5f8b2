"""Compare clockwise and anticlockwise detours on the bundled examples.

Both orientations of one example run concurrently; the report lists the
Hausdorff distance between the resampled loci and the largest projective
distance between each clockwise substep and the conjugate of its
anticlockwise twin.
"""
import argparse
from concurrent.futures import ProcessPoolExecutor

from detour import projective as pg
from detour.bundled import BUNDLED
from detour.dsl import parse_construction
from detour.oracles import densify, hausdorff, sampling_density
from detour.tracer import TraceConfig, trace


def run(name, variant, eps, orientation):
    c = parse_construction(BUNDLED[name])
    steps = []
    locus = trace(c, 0.0, TraceConfig(variant=variant, eps=eps, orientation=orientation), on_step=steps.append)
    return locus, [s.state for s in steps]


def worst_conjugate(states_a, states_b) -> float:
    if len(states_a) != len(states_b):
        return float("inf")
    worst = 0.0
    for a, b in zip(states_a, states_b):
        for x, y in zip(a.conj().values, b.values):
            if isinstance(x, pg.Circle):
                x, y = x.center, y.center
            worst = max(worst, pg.projective_distance(x, y))
    return worst


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--variant", choices=("A", "B"), default="A")
    ap.add_argument("--eps", type=float, default=0.05)
    ap.add_argument("names", nargs="*", default=sorted(BUNDLED))
    args = ap.parse_args()

    with ProcessPoolExecutor(max_workers=2) as pool:
        for name in args.names:
            fa = pool.submit(run, name, args.variant, args.eps, "acw")
            fb = pool.submit(run, name, args.variant, args.eps, "cw")
            (la, sa), (lb, sb) = fa.result(), fb.result()
            dens = max(sampling_density([p.point for p in arc if p.point]) for arc in la.arcs)
            h = hausdorff(densify(la, dens / 10), densify(lb, dens / 10))
            print(
                f"{name:<15} hausdorff={h:.2e} (2x density {2 * dens:.3f})  substeps={len(sa)}/{len(sb)}  "
                f"conjugate distance={worst_conjugate(sa, sb):.1e}"
            )


if __name__ == "__main__":
    main()
