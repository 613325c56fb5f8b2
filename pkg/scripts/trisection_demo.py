"""Trisect acute angles with a traced conchoid and report the error."""
import argparse
import math
from pathlib import Path

from detour.emit import emit_svg
from detour.trisection import trisect


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("degrees", type=float, nargs="*", default=[20, 40, 60, 80])
    ap.add_argument("--radius", type=float, default=1.0)
    ap.add_argument("--svg-dir", type=Path, help="write the traced conchoid for each angle here")
    args = ap.parse_args()

    print(f"{'phi':>6} {'phi/3':>12} {'angle HEG':>12} {'error':>9}  G")
    for deg in args.degrees:
        tri = trisect(math.radians(deg), args.radius)
        print(
            f"{deg:>6g} {math.degrees(tri.phi / 3):>12.8f} {math.degrees(tri.angle):>12.8f} "
            f"{tri.error:>9.1e}  ({tri.G[0]:.6f}, {tri.G[1]:.6f})"
        )
        if args.svg_dir:
            args.svg_dir.mkdir(parents=True, exist_ok=True)
            (args.svg_dir / f"trisection_{deg:g}.svg").write_text(emit_svg(tri.locus))


if __name__ == "__main__":
    main()
