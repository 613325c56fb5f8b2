"""Command line front end: ``detour trace|validate|examples``."""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .bundled import BUNDLED
from .construction import FreePoint
from .dsl import ParseError, parse_construction
from .emit import emit_csv, emit_json, emit_svg
from .errors import DetourError, NonTerminating
from .oracles import curve_from_spec, residual_implicit
from .projective import Tolerances, real_affine
from .tracer import TraceConfig, trace

EXIT_OK, EXIT_VALIDATION, EXIT_PARSE, EXIT_NONTERMINATING = 0, 1, 2, 3
FORMATS = ("csv", "svg", "json")


def _out_spec(text: str) -> tuple[str, str]:
    fmt, sep, path = text.partition(":")
    if not sep or fmt not in FORMATS or not path:
        raise argparse.ArgumentTypeError(f"expected FMT:PATH with FMT in {'|'.join(FORMATS)}, got {text!r}")
    return fmt, path


def _positive(text: str) -> float:
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _add_trace_options(p: argparse.ArgumentParser):
    p.add_argument("file", type=Path, help="construction file")
    p.add_argument("--variant", choices=("A", "B"), default="A")
    p.add_argument("--eps", type=_positive, default=0.05, help="detour diameter")
    p.add_argument("--detour-steps", type=int, default=32, help="substeps per full detour circle")
    p.add_argument("--orientation", choices=("acw", "cw"), default="acw")
    p.add_argument("--max-detours", type=int, default=200_000)
    p.add_argument("--t0", type=float, default=0.0, help="start time (real)")
    p.add_argument("--tol-return", type=_positive, default=1e-6)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="detour", description="Trace loci of ruler-and-compass constructions.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("trace", help="trace a construction and write the locus")
    _add_trace_options(p)
    p.add_argument("--out", type=_out_spec, action="append", default=[], metavar="FMT:PATH",
                   help="output file, repeatable; FMT is csv, svg or json ('-' as PATH writes to stdout)")

    p = sub.add_parser("validate", help="trace and check the locus against a curve equation")
    _add_trace_options(p)
    p.add_argument("--curve", required=True, metavar="NAME[:PARAMS]",
                   help="projline | conchoid:a,b | watt:a,b,c | fourbar-sextic | conic5[:x1,y1,...,x5,y5]")
    p.add_argument("--max-residual", type=_positive, default=1e-6)

    p = sub.add_parser("examples", help="write the bundled construction files")
    p.add_argument("--dir", type=Path, default=Path("."), help="target directory")
    return parser


def _config(args) -> TraceConfig:
    return TraceConfig(
        variant=args.variant,
        eps=args.eps,
        detour_steps=args.detour_steps,
        orientation=args.orientation,
        max_detours=args.max_detours,
        tolerances=Tolerances(tol_return=args.tol_return),
    )


def _load(path: Path):
    text = path.read_text(encoding="utf-8")
    return parse_construction(text)


def _write(fmt: str, path: str, locus, cfg: TraceConfig, source: str):
    if fmt == "csv":
        text = emit_csv(locus)
    elif fmt == "svg":
        text = emit_svg(locus)
    else:
        text = emit_json(locus, cfg, source=source)
    if path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _cmd_trace(args) -> int:
    c = _load(args.file)
    cfg = _config(args)
    try:
        locus = trace(c, args.t0, cfg)
        code = EXIT_OK
    except NonTerminating as exc:
        print(f"error: {exc}", file=sys.stderr)
        locus, code = exc.locus, EXIT_NONTERMINATING
    for fmt, path in args.out:
        if locus is not None and locus.records:
            _write(fmt, path, locus, cfg, str(args.file))
    if locus is not None:
        print(
            f"{args.file}: {len(locus.records)} points in {len(locus.arcs)} arcs, "
            f"{locus.detours_used} detours, {locus.reversal_count} reversals, closed={locus.closed}",
            file=sys.stderr,
        )
    return code


def _cmd_validate(args) -> int:
    c = _load(args.file)
    free = [real_affine(n.coords) for n in c.nodes if isinstance(n, FreePoint)]
    try:
        curve = curve_from_spec(args.curve, free)
    except (ValueError, DetourError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    try:
        locus = trace(c, args.t0, _config(args))
    except NonTerminating as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NONTERMINATING
    res = residual_implicit(curve, locus)
    ok = res.max_residual <= args.max_residual
    print(
        f"{'PASS' if ok else 'FAIL'} {curve.name}: max residual {res.max_residual:.3e} "
        f"over {res.n_points} points ({res.skipped_infinite} at infinity skipped), limit {args.max_residual:g}"
    )
    return EXIT_OK if ok else EXIT_VALIDATION


def _cmd_examples(args) -> int:
    args.dir.mkdir(parents=True, exist_ok=True)
    for name, text in BUNDLED.items():
        (args.dir / name).write_text(text, encoding="utf-8")
        print(args.dir / name)
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return {"trace": _cmd_trace, "validate": _cmd_validate, "examples": _cmd_examples}[args.command](args)
    except ParseError as exc:
        print(f"{getattr(args, 'file', '')}:{exc.span.line}:{exc.span.column}: {exc.kind}: {exc.message}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except DetourError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
