"""Command-line front end.

    chirpspace verify <suite> [--config FILE] [--alpha A]... [--epsilon E]... [--out DIR]
    chirpspace transform --in FILE --direction D --path P --grid "min,max,n;min,max,n" --out FILE
    chirpspace kernel --alpha A --grid "min,max,n;min,max,n" --method M --out FILE

Exit codes: 0 success / all checks passed, 1 verification failure,
2 usage, config, or input parse errors.  Angles are radians.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

import numpy as np

from . import closedform, fields_io, xform
from .grid import PhaseGrid, SampledField, make_axis
from .suites import SUITE_NAMES, RunConfig, run_suite

__all__ = ["main"]

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2


def _parse_grid_spec(spec: str) -> PhaseGrid:
    """Parse "min,max,n;min,max,n" (first axis outer, second inner)."""
    parts = spec.split(";")
    if len(parts) != 2:
        raise ValueError(f"grid spec needs two ';'-separated axes, got {spec!r}")
    axes = []
    for part in parts:
        items = part.split(",")
        if len(items) != 3:
            raise ValueError(f"axis spec needs min,max,n, got {part!r}")
        lo, hi = float(items[0]), float(items[1])
        n = int(items[2])
        axes.append(make_axis(lo, hi, n))
    return PhaseGrid(axes[0], axes[1])


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chirpspace",
        description="Phase-space chirp transform toolkit: verification suites, "
                    "file transforms, and fractional-Fourier kernel dumps.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    pv = sub.add_parser("verify", help="run a named verification suite")
    pv.add_argument("suite", choices=sorted(SUITE_NAMES))
    pv.add_argument("--config", help="JSON config file")
    pv.add_argument("--alpha", action="append", type=float, default=None,
                    help="override the chirplet-identity angle list (repeatable, radians)")
    pv.add_argument("--epsilon", action="append", type=float, default=None,
                    help="override the damping ladder (repeatable)")
    pv.add_argument("--out", default=None, help="report output directory")

    pt = sub.add_parser("transform", help="transform a field file")
    pt.add_argument("--in", dest="infile", required=True)
    pt.add_argument("--direction", choices=("forward", "inverse"), required=True)
    pt.add_argument("--path", choices=("direct", "fast", "both"), default="fast")
    pt.add_argument("--grid", required=True, help='output grid "min,max,n;min,max,n"')
    pt.add_argument("--out", required=True)

    pk = sub.add_parser("kernel", help="write fractional-Fourier kernel samples")
    pk.add_argument("--alpha", type=float, required=True, help="kernel angle (radians)")
    pk.add_argument("--grid", required=True, help='sample grid "min,max,n;min,max,n"')
    pk.add_argument("--method", choices=("closed", "hermite"), default="closed")
    pk.add_argument("--terms", type=int, default=1600,
                    help="series length for --method hermite")
    pk.add_argument("--out", required=True)
    return parser


def _cmd_verify(args) -> int:
    try:
        cfg = RunConfig.from_file(args.config) if args.config else RunConfig()
        if args.alpha:
            cfg.alphas = tuple(args.alpha)
        if args.epsilon:
            cfg.epsilons = tuple(args.epsilon)
        if args.out:
            cfg.out_dir = args.out
        cfg.validate()
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    report = run_suite(args.suite, cfg)
    out_dir = Path(cfg.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    report_path = out_dir / f"report-{args.suite}.json"
    report_path.write_text(json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n")

    for c in report.cases:
        status = "PASS" if c.passed else "FAIL"
        print(f"[{status}] {c.name}: residual {c.residual:.3e} (tol {c.tolerance:g}, "
              f"{c.runtime_ms:.0f} ms) -- {c.identity}")
    verdict = "PASS" if report.overall_pass else "FAIL"
    print(f"suite {report.suite}: {verdict} ({len(report.cases)} cases) -> {report_path}")
    return EXIT_OK if report.overall_pass else EXIT_VERIFY_FAILED


def _cmd_transform(args) -> int:
    try:
        field = fields_io.read_field_csv(args.infile)
        out_grid = _parse_grid_spec(args.grid)
    except (OSError, ValueError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    ops = {
        ("forward", "direct"): xform.forward_direct,
        ("forward", "fast"): xform.forward_fast,
        ("inverse", "direct"): xform.inverse_direct,
        ("inverse", "fast"): xform.inverse_fast,
    }
    results = {}
    for path in (("direct", "fast") if args.path == "both" else (args.path,)):
        t0 = time.perf_counter()
        results[path] = ops[(args.direction, path)](field, out_grid)
        dt = time.perf_counter() - t0
        print(f"{args.direction} ({path}): {dt * 1e3:.1f} ms")
    if args.path == "both":
        diff = np.abs(results["fast"].values - results["direct"].values).max()
        print(f"max |fast - direct| = {diff:.3e}")
        written = results["fast"]
    else:
        written = results[args.path]
    fields_io.write_field_csv(written, args.out)
    print(f"wrote {written.grid.shape[0]}x{written.grid.shape[1]} field -> {args.out}")
    return EXIT_OK


def _cmd_kernel(args) -> int:
    try:
        grid = _parse_grid_spec(args.grid)
        X, Y = grid.meshes()
        closed = closedform.frft_kernel(args.alpha, X, Y)
    except ValueError as exc:
        print(f"kernel error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    if args.method == "hermite":
        vals = closedform.frft_kernel_hermite(args.alpha, X, Y, args.terms)
        print(f"max |series - closed| = {np.abs(vals - closed).max():.3e} "
              f"({args.terms} terms)")
    else:
        vals = closed
    fields_io.write_field_csv(SampledField(grid, vals), args.out)
    print(f"wrote kernel samples (alpha={args.alpha:g}, method={args.method}) -> {args.out}")
    return EXIT_OK


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors already; normalize other codes
        return EXIT_USAGE if exc.code not in (0,) else 0
    handlers = {"verify": _cmd_verify, "transform": _cmd_transform, "kernel": _cmd_kernel}
    return handlers[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
