"""Command line front end.

Four subcommands over scene files (paths or built-in example names):

* ``fix``    -- fixed-point subspace of a named composition
* ``verify`` -- run checks against a scene or seeded random instances
* ``dr``     -- trace the averaged two-reflector iteration
* ``plot``   -- render compositions of a planar scene as SVG

Exit status: 0 on success, 1 when a requested check fails, 2 on usage,
parse or name errors.  Machine-readable output (CSV, SVG) and the human
readable summary never share a stream: whichever stream carries data gets
nothing else.
"""

from __future__ import annotations

import argparse
import csv
import sys

import numpy as np

from . import verify
from .linalg import Tolerance
from .operators import dr_iterate, fixed_subspace
from .scene import SceneError, load_scene
from .subspace import AmbientMismatchError
from .svgfig import FigureSpec, render_scene_figure

EXIT_OK = 0
EXIT_CHECK_FAILURE = 1
EXIT_USAGE = 2


def _tolerance(args) -> Tolerance | None:
    return Tolerance(eq_abs=args.tol) if args.tol is not None else None


def _fmt12(x: float) -> str:
    # fixed decimal, 12 significant digits
    return np.format_float_positional(x, precision=12, unique=False,
                                      fractional=False)


def _open_output(args):
    """(file handle, needs_close, human stream) for machine output."""
    if args.output is None or args.output == "-":
        return sys.stdout, False, sys.stderr
    return open(args.output, "w", encoding="utf-8", newline=""), True, sys.stdout


# ---------------------------------------------------------------------------
# fix
# ---------------------------------------------------------------------------

def cmd_fix(args) -> int:
    scene = load_scene(args.scene)
    report = fixed_subspace(scene.composition_matrix(args.composition),
                            tol=_tolerance(args))
    basis = report.subspace.basis

    human = sys.stdout
    if args.output == "-":
        human = sys.stderr
    print(f"scene:          {scene.name}", file=human)
    print(f"composition:    {args.composition}   "
          f"(operator {scene.operator_notation(args.composition)})", file=human)
    print(f"ambient:        {scene.ambient}", file=human)
    print(f"dim Fix:        {report.dim}", file=human)
    print(f"operator norm:  {_fmt12(report.operator_norm)}   "
          f"(nonexpansive: {'yes' if report.nonexpansive else 'no'})", file=human)
    print(f"worst residual: {report.worst_residual:.3e}", file=human)
    if report.dim:
        print("basis vectors (one per row):", file=human)
        for col in basis.T:
            print("  " + "  ".join(_fmt12(x) for x in col), file=human)

    if args.output is not None:
        stream, needs_close, _ = _open_output(args)
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(["vector"] + [f"x{i}" for i in range(scene.ambient)])
        for idx, col in enumerate(basis.T):
            writer.writerow([idx] + [repr(float(x)) for x in col])
        if needs_close:
            stream.close()
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def _parse_random_spec(tokens, seed: int, trials: int) -> verify.RandomSpec:
    ambient, dims = None, None
    for token in tokens:
        key, sep, value = token.partition("=")
        if not sep:
            raise SceneError(f"malformed random spec token {token!r}; "
                             f"expected n=<int> and dims=<k1,k2,...>")
        if key == "n":
            ambient = int(value)
        elif key == "dims":
            dims = tuple(int(part) for part in value.split(",") if part != "")
        else:
            raise SceneError(f"unknown random spec key {key!r}")
    if ambient is None or not dims:
        raise SceneError("random spec needs both n=<int> and dims=<k1,k2,...>")
    return verify.RandomSpec(ambient=ambient, dims=dims, seed=seed,
                             trials=trials)


def cmd_verify(args) -> int:
    if args.random:
        # argparse greedily folds trailing check names into --random;
        # spec tokens always contain '=', check names never do
        spec_tokens = [t for t in args.random if "=" in t]
        checks = [t for t in args.random if "=" not in t] + list(args.args)
        spec = _parse_random_spec(spec_tokens, args.seed, args.trials)
        reports = verify.run_suite(spec, checks, tol=args.tol)
    else:
        if not args.args:
            raise SceneError("verify needs a scene file or --random n=... dims=...")
        scene = load_scene(args.args[0])
        checks = list(args.args[1:])
        named = list(scene.subspaces.items())
        reports = verify.run_named_checks(named, checks, tol=args.tol)

    table = sys.stdout
    if args.output == "-":
        table = sys.stderr
    width_name = max([len(r.check_name) for r in reports], default=5)
    width_inst = max([len(r.instance) for r in reports], default=8)
    for r in reports:
        status = "PASS" if r.passed else "FAIL"
        print(f"{r.check_name:<{width_name}}  {r.instance:<{width_inst}}  "
              f"{r.worst_residual:.3e}  {status}", file=table)
    failures = sum(not r.passed for r in reports)
    if failures:
        print(f"FAILURES: {failures} of {len(reports)} checks", file=table)
    else:
        print(f"all {len(reports)} checks passed", file=table)

    if args.output is not None:
        stream, needs_close, _ = _open_output(args)
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(["check", "instance", "residual", "tolerance", "status"])
        for r in reports:
            writer.writerow([r.check_name, r.instance, repr(r.worst_residual),
                             repr(r.tolerance), "PASS" if r.passed else "FAIL"])
        if needs_close:
            stream.close()
    return EXIT_CHECK_FAILURE if failures else EXIT_OK


# ---------------------------------------------------------------------------
# dr
# ---------------------------------------------------------------------------

def cmd_dr(args) -> int:
    scene = load_scene(args.scene)
    u1 = scene.subspace(args.u1)
    u2 = scene.subspace(args.u2)
    try:
        x0 = np.array([float(part) for part in args.x0.split(",")])
    except ValueError:
        raise SceneError(f"cannot parse start point {args.x0!r}; "
                         f"expected comma-separated numbers") from None
    trace = dr_iterate(u1, u2, x0, max_iter=args.max_iter, eps=args.eps,
                       tol=_tolerance(args))

    stream, needs_close, human = _open_output(args)
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(["k", "iterate_norm", "shadow_error"])
    for k, (x, err) in enumerate(zip(trace.iterates, trace.errors)):
        writer.writerow([k, repr(float(np.linalg.norm(x))), repr(float(err))])
    if needs_close:
        stream.close()

    rate = ("none (subspaces share every direction or one is trivial)"
            if trace.predicted_rate is None
            else _fmt12(trace.predicted_rate))
    print(f"iterations:     {trace.iterations}", file=human)
    print(f"final error:    {trace.final_error:.6e}", file=human)
    print(f"converged:      {'yes' if trace.converged else 'no'} "
          f"(eps {args.eps:g})", file=human)
    print(f"predicted rate: {rate}", file=human)
    return EXIT_OK


# ---------------------------------------------------------------------------
# plot
# ---------------------------------------------------------------------------

def cmd_plot(args) -> int:
    scene = load_scene(args.scene)
    if args.compositions:
        names = tuple(args.compositions.split(","))
    else:
        names = tuple(scene.compositions)
    try:
        width, _, height = args.size.partition("x")
        spec = FigureSpec(compositions=names, width=int(width),
                          height=int(height), axis_range=args.axis_range)
    except ValueError as exc:
        raise SceneError(str(exc)) from None
    svg = render_scene_figure(scene, spec, tol=_tolerance(args))
    if args.output is None or args.output == "-":
        sys.stdout.write(svg)
    else:
        with open(args.output, "w", encoding="utf-8") as handle:
            handle.write(svg)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser / dispatch
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=None,
                        help="equality / check tolerance (default 1e-8)")
    common.add_argument("--seed", type=int, default=0,
                        help="seed for random instances (default 0)")
    common.add_argument("--output", "-o", default=None, metavar="PATH",
                        help="write machine-readable output (CSV or SVG) "
                             "here; '-' for stdout")

    parser = argparse.ArgumentParser(
        prog="fixref",
        description="Fixed-point subspaces of reflector compositions.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_fix = sub.add_parser(
        "fix", parents=[common],
        help="fixed-point subspace of a composition in a scene")
    p_fix.add_argument("scene", help="scene file or built-in scene name")
    p_fix.add_argument("composition", help="composition name from the scene")
    p_fix.set_defaults(func=cmd_fix)

    p_verify = sub.add_parser(
        "verify", parents=[common],
        help="run checks against a scene or random instances")
    p_verify.add_argument(
        "args", nargs="*", metavar="ARG",
        help="with --random: check names; otherwise: scene then check names")
    p_verify.add_argument(
        "--random", nargs="+", metavar="KEY=VALUE", default=None,
        help="random instances, e.g. --random n=6 dims=2,3")
    p_verify.add_argument("--trials", type=int, default=1,
                          help="instances per check for --random (default 1)")
    p_verify.set_defaults(func=cmd_verify)

    p_dr = sub.add_parser(
        "dr", parents=[common],
        help="trace the averaged two-reflector iteration on two subspaces")
    p_dr.add_argument("scene", help="scene file or built-in scene name")
    p_dr.add_argument("u1", help="first subspace name (shadow side)")
    p_dr.add_argument("u2", help="second subspace name")
    p_dr.add_argument("--x0", required=True,
                      help="start point, comma-separated, e.g. --x0 0,1")
    p_dr.add_argument("--eps", type=float, default=1e-6,
                      help="shadow error stopping threshold (default 1e-6)")
    p_dr.add_argument("--max-iter", type=int, default=10000,
                      help="iteration cap (default 10000)")
    p_dr.set_defaults(func=cmd_dr)

    p_plot = sub.add_parser(
        "plot", parents=[common],
        help="render a planar scene's compositions as SVG")
    p_plot.add_argument("scene", help="scene file or built-in scene name")
    p_plot.add_argument("--compositions", default=None,
                        help="comma-separated composition names "
                             "(default: all, up to 6)")
    p_plot.add_argument("--size", default="900x600",
                        help="canvas size in pixels, WIDTHxHEIGHT")
    p_plot.add_argument("--axis-range", type=float, default=1.5,
                        help="half-width of the plotted square (default 1.5)")
    p_plot.set_defaults(func=cmd_plot)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on usage errors
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (SceneError, AmbientMismatchError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
