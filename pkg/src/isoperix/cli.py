"""Command line interface: analyze, check, stability, fuzz, fit.

Exit codes: 0 success / inequality holds, 1 inequality violated,
2 unreadable input, 3 curve not strictly convex, 4 cone condition
required by the command is violated.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .errors import ConeConditionError, NotConvexError
from .functionals import compute_all
from .fuzz import CHECKS, MUTATIONS, run_fuzz
from .generators import fit_support_fourier, load_point_cloud
from .inequalities import PANXU_H2_PARAMS, PRESETS, IneqParams, bonnesen_10, cone_check, deficit
from .stability import stability_report
from .support import SupportFourier, min_rho
from .svg import render_svg

EXIT_OK, EXIT_VIOLATED, EXIT_PARSE, EXIT_NONCONVEX, EXIT_CONE = 0, 1, 2, 3, 4
STABILITY_PRESETS = {**PRESETS, "panxu-h2": PANXU_H2_PARAMS}


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _plain(obj):
    """Recursively convert numpy scalars so json emits shortest round-trip floats."""
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.generic):
        return obj.item()
    return obj


def _flatten(d, prefix=""):
    for k, v in d.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            yield from _flatten(v, key + ".")
        elif isinstance(v, list) and v and isinstance(v[0], (list, dict)):
            yield key, json.dumps(v)
        else:
            yield key, v


def format_table(d: dict) -> str:
    rows = list(_flatten(_plain(d)))
    width = max((len(k) for k, _ in rows), default=0)
    lines = []
    for k, v in rows:
        if isinstance(v, float):
            v = f"{v: .15g}"
        lines.append(f"{k:<{width}}  {v}")
    return "\n".join(lines) + "\n"


def emit(args, payload: dict) -> None:
    text = format_table(payload) if args.table else json.dumps(_plain(payload), indent=2) + "\n"
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


def load_curve(path: str | None) -> SupportFourier:
    try:
        text = sys.stdin.read() if path in (None, "-") else Path(path).read_text()
        return SupportFourier.from_json(text)
    except (OSError, ValueError, TypeError, KeyError) as exc:
        raise CliError(EXIT_PARSE, f"cannot read curve: {exc}") from exc


def require_convex_cli(c: SupportFourier) -> None:
    value, theta = min_rho(c)
    if not value > 0:
        raise CliError(EXIT_NONCONVEX, f"curve is not strictly convex: min rho = {value!r} at theta = {theta!r}")


def params_from_args(args, presets: dict) -> tuple[str | None, IneqParams | None]:
    raw = [args.alpha, args.beta, args.lam, args.delta]
    if args.preset:
        if any(v is not None for v in raw):
            raise CliError(EXIT_PARSE, "use either --preset or --alpha/--beta/--lambda/--delta")
        return args.preset, presets.get(args.preset)
    if any(v is None for v in raw):
        raise CliError(EXIT_PARSE, "need --preset or all of --alpha --beta --lambda --delta")
    return None, IneqParams(*raw)


# ---------------------------------------------------------------------------

def cmd_analyze(args) -> int:
    c = load_curve(args.input)
    require_convex_cli(c)
    emit(args, compute_all(c).to_dict())
    if args.svg:
        Path(args.svg).write_text(render_svg(c))
    return EXIT_OK


def cmd_check(args) -> int:
    c = load_curve(args.input)
    require_convex_cli(c)
    name, p = params_from_args(args, PRESETS)
    slack = args.tol * max(1.0, (2 * math.pi * c.a0) ** 2)
    if name == "eq10":
        residual = bonnesen_10(c)
        payload = {"preset": "eq10", "residual": residual, "max_rho_sq": compute_all(c).max_rho_sq}
    else:
        if not cone_check(p).cond4:
            print("warning: parameters violate cone condition (4); the inequality is unproven here",
                  file=sys.stderr)
        rep = deficit(c, p)
        residual = rep.value
        payload = {"preset": name, "residual": residual, **rep.to_dict()}
    holds = residual >= -slack
    payload["holds"] = holds
    emit(args, payload)
    return EXIT_OK if holds else EXIT_VIOLATED


def cmd_stability(args) -> int:
    c = load_curve(args.input)
    require_convex_cli(c)
    _, p = params_from_args(args, STABILITY_PRESETS)
    try:
        rep = stability_report(c, p, args.tol)
    except ConeConditionError as exc:
        raise CliError(EXIT_CONE, str(exc)) from exc
    payload = {"params": p.to_dict(), "cone": cone_check(p).to_dict(), **rep.to_dict(), "all_ok": rep.all_ok}
    emit(args, payload)
    return EXIT_OK if rep.all_ok else EXIT_VIOLATED


def cmd_fuzz(args) -> int:
    checks = tuple(args.checks.split(",")) if args.checks else CHECKS
    try:
        summary = run_fuzz(args.count, args.seed, args.max_harmonic, args.tol,
                           mutation=args.mutation, workers=args.workers, checks=checks)
    except ValueError as exc:
        raise CliError(EXIT_PARSE, str(exc)) from exc
    if args.report:
        out = Path(args.report)
        (out / "failures").mkdir(parents=True, exist_ok=True)
        (out / "summary.json").write_text(json.dumps(_plain(summary.to_dict()), indent=2) + "\n")
        for k, f in enumerate(summary.failures):
            path = out / "failures" / f"{k:05d}_{f.index}_{f.check}.json"
            path.write_text(json.dumps(_plain(f.to_dict()), indent=2) + "\n")
    emit(args, summary.to_dict())
    return EXIT_OK if summary.ok else EXIT_VIOLATED


def cmd_fit(args) -> int:
    try:
        pc = load_point_cloud(args.input)
    except (OSError, ValueError, KeyError) as exc:
        raise CliError(EXIT_PARSE, f"cannot read points: {exc}") from exc
    N = args.max_harmonic
    M = args.samples or max(4 * (N + 1), 256)
    try:
        rep = fit_support_fourier(pc, N, M)
    except ValueError as exc:
        raise CliError(EXIT_PARSE, str(exc)) from exc
    if args.curve_out:
        Path(args.curve_out).write_text(json.dumps(rep.curve.to_dict()) + "\n")
    emit(args, rep.to_dict())
    if not rep.convex:
        print("fitted support function is not strictly convex", file=sys.stderr)
        return EXIT_NONCONVEX
    return EXIT_OK


# ---------------------------------------------------------------------------

def _common(p: argparse.ArgumentParser, input_help: str = "curve JSON file (default stdin)"):
    p.add_argument("--input", "-i", help=input_help)
    p.add_argument("--output", "-o", help="write the report here instead of stdout")
    p.add_argument("--tol", type=float, default=1e-9, help="tolerance, scaled by max(1, L^2) (default 1e-9)")
    p.add_argument("--seed", type=int, default=42, help="RNG seed (unsigned 64-bit)")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="table", action="store_false", help="JSON output (default)")
    fmt.add_argument("--table", dest="table", action="store_true", help="fixed-width table output")
    p.set_defaults(table=False)


def _params(p: argparse.ArgumentParser, presets):
    p.add_argument("--alpha", type=float)
    p.add_argument("--beta", type=float)
    p.add_argument("--lambda", dest="lam", type=float)
    p.add_argument("--delta", type=float)
    p.add_argument("--preset", choices=sorted(presets))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="isoperix", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="geometric functionals of a curve")
    _common(p)
    p.add_argument("--svg", help="also draw the curve and its evolute to this SVG file")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("check", help="evaluate the parametric deficit or a named inequality")
    _common(p)
    _params(p, [*PRESETS, "eq10"])
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("stability", help="distance to the Steiner disc and stability bounds")
    _common(p)
    _params(p, STABILITY_PRESETS)
    p.set_defaults(func=cmd_stability)

    p = sub.add_parser("fuzz", help="random invariant campaign")
    _common(p)
    p.add_argument("--count", type=int, default=1000)
    p.add_argument("--max-harmonic", type=int, default=16)
    p.add_argument("--report", help="directory for summary.json and per-failure reproduction files")
    p.add_argument("--checks", help=f"comma-separated subset of {','.join(CHECKS)}")
    p.add_argument("--workers", type=int, help="worker processes (default $ISOPERIX_THREADS or 1)")
    p.add_argument("--mutation", choices=sorted(MUTATIONS), help="inject a known bug (harness self-test)")
    p.set_defaults(func=cmd_fuzz)

    p = sub.add_parser("fit", help="fit a support function to a point cloud")
    _common(p, "points file: CSV x,y or JSON [[x,y],...]")
    p.add_argument("--max-harmonic", type=int, default=8)
    p.add_argument("--samples", type=int, help="angles sampled (default max(4(N+1), 256))")
    p.add_argument("--curve-out", help="write the fitted curve JSON here")
    p.set_defaults(func=cmd_fit)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    needs_input = args.command != "fuzz"
    if needs_input and args.input is None and (args.command == "fit" or sys.stdin.isatty()):
        parser.error("--input is required")
    try:
        return args.func(args)
    except CliError as exc:
        print(f"isoperix {args.command}: {exc}", file=sys.stderr)
        return exc.code
    except NotConvexError as exc:
        print(f"isoperix {args.command}: {exc}", file=sys.stderr)
        return EXIT_NONCONVEX


if __name__ == "__main__":
    sys.exit(main())
