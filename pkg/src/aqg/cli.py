"""Command-line runner: ``aqg verify`` and the coverage self-audit ``aqg audit``."""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .examples import builtin_examples, is_rational_square, parse_example
from .fileformat import PresentationError, load_presentation
from .scalar import Gauss, default_tolerance, format_scalar, rat
from .suites import DEFAULT_SEED, DEFAULT_T, PAPER_MAP, SUITE_CHOICES, coverage, run_suites

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _t_list(text: str) -> tuple[float, ...]:
    try:
        vals = tuple(float(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"--t expects a comma list of reals, got {text!r}") from None
    if not vals:
        raise argparse.ArgumentTypeError("--t needs at least one value")
    return vals


def _add_selection(p: argparse.ArgumentParser, default_degree: int) -> None:
    p.add_argument("--example", default="suq2",
                   help="group:C[G] or group:F[G] with G in Z2,Z4,Z8,S3,D4, or suq2 (default: suq2)")
    p.add_argument("--q", default="1/4", help="deformation parameter for suq2, exact p/q in (0,1)")
    p.add_argument("--degree", type=int, default=default_degree,
                   help="working degree N for infinite-dimensional examples")
    p.add_argument("--presentation-file", metavar="PATH",
                   help="load an aqg-presentation v1 file instead of a built-in example")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="aqg", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run verification suites and write reports")
    _add_selection(v, default_degree=2)
    v.add_argument("--suite", default="all", choices=SUITE_CHOICES)
    v.add_argument("--t", type=_t_list, default=DEFAULT_T, metavar="T1,T2,...",
                   help="real parameters for the one-parameter groups (default 0.5,1.0,π)")
    v.add_argument("--tolerance", type=float, default=None,
                   help="float-tier tolerance (default: $AQG_DEFAULT_TOLERANCE or 1e-9)")
    v.add_argument("--seed", type=int, default=DEFAULT_SEED)
    v.add_argument("--grid-degree", type=int, default=None,
                   help="degree of the tensor grids of the appendix suite (default min(degree, 2))")
    v.add_argument("--pentagon", action="store_true", help="also check the pentagon equation for V")
    v.add_argument("--exact-polar", action="store_true",
                   help="require exact polar parts (q must be the square of a rational)")
    v.add_argument("--report-json", metavar="PATH")
    v.add_argument("--report-md", metavar="PATH")
    v.add_argument("--timing", action="store_true", help="include wall times in the JSON report")
    v.add_argument("--quiet", action="store_true")

    a = sub.add_parser("audit", help="list paper propositions without a check id (must be empty)")
    _add_selection(a, default_degree=1)
    a.add_argument("--json", action="store_true", help="print the coverage map as JSON")
    return parser


def _select(args) -> tuple[object, dict]:
    env: dict = {}
    if args.presentation_file:
        try:
            pres = load_presentation(args.presentation_file)
        except OSError as exc:
            raise UsageError(f"cannot read {args.presentation_file}: {exc}") from None
        env["example"] = f"file:{Path(args.presentation_file).name}"
        return pres, env
    if args.example == "suq2":
        try:
            q = rat(args.q)
        except (ValueError, TypeError):
            raise UsageError(f"--q must be an exact rational p/q, got {args.q!r}") from None
        if not 0 < q < 1:
            raise UsageError(f"--q must lie in (0,1), got {args.q}")
        if getattr(args, "exact_polar", False) and not is_rational_square(q):
            raise UsageError(f"q={format_scalar(Gauss(q))} is not a rational square while exact polar parts "
                             "were requested (--exact-polar)")
        env["q"] = format_scalar(Gauss(q))
        return parse_example("suq2", q), env
    try:
        return parse_example(args.example), env
    except ValueError as exc:
        raise UsageError(f"{exc}; built-ins: {', '.join(builtin_examples())}") from None


def _verify(args) -> int:
    pres, env = _select(args)
    if args.degree < 0:
        raise UsageError("--degree must be nonnegative")
    if args.grid_degree is not None and args.grid_degree < 0:
        raise UsageError("--grid-degree must be nonnegative")
    env["exact_polar"] = bool(args.exact_polar)
    tol = args.tolerance if args.tolerance is not None else default_tolerance()
    rep = run_suites(pres, args.suite, args.degree, t_samples=args.t, tol=tol, seed=args.seed,
                     grid_degree=args.grid_degree, pentagon=args.pentagon, environment=env)
    if args.report_json:
        Path(args.report_json).write_text(rep.to_json(timing=args.timing), encoding="utf-8")
    if args.report_md:
        Path(args.report_md).write_text(rep.to_markdown(), encoding="utf-8")
    if not args.quiet:
        for c in sorted(rep.checks, key=lambda c: c.check_id):
            line = f"{c.status.upper():4} {c.check_id}  [{c.tier}] residual={c.residual} n={c.count}"
            if c.status == "fail" and c.witness:
                line += f"  witness: {c.witness}"
            print(line)
        n_fail = len(rep.failures())
        print(f"{len(rep.checks) - n_fail}/{len(rep.checks)} checks passed "
              f"({rep.environment['example']}, suite {args.suite})")
    return EXIT_OK if rep.ok else EXIT_FAIL


def _audit(args) -> int:
    pres, env = _select(args)
    rep = run_suites(pres, "all", args.degree, environment=env)
    cov = coverage(rep)
    missing = [k for k, ids in cov.items() if not ids]
    if args.json:
        print(json.dumps({"example": rep.environment["example"], "unmapped": missing,
                          "coverage": cov}, indent=2, sort_keys=True))
    else:
        for item in PAPER_MAP:
            ids = cov[item.key]
            mark = "ok " if ids else "MISSING"
            print(f"{mark} {item.section} / {item.key}: {item.statement}")
            for i in ids:
                print(f"      {i}")
        print(f"unmapped propositions: {len(missing)}")
        for k in missing:
            print(f"  {k}")
    return EXIT_OK if not missing else EXIT_FAIL


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _verify(args) if args.command == "verify" else _audit(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"aqg: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PresentationError as exc:
        print(f"aqg: presentation rejected: {exc}", file=sys.stderr)
        if exc.report is not None:
            for c in exc.report.failures():
                print(f"FAIL {c.check_id}  witness: {c.witness}", file=sys.stderr)
            return EXIT_FAIL
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
