"""Command-line surface: simulate, fit, stats, plot, lint.

Every subcommand is a thin wrapper over the library -- the bytes it writes
are exactly what the corresponding library call returns.  Exit codes:
0 success, 1 usage error, 2 data/parse error, 3 lint warnings present.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .chart import chart_spec_from_json, findings_json, lint_chart, render_chart
from .epimodel import DEFAULT_ALPHA, DEFAULT_STEP, ModelKind, ModelParams, integrate
from .errors import EpicurveError
from .fitseries import fit_logistic, fit_report_json, fit_sir
from .ingest import parse_timeseries, summary_table_csv

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_LINT = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad flags; the contract here is 1.
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(f"{self.prog}: error: {message}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="epicurve", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("simulate", parents=[], add_help=True,
                       help="integrate a compartmental model to CSV")
    p.add_argument("--model", required=True,
                   choices=[k.value for k in ModelKind])
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--xi", type=float, default=None)
    p.add_argument("--days", type=float, required=True)
    p.add_argument("--step", type=float, default=DEFAULT_STEP)
    p.add_argument("--population", type=float, default=1_000_000.0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("fit", help="fit logistic or SIR parameters")
    p.add_argument("--model", required=True, choices=["logistic", "sir"])
    p.add_argument("--input", required=True)
    p.add_argument("--region", required=True)
    p.add_argument("--population", type=float, default=None)
    p.add_argument("--horizon", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_fit)

    p = sub.add_parser("stats", help="summary-statistics table for a region")
    p.add_argument("--input", required=True)
    p.add_argument("--region", default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_stats)

    p = sub.add_parser("plot", help="render a chart spec to SVG")
    p.add_argument("--spec", required=True)
    p.add_argument("--input", required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_plot)

    p = sub.add_parser("lint", help="lint a chart spec; findings as JSON")
    p.add_argument("--spec", required=True)
    p.add_argument("--input", required=True)
    p.set_defaults(func=_cmd_lint)
    return parser


def _read_bytes(path: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise EpicurveError(f"cannot read {path}: {exc.strerror}")


def _write_output(data: bytes, out: str | None) -> None:
    if out is None:
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
        return
    try:
        Path(out).write_bytes(data)
    except OSError as exc:
        raise EpicurveError(f"cannot write {out}: {exc.strerror}")


def _model_params(args, kind: ModelKind) -> ModelParams:
    alpha = args.alpha
    if alpha is None and kind.has_exposed:
        alpha = DEFAULT_ALPHA
    if kind.has_waning and args.xi is None:
        raise _UsageError(
            f"epicurve simulate: error: --xi is required for --model {kind.value}"
        )
    return ModelParams(beta=args.beta, gamma=args.gamma, alpha=alpha,
                       xi=args.xi, population=args.population)


def _cmd_simulate(args) -> int:
    kind = ModelKind(args.model)
    params = _model_params(args, kind)
    traj = integrate(kind, params, horizon=args.days, step=args.step)
    _write_output(traj.to_csv().encode("utf-8"), args.out)
    return EXIT_OK


def _single_region(collection, region: str | None, flag: str):
    if region is not None:
        if region not in collection:
            raise EpicurveError(f"region {region!r} not found in the input")
        return collection[region]
    if len(collection) == 1:
        return next(iter(collection.values()))
    raise _UsageError(
        f"epicurve: error: {flag} is required when the input has several "
        f"regions ({', '.join(collection)})"
    )


def _cmd_fit(args) -> int:
    collection = parse_timeseries(_read_bytes(args.input))
    series = _single_region(collection, args.region, "--region")
    cumulative = series.total_confirmed
    if args.model == "logistic":
        fit = fit_logistic(cumulative)
    else:
        if args.population is None:
            raise _UsageError(
                "epicurve fit: error: --population is required for --model sir"
            )
        fit = fit_sir(cumulative, population=args.population)
    _write_output(fit_report_json(fit, horizon=args.horizon).encode("utf-8"),
                  args.out)
    return EXIT_OK


def _cmd_stats(args) -> int:
    collection = parse_timeseries(_read_bytes(args.input))
    series = _single_region(collection, args.region, "--region")
    _write_output(summary_table_csv(series).encode("utf-8"), args.out)
    return EXIT_OK


def _cmd_plot(args) -> int:
    spec = chart_spec_from_json(_read_bytes(args.spec))
    collection = parse_timeseries(_read_bytes(args.input))
    svg = render_chart(spec, collection)
    for finding in lint_chart(spec, collection):
        print(f"{finding.severity} {finding.rule_id} [{finding.subject}]: "
              f"{finding.message}", file=sys.stderr)
    _write_output(svg, args.out)
    return EXIT_OK


def _cmd_lint(args) -> int:
    spec = chart_spec_from_json(_read_bytes(args.spec))
    collection = parse_timeseries(_read_bytes(args.input))
    findings = lint_chart(spec, collection)
    sys.stdout.write(findings_json(findings))
    if any(f.severity == "warning" for f in findings):
        return EXIT_LINT
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except EpicurveError as exc:
        print(f"epicurve: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
