"""Command-line front end: simulate | estimate | evaluate | bench | coherence."""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys

import numpy as np

from . import bench as bench_mod
from . import fileio
from .errors import DataError, NumericalError, SpecthreshError
from .estimator import aggregate_coherence_graph
from .metrics import EvaluationReport, rmise, support_scores
from .model import simulate
from .tuning import default_span

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_NUMERICAL = 4


def _jobs_default() -> int:
    env = os.environ.get("SPECTHRESH_JOBS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return 1


def cmd_simulate(args) -> int:
    model = fileio.read_model(args.model)
    x = simulate(model, args.n, burn_in=args.burn_in, seed=args.seed)
    fileio.write_series(x, args.out)
    return EXIT_OK


def _resolve_span(args, n: int) -> int:
    if args.m is not None:
        if 2 * args.m + 1 > n:
            raise DataError(f"2m+1 = {2 * args.m + 1} exceeds n = {n}")
        return args.m
    return default_span(n, args.span_rule)


def cmd_estimate(args) -> int:
    x = fileio.read_series(args.series)
    m = _resolve_span(args, x.n)
    method = bench_mod.canonical_method(args.method)
    if method in bench_mod.THRESHOLD_METHODS and args.fixed_lambda is not None:
        from .estimator import ThresholdOperator, threshold_estimate

        op = ThresholdOperator(method)
        lambdas = {j: args.fixed_lambda for j in range(0, x.n // 2 + 1)}
        est = threshold_estimate(x, m, op, lambdas)
    else:
        est = bench_mod.estimate_by_method(
            method, x, m, grid_size=args.grid_size, n_splits=args.n_splits, seed=args.seed
        )
    fileio.write_estimate(est, args.out)
    return EXIT_OK


def cmd_evaluate(args) -> int:
    model = fileio.read_model(args.model)
    rows = []
    for est_path in args.estimates:
        est = fileio.read_estimate(est_path)
        truth = bench_mod.truth_spectra(model, est.n)
        report = EvaluationReport(method=est.method, rmise=rmise(est, truth))
        if est.method in bench_mod.THRESHOLD_METHODS:
            scores = support_scores(est, truth)
            report.precision = scores.precision
            report.recall = scores.recall
            report.f1 = scores.f1
        rows.extend(fileio.report_rows(report, est.p, est.n, est.m))
    fileio.write_report_csv(rows, args.out)
    return EXIT_OK


def cmd_bench(args) -> int:
    with open(args.spec) as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise DataError(f"{args.spec}: {exc}") from None
    spec = bench_mod.BenchmarkSpec.from_dict(obj)
    bench_mod.run_benchmark(spec, args.out, jobs=args.jobs)
    return EXIT_OK


def cmd_coherence(args) -> int:
    est = fileio.read_estimate(args.estimate)
    graph = aggregate_coherence_graph(est)
    names = est.channel_names or tuple(f"x{i}" for i in range(est.p))
    with open(args.out, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["", *names])
        for name, row in zip(names, graph):
            writer.writerow([name, *(format(v, ".17g") for v in row)])
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="specthresh",
        description="Spectral density estimation by thresholding averaged periodograms.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="simulate a VARMA sample path")
    sim.add_argument("--model", required=True, help="model JSON file")
    sim.add_argument("--n", type=int, required=True, help="sample length")
    sim.add_argument("--burn-in", type=int, default=None)
    sim.add_argument("--seed", type=int, default=0)
    sim.add_argument("--out", required=True, help="output series CSV")
    sim.set_defaults(func=cmd_simulate)

    estp = sub.add_parser("estimate", help="estimate the spectral density of a series")
    estp.add_argument("--series", required=True, help="input series CSV")
    estp.add_argument(
        "--method", required=True,
        choices=["smoothed", "shrinkage", "hard", "lasso", "alasso"],
    )
    estp.add_argument("--m", type=int, default=None, help="smoothing half-span")
    estp.add_argument(
        "--span-rule", choices=["ma_like", "ar_like"], default="ma_like",
        help="span heuristic when --m is not given",
    )
    estp.add_argument(
        "--lambda", dest="fixed_lambda", type=float, default=None,
        help="fixed threshold; default is per-frequency sample-splitting",
    )
    estp.add_argument("--grid-size", type=int, default=20)
    estp.add_argument("--n-splits", type=int, default=1)
    estp.add_argument("--seed", type=int, default=0)
    estp.add_argument("--out", required=True, help="output estimate JSON")
    estp.set_defaults(func=cmd_estimate)

    ev = sub.add_parser("evaluate", help="score estimates against a model's truth")
    ev.add_argument("--model", required=True, help="model JSON file")
    ev.add_argument("--out", required=True, help="output report CSV")
    ev.add_argument("estimates", nargs="+", help="estimate JSON files")
    ev.set_defaults(func=cmd_evaluate)

    be = sub.add_parser("bench", help="run the simulation benchmark grid")
    be.add_argument("--spec", required=True, help="benchmark spec JSON")
    be.add_argument("--out", required=True, help="output directory")
    be.add_argument("--jobs", type=int, default=_jobs_default())
    be.set_defaults(func=cmd_bench)

    co = sub.add_parser("coherence", help="aggregate coherence graph of an estimate")
    co.add_argument("--estimate", required=True, help="estimate JSON file")
    co.add_argument("--out", required=True, help="output adjacency CSV")
    co.set_defaults(func=cmd_coherence)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NumericalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (SpecthreshError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
