"""
Command-line front end.

    betatrix sample   --ensemble hermite --beta 2 --n 4 --count 2 --seed 7
    betatrix verify   --suite vandermonde --seed 3
    betatrix moments  --ensemble hermite --n 2 --det-power 2
    betatrix density  --ensemble hermite --beta 1 --n 50 --samples 1000 --bins 40 --out density.csv

Exit codes: 0 success, 1 failed checks, 2 invalid parameters, 3 resource cap exceeded.
"""
from __future__ import annotations

import argparse
import logging
import sys

import numpy as np

from betatrix.buffers import DataBuffer
from betatrix.errors import BetatrixError, ParameterError
from betatrix.montecarlo import MonteCarloConfig, run_monte_carlo
from betatrix.recorders import STDOUT, CsvFileRecorder, MatrixJsonRecorder, write_json
from betatrix.session import RunRecord, default_seed
from betatrix.sources.ensembles import GaussianEnsemble, HermiteEnsemble, LaguerreEnsemble
from betatrix.sources.streams import RandomStream
from betatrix.spectral import EIGENVALUE_METHODS
from betatrix.statistics import Eigenvalues, Tridiagonalize, compute_statistics
from betatrix.symbolic import DEFAULT_MONOMIAL_CAP, ExpectedCharPoly, MomentQuery, evaluate_query
from betatrix.verify import SUITES, SuiteConfig, run_suite

logger = logging.getLogger(__name__)

SAMPLE_ENSEMBLES = ("hermite", "laguerre", "goe", "gue")


def _require(args, *names):
    missing = [f"--{name.replace('_', '-')}" for name in names if getattr(args, name) is None]
    if missing:
        raise ParameterError(f"{args.ensemble} needs {', '.join(missing)}")


def make_source(args):
    """The ensemble source, and the statistics that reduce its samples to tridiagonal form"""
    if args.ensemble == "hermite":
        _require(args, "beta", "n")
        return HermiteEnsemble(args.beta, args.n), []
    elif args.ensemble == "laguerre":
        _require(args, "beta", "m", "a")
        return LaguerreEnsemble(args.beta, args.m, args.a), []
    _require(args, "n")
    return GaussianEnsemble(args.ensemble.upper(), args.n), [Tridiagonalize("matrix", name="T")]


def cmd_sample(args, seed: int) -> int:
    source, statistics = make_source(args)
    prefix = "T_" if statistics else ""
    if args.eigenvalues:
        statistics.append(Eigenvalues(f"{prefix}diag", f"{prefix}subdiag", name="eig", method=args.method))
    params = {k: v for k, v in vars(args).items() if k not in ("func", "log_level")}
    record = RunRecord.create("sample", params, seed)
    data = compute_statistics(source.sample(RandomStream(seed), args.count), statistics)

    if args.eigenvalues and args.format == "json":
        if args.out != STDOUT:
            record.add_output(args.out)
        write_json(args.out, {"run_record": record.finish().to_json(), "eigenvalues": data["eig"].tolist()})
        return 0
    if args.format == "csv":
        keys = ("eig",) if args.eigenvalues else (f"{prefix}diag", f"{prefix}subdiag")
        recorder = CsvFileRecorder(args.out, record)
        recorder.write(data.select(*keys))
    elif args.ensemble == "laguerre":
        recorder = MatrixJsonRecorder(args.out, record, kind="bidiagonal", prefix="factor_")
        recorder.write(data)
    else:
        recorder = MatrixJsonRecorder(args.out, record, kind="tridiagonal", prefix=prefix)
        recorder.write(data)
    recorder.stop()
    return 0


def cmd_verify(args, seed: int) -> int:
    cfg = SuiteConfig(
        seed=seed, quick=args.quick, workers=args.workers, beta=args.beta, n=args.n, samples=args.samples
    )
    record = RunRecord.create("verify", {"suite": args.suite, **vars(cfg)}, seed)
    report = run_suite(args.suite, cfg)
    if args.out != STDOUT:
        record.add_output(args.out)
    write_json(args.out, {"run_record": record.finish().to_json(), "report": report.to_json()})
    for check in report.failures:
        logger.error(f"FAILED {check.name}: {check.statistic} > {check.threshold}")
    return 0 if report.passed else 1


def _moment_query(args) -> MomentQuery:
    size = args.n if args.ensemble == "hermite" else args.m
    if size is None:
        raise ParameterError(f"{args.ensemble} moments need --{'n' if args.ensemble == 'hermite' else 'm'}")
    if args.charpoly:
        return MomentQuery(args.ensemble, size, "charpoly", cap=args.cap)
    elif args.elementary is not None:
        return MomentQuery(args.ensemble, size, "elementary", args.elementary, cap=args.cap)
    return MomentQuery(args.ensemble, size, "det", args.det_power, cap=args.cap)


def cmd_moments(args, seed: int) -> int:
    query = _moment_query(args)
    result = evaluate_query(query)
    value = None
    if args.eval_beta is not None:
        value = result.evaluate(args.eval_beta, args.eval_a)

    if args.format == "text":
        text = str(result) if value is None else repr(value)
        if args.out == STDOUT:
            print(text)
        else:
            with open(args.out, "w") as FILE:
                FILE.write(text + "\n")
        return 0
    record = RunRecord.create("moments", {k: v for k, v in vars(args).items() if k not in ("func",)}, seed)
    if args.out != STDOUT:
        record.add_output(args.out)
    payload = {
        "run_record": record.finish().to_json(),
        "query": {"ensemble": query.ensemble, "size": query.size, "target": query.target, "order": query.order},
        "result": result.to_json(),
        "text": str(result),
    }
    if value is not None:
        payload["value"] = value
        payload["evaluated_at"] = {"beta": args.eval_beta, "a": args.eval_a}
    payload["kind"] = "charpoly" if isinstance(result, ExpectedCharPoly) else "polynomial"
    write_json(args.out, payload)
    return 0


def density_histogram(source, statistics, samples: int, seed: int, workers: int, bins: int) -> DataBuffer:
    """
    Pooled eigenvalue histogram over [min, max] of all sampled eigenvalues. The range comes from a
    first pass over the same seeded run, so no samples are retained.
    """
    if bins < 1:
        raise ParameterError(f"Bin count must be positive, got {bins}")
    first = run_monte_carlo(MonteCarloConfig(source, samples, seed, workers, statistics, collect=("eig",)))
    lo, hi = float(np.min(first["eig"].minimum)), float(np.max(first["eig"].maximum))
    if hi <= lo:
        hi = lo + 1.0
    edges = np.linspace(lo, hi, bins + 1)
    second = run_monte_carlo(MonteCarloConfig(source, samples, seed, workers, statistics, histograms={"eig": edges}))
    counts = second["eig"].counts
    widths = np.diff(edges)
    return DataBuffer(
        data={
            "bin_left": edges[:-1],
            "bin_right": edges[1:],
            "count": counts,
            "density": counts / (counts.sum() * widths),
        }
    )


def cmd_density(args, seed: int) -> int:
    source, statistics = make_source(args)
    prefix = "T_" if statistics else ""
    statistics.append(Eigenvalues(f"{prefix}diag", f"{prefix}subdiag", name="eig", method=args.method))
    record = RunRecord.create("density", {k: v for k, v in vars(args).items() if k not in ("func",)}, seed)
    histogram = density_histogram(source, statistics, args.samples, seed, args.workers, args.bins)
    recorder = CsvFileRecorder(args.out, record)
    recorder.write(histogram)
    recorder.stop()
    return 0


def _add_ensemble_args(parser, ensembles):
    parser.add_argument("--ensemble", choices=ensembles, required=True)
    parser.add_argument("--beta", type=float)
    parser.add_argument("--n", type=int, help="matrix size (hermite, goe, gue)")
    parser.add_argument("--m", type=int, help="matrix size (laguerre)")
    parser.add_argument("--a", type=float, help="Laguerre parameter, must exceed (beta/2)(m-1)")


def _global_options(top_level: bool) -> argparse.ArgumentParser:
    """--seed and --log-level, accepted before or after the subcommand"""
    options = argparse.ArgumentParser(add_help=False)
    # below the subcommand an omitted option must not overwrite the top-level value
    level_default, seed_default = ("WARNING", None) if top_level else (argparse.SUPPRESS, argparse.SUPPRESS)
    options.add_argument("--log-level", default=level_default, choices=["DEBUG", "INFO", "WARNING", "ERROR"])
    options.add_argument("--seed", type=int, default=seed_default, help="defaults to $BETATRIX_SEED, else 0")
    return options


def build_parser() -> argparse.ArgumentParser:
    from betatrix import __version__

    parser = argparse.ArgumentParser(
        prog="betatrix", description="Tridiagonal and bidiagonal β-ensembles", parents=[_global_options(True)]
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    common = [_global_options(False)]

    sample = sub.add_parser("sample", parents=common, help="sample matrices or their eigenvalues")
    _add_ensemble_args(sample, SAMPLE_ENSEMBLES)
    sample.add_argument("--count", type=int, default=1)
    sample.add_argument("--eigenvalues", action="store_true")
    sample.add_argument("--method", choices=EIGENVALUE_METHODS, default="bisection")
    sample.add_argument("--format", choices=["json", "csv"], default="json")
    sample.add_argument("--out", default=STDOUT)
    sample.set_defaults(func=cmd_sample)

    verify = sub.add_parser("verify", parents=common, help="run a verification suite")
    verify.add_argument("--suite", choices=["all", *SUITES], required=True)
    verify.add_argument("--quick", action="store_true", help="10x fewer samples, 2x looser statistical thresholds")
    verify.add_argument("--workers", type=int, default=1)
    verify.add_argument("--beta", type=float)
    verify.add_argument("--n", type=int)
    verify.add_argument("--samples", type=int)
    verify.add_argument("--out", default=STDOUT)
    verify.set_defaults(func=cmd_verify)

    moments = sub.add_parser("moments", parents=common, help="exact moments as polynomials in s = beta/2 and a")
    moments.add_argument("--ensemble", choices=["hermite", "laguerre"], required=True)
    moments.add_argument("--n", type=int)
    moments.add_argument("--m", type=int)
    target = moments.add_mutually_exclusive_group(required=True)
    target.add_argument("--det-power", type=int)
    target.add_argument("--elementary", type=int)
    target.add_argument("--charpoly", action="store_true")
    moments.add_argument("--eval-beta", type=float)
    moments.add_argument("--eval-a", type=float)
    moments.add_argument("--cap", type=int, default=DEFAULT_MONOMIAL_CAP)
    moments.add_argument("--format", choices=["text", "json"], default="text")
    moments.add_argument("--out", default=STDOUT)
    moments.set_defaults(func=cmd_moments)

    density = sub.add_parser("density", parents=common, help="pooled eigenvalue histogram as CSV")
    _add_ensemble_args(density, SAMPLE_ENSEMBLES)
    density.add_argument("--samples", type=int, default=1000)
    density.add_argument("--bins", type=int, default=50)
    density.add_argument("--workers", type=int, default=1)
    density.add_argument("--method", choices=EIGENVALUE_METHODS, default="bisection")
    density.add_argument("--out", default=STDOUT)
    density.set_defaults(func=cmd_density)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=args.log_level, stream=sys.stderr, format="%(asctime)s %(levelname)s %(name)s: %(message)s"
    )
    try:
        seed = args.seed if args.seed is not None else default_seed()
        return args.func(args, seed)
    except BetatrixError as e:
        logger.error(f"{type(e).__name__}: {e}")
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code


__all__ = ["main", "build_parser", "make_source", "density_histogram"]
