"""Command-line harness: `entropia sieve|report|game`.

Exit codes: 0 when every check in the emitted report is true, 2 when a
check fails, 1 on usage or domain errors.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

from . import experiments, primes
from .coding import Distribution, load_distribution_csv, source_coding_trial
from .errors import CorruptCacheError, DomainError
from .game import load_alphabet, simulate_plays
from .report import ExperimentReport

EXPERIMENT_NAMES = (
    "erdos-euclid",
    "chebyshev",
    "prime-entropy",
    "prime-coding",
    "source-density",
    "pnt",
    "predictor",
    "erdos-kac",
    "lindeberg",
    "hardy-ramanujan",
    "riemann",
    "lz-primes",
    "source-coding",
)

DEFAULT_N = 10**6
DEFAULT_SEED = 42
DEFAULT_EPSILON = 1.0


@dataclass
class RunConfig:
    experiment: str
    n_limit: int = DEFAULT_N
    sample_size: int | None = None
    epsilon: float = DEFAULT_EPSILON
    seed: int = DEFAULT_SEED
    output_format: str = "json"
    cache_path: str | None = None
    out_dir: str | None = None
    dist_path: str | None = None
    trace_path: str | None = None

    def __post_init__(self):
        if self.n_limit < 2:
            raise DomainError(f"--n must be >= 2, got {self.n_limit}")


def _default_distribution() -> Distribution:
    return Distribution.from_weights(("a", "b", "c", "d"), (0.4, 0.3, 0.2, 0.1))


def _load_trace(config: RunConfig, table: primes.PrimeTable) -> experiments.PredictorTrace:
    if config.trace_path:
        values = [int(line) for line in Path(config.trace_path).read_text().split()]
        return experiments.PredictorTrace(predictions=tuple(values), horizon=config.n_limit)
    rng = np.random.default_rng(config.seed)
    count = min(config.sample_size or 100, config.n_limit)
    picks = rng.choice(config.n_limit, size=count, replace=False) + 1
    return experiments.PredictorTrace(predictions=tuple(int(v) for v in picks), horizon=config.n_limit)


def _obtain_table(config: RunConfig, log) -> primes.PrimeTable:
    n = config.n_limit
    path = config.cache_path
    if path and os.path.exists(path):
        try:
            table = primes.load_table(path)
            if table.limit >= n:
                log(f"cache hit: {path} (limit {table.limit})")
                return table
            log(f"cache at {path} only covers {table.limit} < {n}; re-sieving")
        except CorruptCacheError as exc:
            log(f"warning: unreadable cache ({exc}); re-sieving")
    table = primes.build_table(n)
    if path:
        primes.save_table(table, path)
        log(f"sieve cached to {path}")
    return table


def _run_experiment(config: RunConfig, log) -> ExperimentReport:
    name = config.experiment
    n = config.n_limit

    if name == "source-coding":
        dist = (
            load_distribution_csv(config.dist_path)
            if config.dist_path
            else _default_distribution()
        )
        return source_coding_trial(dist, config.sample_size or 10**5, config.seed)

    table = _obtain_table(config, log)
    if name == "erdos-euclid":
        return experiments.erdos_euclid_report(table, n)
    if name == "chebyshev":
        return experiments.chebyshev_report(table, n)
    if name == "prime-entropy":
        return experiments.prime_entropy_corollary(table, n)
    if name == "prime-coding":
        return experiments.prime_coding_report(table, n)
    if name == "source-density":
        return experiments.source_density_report(table, n)
    if name == "pnt":
        return experiments.pnt_report(table, n)
    if name == "predictor":
        return experiments.predictor_tpr(_load_trace(config, table), table)
    if name == "erdos-kac":
        sample = config.sample_size if config.sample_size else n
        _, report = experiments.erdos_kac_sample(table, n, sample, config.seed)
        return report
    if name == "lindeberg":
        return experiments.lindeberg_report(table, n)
    if name == "hardy-ramanujan":
        return experiments.hardy_ramanujan_census(table, n, config.epsilon)
    if name == "riemann":
        return experiments.riemann_report(table, n)
    if name == "lz-primes":
        return experiments.lz_primes_report(table, n, config.seed)
    raise DomainError(f"unknown experiment {name!r}")


def _emit(report: ExperimentReport, config: RunConfig, log) -> None:
    out_dir = Path(config.out_dir or os.environ.get("ENTROPIA_OUT") or "reports")
    if config.output_format == "json":
        path = report.write_json(out_dir / f"{report.name}.json")
        log(f"report written to {path}")
    else:
        directory = report.write_csv_dir(out_dir / report.name)
        log(f"report written to {directory}/")
    for key in sorted(report.checks):
        log(f"  check {key}: {'PASS' if report.checks[key] else 'FAIL'}")


def demo_alphabet_path() -> Path:
    """Path of the bundled 1024-word demo corpus."""
    return Path(str(resources.files("entropia").joinpath("data/words1024.csv")))


def _int_arg(text: str) -> int:
    return int(float(text))


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="entropia")
    sub = parser.add_subparsers(dest="command", required=True)

    sieve = sub.add_parser("sieve", help="build a prime sieve and cache it")
    sieve.add_argument("--n", type=_int_arg, default=DEFAULT_N)
    sieve.add_argument("--cache", required=True, help="cache file path (PBIT1 format)")

    report = sub.add_parser("report", help="run one experiment and write its report")
    report.add_argument("experiment", choices=EXPERIMENT_NAMES)
    report.add_argument("--n", type=_int_arg, default=DEFAULT_N)
    report.add_argument("--sample", type=_int_arg, default=None)
    report.add_argument("--epsilon", type=float, default=DEFAULT_EPSILON)
    report.add_argument("--seed", type=int, default=DEFAULT_SEED)
    report.add_argument("--format", choices=("json", "csv"), default="json")
    report.add_argument("--cache", default=None)
    report.add_argument("--out", default=None, help="output directory (or $ENTROPIA_OUT)")
    report.add_argument("--dist", default=None, help="symbol,weight CSV for source-coding")
    report.add_argument("--trace", default=None, help="prediction list file for predictor")

    game = sub.add_parser("game", help="interactive 20-questions service")
    game_sub = game.add_subparsers(dest="game_command", required=True)
    serve = game_sub.add_parser("serve", help="serve the game over HTTP")
    serve.add_argument("--alphabet", default=None, help="symbol,weight CSV (default: bundled corpus)")
    serve.add_argument("--port", type=int, default=8040)
    serve.add_argument("--ui-dir", default=None, help="static UI directory to serve at /")

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1

    log = lambda msg: print(msg, flush=True)  # noqa: E731

    try:
        if args.command == "sieve":
            config = RunConfig(experiment="sieve", n_limit=args.n, cache_path=args.cache)
            _obtain_table(config, log)
            return 0

        if args.command == "report":
            config = RunConfig(
                experiment=args.experiment,
                n_limit=args.n,
                sample_size=args.sample,
                epsilon=args.epsilon,
                seed=args.seed,
                output_format=args.format,
                cache_path=args.cache,
                out_dir=args.out,
                dist_path=args.dist,
                trace_path=args.trace,
            )
            report = _run_experiment(config, log)
            _emit(report, config, log)
            return 0 if report.all_checks_pass else 2

        if args.command == "game":
            from .server import make_server

            alphabet = args.alphabet or demo_alphabet_path()
            deck = load_alphabet(alphabet)
            ui_dir = args.ui_dir
            if ui_dir is None:
                candidate = Path(__file__).resolve().parents[2] / "frontend" / "dist"
                ui_dir = candidate if candidate.is_dir() else None
            server = make_server(deck, port=args.port, ui_dir=ui_dir, quiet=False)
            host, port = server.server_address
            log(f"serving 20 questions on http://{host}:{port} (alphabet: {alphabet})")
            try:
                server.serve_forever()
            except KeyboardInterrupt:
                pass
            finally:
                server.server_close()
            return 0
    except (DomainError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 1


if __name__ == "__main__":
    raise SystemExit(main())
