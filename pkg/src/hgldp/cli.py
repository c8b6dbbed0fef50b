"""Command-line benchmark harness.

Subcommands: ``run`` (experiment matrix to CSV), ``topk`` (one session),
``gen`` (synthetic dataset to file), ``verify`` (privacy tables and invariant
checks; exits nonzero on any failure).
"""

from __future__ import annotations

import math
import sys

import click
import numpy as np

from . import verify as verify_mod
from .datasets import StreamSpec, generate_stream, load_transactions, save_stream
from .experiments import MatrixConfig, run_experiment_matrix
from .metrics import ExactOracle, aae, logical_memory_bytes, ndcg, precision
from .protocol import run_session
from .schemes import SCHEME_NAMES, SchemeConfig

_SYNTHETIC = ("normal", "exponential", "zipf")


def _dataset_spec(dataset: str, domain: int, n: int) -> StreamSpec:
    if dataset == "normal":
        return StreamSpec("normal", domain, n, sigma=5.0)
    if dataset == "exponential":
        return StreamSpec("exponential", domain, n, sigma=10.0)
    if dataset == "zipf":
        return StreamSpec("zipf", domain, n)
    return StreamSpec("file", domain, n, path=dataset)


def _resolve_stream(dataset: str, domain: int, n: int, seed: int):
    if dataset in _SYNTHETIC:
        spec = _dataset_spec(dataset, domain, n)
        return generate_stream(spec, seed), domain, spec
    events, discovered = load_transactions(dataset, limit=n if n else None)
    d = max(discovered, domain)
    return events, d, StreamSpec("file", d, len(events), path=dataset)


def _parse_epsilon(value: str) -> float:
    if value.lower() in ("inf", "none", "noiseless"):
        return math.inf
    return float(value)


common_options = [
    click.option("--epsilon", default="1.0", show_default=True,
                 help="Privacy budget per event ('inf' disables noise)."),
    click.option("--eps-split", default=0.5, show_default=True, type=float,
                 help="epsilon1/epsilon2 ratio for the budget-division schemes."),
    click.option("--k", default=20, show_default=True, type=int,
                 help="Number of heavy hitters to track."),
    click.option("--light-len", default=None, type=int,
                 help="Light-part length (default 5 for cnr, else 0)."),
    click.option("--decay-base", default=1.08, show_default=True, type=float),
    click.option("--domain", default=1000, show_default=True, type=int,
                 help="Domain size d for synthetic streams."),
    click.option("--dataset", default="normal", show_default=True,
                 help="normal | exponential | zipf | PATH to a transaction file."),
    click.option("--n", default=100_000, show_default=True, type=int,
                 help="Stream length (synthetic) or event cap (file)."),
    click.option("--warmup-frac", default=0.01, show_default=True, type=float),
    click.option("--gamma-h", default="auto", show_default=True,
                 help="Hot-event fraction for BDR/CNR debias: 'auto' or a real."),
    click.option("--seed", default=0, show_default=True, type=int),
    click.option("--dsr-consistent-debias", is_flag=True, default=False,
                 help="Use the mode-consistent DSR debias constants."),
]


def _with_options(options):
    def wrap(fn):
        for option in reversed(options):
            fn = option(fn)
        return fn
    return wrap


@click.group()
def main():
    """Bounded-memory heavy hitter detection under local differential privacy."""


@main.command()
@_with_options(common_options)
@click.option("--scheme", "schemes", multiple=True,
              type=click.Choice(SCHEME_NAMES), default=("bgr", "dsr", "bdr", "cnr"),
              show_default=True, help="May be given several times.")
@click.option("--epsilon-grid", default=None,
              help="Comma-separated grid overriding --epsilon for the matrix.")
@click.option("--trials", default=20, show_default=True, type=int)
@click.option("--workers", default=1, show_default=True, type=int)
@click.option("--out", default="results.csv", show_default=True,
              type=click.Path(dir_okay=False))
def run(schemes, epsilon_grid, trials, workers, out, **opts):
    """Run the experiment matrix and write one CSV row per (cell, trial)."""
    if epsilon_grid:
        epsilons = tuple(_parse_epsilon(tok) for tok in epsilon_grid.split(","))
    else:
        epsilons = (_parse_epsilon(opts["epsilon"]),)
    gamma = None if opts["gamma_h"] == "auto" else float(opts["gamma_h"])
    matrix = MatrixConfig(
        schemes=schemes,
        epsilons=epsilons,
        datasets={opts["dataset"]: _dataset_spec(opts["dataset"], opts["domain"],
                                                 opts["n"])},
        k=opts["k"], trials=trials, seed=opts["seed"],
        eps_split=opts["eps_split"], warmup_frac=opts["warmup_frac"],
        gamma_h=gamma, light_len=opts["light_len"],
        decay_base=opts["decay_base"],
        dsr_consistent_debias=opts["dsr_consistent_debias"],
        workers=workers,
    )
    rows = run_experiment_matrix(matrix, out)
    means = [r for r in rows if r.stat == "mean"]
    click.echo(f"wrote {len(rows)} rows to {out}")
    for row in means:
        click.echo(
            f"  {row.dataset} {row.scheme} eps={row.epsilon}: "
            f"precision={row.precision:.3f} ndcg={row.ndcg:.3f} aae={row.aae:.1f}")


@main.command()
@_with_options(common_options)
@click.option("--scheme", default="cnr", show_default=True,
              type=click.Choice(SCHEME_NAMES))
def topk(scheme, **opts):
    """Run one collection session and print the reported top-k."""
    epsilon = _parse_epsilon(opts["epsilon"])
    stream, domain, _ = _resolve_stream(opts["dataset"], opts["domain"],
                                        opts["n"], opts["seed"])
    gamma = None if opts["gamma_h"] == "auto" else float(opts["gamma_h"])
    cfg = SchemeConfig(
        scheme=scheme, epsilon=epsilon, domain_size=domain, k=opts["k"],
        eps_split=opts["eps_split"], light_len=opts["light_len"],
        decay_base=opts["decay_base"], warmup_frac=opts["warmup_frac"],
        gamma_h=gamma,
        dsr_consistent_debias=opts["dsr_consistent_debias"],
    )
    result = run_session(stream, cfg, opts["seed"])
    oracle = ExactOracle(stream, opts["k"], domain)
    click.echo(f"scheme={scheme} epsilon={epsilon} events={result.report.num_events}")
    click.echo(f"precision={precision(result.report, oracle):.3f} "
               f"ndcg={ndcg(result.report, oracle):.3f} "
               f"aae={aae(result.report, oracle):.1f}")
    click.echo(f"uplink={result.traffic.uplink_bytes}B "
               f"downlink={result.traffic.downlink_bytes}B "
               f"state={logical_memory_bytes(result.scheme, domain)}B")
    click.echo(f"{'rank':>4} {'item':>8} {'estimate':>12} {'true':>8}")
    for rank, (item, est) in enumerate(result.report.entries, start=1):
        click.echo(f"{rank:>4} {item:>8} {est:>12.1f} {oracle.true_count(item):>8}")


@main.command()
@click.option("--dataset", default="normal", show_default=True,
              type=click.Choice(_SYNTHETIC))
@click.option("--domain", default=1000, show_default=True, type=int)
@click.option("--n", default=100_000, show_default=True, type=int)
@click.option("--sigma", default=None, type=float,
              help="Std dev (default 5 for normal, 10 for exponential).")
@click.option("--zipf-s", default=1.2, show_default=True, type=float)
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--out", required=True, type=click.Path(dir_okay=False))
def gen(dataset, domain, n, sigma, zipf_s, seed, out):
    """Generate a synthetic dataset, one item id per line."""
    if sigma is None:
        sigma = 5.0 if dataset == "normal" else 10.0
    spec = StreamSpec(dataset, domain, n, sigma=sigma, zipf_s=zipf_s)
    events = generate_stream(spec, seed)
    save_stream(out, events)
    counts = np.bincount(events, minlength=domain)
    click.echo(f"wrote {n} events over domain {domain} to {out} "
               f"(max count {counts.max()})")


@main.command()
@click.option("--quick/--full", default=False,
              help="Quick mode trims the sampling-based checks.")
def verify(quick):
    """Run the privacy-table and invariant suite; nonzero exit on failure."""
    failures = verify_mod.run_all(quick=quick, echo=click.echo)
    if failures:
        click.echo(f"{failures} check(s) FAILED")
        sys.exit(1)
    click.echo("all checks passed")


if __name__ == "__main__":
    main()
