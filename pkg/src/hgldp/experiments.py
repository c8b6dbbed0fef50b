"""Experiment matrix runner: schemes x budgets x datasets x trials -> CSV.

Every cell of the matrix runs with paired randomness: trial t of every
scheme and every epsilon shares one stream seed and one session seed, so
scheme comparisons are differences on identical data. Cell failures are
recorded in the CSV's error column and the run continues.
"""

from __future__ import annotations

import csv
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Optional, Sequence

from .core import RngHandle
from .datasets import StreamSpec, generate_stream
from .metrics import ExactOracle, aae, logical_memory_bytes, ndcg, precision
from .protocol import run_session
from .schemes import SchemeConfig

CSV_COLUMNS = [
    "scheme", "epsilon", "eps_split", "k", "dataset", "trial", "seed",
    "stat", "precision", "ndcg", "aae", "uplink_bytes", "downlink_bytes",
    "state_bytes", "wall_time_s", "error",
]


@dataclass
class MetricsRow:
    scheme: str
    epsilon: float
    eps_split: float
    k: int
    dataset: str
    trial: Optional[int]
    seed: Optional[int]
    stat: str = ""  # "", "mean", or "std"
    precision: Optional[float] = None
    ndcg: Optional[float] = None
    aae: Optional[float] = None
    uplink_bytes: Optional[float] = None
    downlink_bytes: Optional[float] = None
    state_bytes: Optional[float] = None
    wall_time_s: Optional[float] = None
    error: str = ""


@dataclass
class MatrixConfig:
    """One experiment grid.

    ``datasets`` maps a human-readable name to a StreamSpec. 20 trials per
    cell is the default, matching the repeat count the accuracy trends are
    averaged over.
    """

    schemes: Sequence[str] = ("bgr", "dsr", "bdr", "cnr")
    epsilons: Sequence[float] = (0.5, 1.0, 2.0, 3.0, 5.0)
    datasets: dict[str, StreamSpec] = field(default_factory=dict)
    k: int = 20
    trials: int = 20
    seed: int = 0
    eps_split: float = 0.5
    warmup_frac: float = 0.01
    gamma_h: Optional[float] = None
    light_len: Optional[int] = None
    decay_base: float = 1.08
    dsr_consistent_debias: bool = False
    workers: int = 1


def _stream_seed(master_seed: int, dataset: str, trial: int) -> int:
    return RngHandle(master_seed).spawn(f"stream:{dataset}:{trial}").seed


def _session_seed(master_seed: int, dataset: str, trial: int) -> int:
    # Shared by all (scheme, epsilon) cells on purpose: paired trials.
    return RngHandle(master_seed).spawn(f"session:{dataset}:{trial}").seed


def _run_cell_trial(args) -> MetricsRow:
    (matrix, scheme, epsilon, dataset_name, spec, trial) = args
    seed = _session_seed(matrix.seed, dataset_name, trial)
    row = MetricsRow(scheme=scheme, epsilon=epsilon, eps_split=matrix.eps_split,
                     k=matrix.k, dataset=dataset_name, trial=trial, seed=seed)
    try:
        stream = generate_stream(spec, _stream_seed(matrix.seed, dataset_name, trial))
        oracle = ExactOracle(stream, matrix.k, spec.domain_size)
        cfg = SchemeConfig(
            scheme=scheme, epsilon=epsilon, domain_size=spec.domain_size,
            k=matrix.k, eps_split=matrix.eps_split, light_len=matrix.light_len,
            decay_base=matrix.decay_base, warmup_frac=matrix.warmup_frac,
            gamma_h=matrix.gamma_h,
            dsr_consistent_debias=matrix.dsr_consistent_debias,
        )
        start = time.perf_counter()
        result = run_session(stream, cfg, seed)
        row.wall_time_s = time.perf_counter() - start
        row.precision = precision(result.report, oracle)
        row.ndcg = ndcg(result.report, oracle)
        row.aae = aae(result.report, oracle)
        row.uplink_bytes = result.traffic.uplink_bytes
        row.downlink_bytes = result.traffic.downlink_bytes
        row.state_bytes = logical_memory_bytes(result.scheme, spec.domain_size)
    except Exception as exc:  # recorded, not raised: the matrix keeps going
        row.error = f"{type(exc).__name__}: {exc}"
    return row


_AGG_FIELDS = ("precision", "ndcg", "aae", "uplink_bytes", "downlink_bytes",
               "state_bytes", "wall_time_s")


def _aggregate(cell_rows: list[MetricsRow]) -> list[MetricsRow]:
    good = [r for r in cell_rows if not r.error]
    if not good:
        return []
    base = replace(good[0], trial=None, seed=None, wall_time_s=None, error="")
    mean = replace(base, stat="mean")
    std = replace(base, stat="std")
    for name in _AGG_FIELDS:
        values = [getattr(r, name) for r in good if getattr(r, name) is not None]
        if not values:
            continue
        m = sum(values) / len(values)
        setattr(mean, name, m)
        if len(values) > 1:
            var = sum((v - m) ** 2 for v in values) / (len(values) - 1)
            setattr(std, name, math.sqrt(var))
        else:
            setattr(std, name, 0.0)
    return [mean, std]


def run_experiment_matrix(matrix: MatrixConfig,
                          out_path: Optional[str] = None) -> list[MetricsRow]:
    """Run every (scheme, epsilon, dataset) cell for ``matrix.trials`` trials.

    Returns per-trial rows followed by mean/std aggregate rows per cell, and
    optionally writes them as CSV.
    """
    if not matrix.datasets:
        raise ValueError("matrix has no datasets")
    tasks = [
        (matrix, scheme, epsilon, name, spec, trial)
        for name, spec in matrix.datasets.items()
        for scheme in matrix.schemes
        for epsilon in matrix.epsilons
        for trial in range(matrix.trials)
    ]
    if matrix.workers > 1:
        with ProcessPoolExecutor(max_workers=matrix.workers) as pool:
            trial_rows = list(pool.map(_run_cell_trial, tasks, chunksize=1))
    else:
        trial_rows = [_run_cell_trial(t) for t in tasks]

    rows: list[MetricsRow] = list(trial_rows)
    per_cell: dict[tuple, list[MetricsRow]] = {}
    for row in trial_rows:
        per_cell.setdefault((row.dataset, row.scheme, row.epsilon), []).append(row)
    for cell_rows in per_cell.values():
        rows.extend(_aggregate(cell_rows))

    if out_path is not None:
        write_rows_csv(rows, out_path)
    return rows


def write_rows_csv(rows: list[MetricsRow], path) -> None:
    with open(path, "wt", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=CSV_COLUMNS)
        writer.writeheader()
        for row in rows:
            record = {c: getattr(row, c) for c in CSV_COLUMNS}
            writer.writerow({k: ("" if v is None else v) for k, v in record.items()})
