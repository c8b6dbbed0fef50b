"""Accuracy metrics, the exact brute-force oracle, and logical memory accounting.

Precision counts how many reported ids are true top-k items; NDCG scores the
reported ordering; AAE measures count error over the true top-k. The oracle
is an exact full histogram of the stream, which is what the bounded-memory
schemes are trying to avoid maintaining.
"""

from __future__ import annotations

import math
from typing import Iterable

import numpy as np

from .heavyguardian import HeavyGuardian
from .mechanisms import GrrAggregator, HrAggregator, OlhAggregator
from .protocol import int_width
from .schemes import SchemeBase, TopKReport

# Fixed per-structure accounting overhead (decay base, lengths, event counter).
STRUCT_OVERHEAD_BYTES = 24
COUNT_BYTES = 8
LIGHT_COUNT_BYTES = 1


class ExactOracle:
    """Exact histogram over the full domain plus the derived true top-k.

    True ranking ties break toward the lower id, mirroring the structure's
    own tie-break, so rank-based metrics are deterministic.
    """

    def __init__(self, stream, k: int, domain_size: int | None = None):
        stream = np.asarray(stream, dtype=np.int64)
        if domain_size is None:
            domain_size = int(stream.max()) + 1 if len(stream) else 1
        self.domain_size = domain_size
        self.k = k
        self.n = len(stream)
        self.counts = np.bincount(stream, minlength=domain_size)
        order = np.lexsort((np.arange(domain_size), -self.counts))
        self.true_topk = [(int(i), int(self.counts[i])) for i in order[:k]]
        self.rank = {item: r + 1 for r, (item, _) in enumerate(self.true_topk)}

    def true_count(self, item: int) -> int:
        return int(self.counts[item]) if 0 <= item < self.domain_size else 0

    def hot_fraction(self) -> float:
        """Fraction of stream events whose item is a true top-k item."""
        return sum(c for _, c in self.true_topk) / self.n if self.n else 0.0


def _report_entries(report) -> list[tuple[int, float]]:
    if isinstance(report, TopKReport):
        return list(report.entries)
    return [(int(i), float(c)) for i, c in report]


def precision(report, oracle: ExactOracle) -> float:
    """|reported ids  intersect  true top-k| / k."""
    ids = {i for i, _ in _report_entries(report)}
    return len(ids & set(oracle.rank)) / oracle.k


def _position_discount(i: int) -> float:
    # Literal discount: position i >= 2 is divided by log2(i), so both the
    # first and second entries are undiscounted. Isolated here so the common
    # log2(i + 1) variant is a one-line change.
    return 1.0 if i == 1 else math.log2(i)


def ndcg(report, oracle: ExactOracle) -> float:
    """Ranking quality of the reported top-k against the true top-k.

    A reported item that is a true top-k item at position i earns relevance
    rel = |k - |true rank - reported rank||; any other item earns 0. The
    discounted sum rel_1 + sum_{i>=2} rel_i / log2(i) is normalized by the
    ideal list's value, so 1.0 means an exact ordered match.
    """
    entries = _report_entries(report)
    k = oracle.k
    dcg = 0.0
    for i, (item, _) in enumerate(entries[:k], start=1):
        true_rank = oracle.rank.get(item)
        if true_rank is None:
            continue
        rel = abs(k - abs(true_rank - i))
        dcg += rel / _position_discount(i)
    idcg = sum(k / _position_discount(i) for i in range(1, k + 1))
    return dcg / idcg if idcg > 0 else 0.0


def aae(report, oracle: ExactOracle) -> float:
    """Mean absolute count error over the true top-k items.

    A true top-k item missing from the report contributes its full count;
    negative debiased estimates are clipped to 0 before differencing.
    """
    estimates = {i: max(0.0, c) for i, c in _report_entries(report)}
    total = 0.0
    for item, true_count in oracle.true_topk:
        total += abs(true_count - estimates.get(item, 0.0))
    return total / oracle.k


def exact_topk(stream, k: int, domain_size: int | None = None) -> ExactOracle:
    return ExactOracle(stream, k, domain_size)


def logical_memory_bytes(state, domain_size: int) -> int:
    """Deterministic byte accounting of a scheme's server-side state.

    Heavy slot: id at the domain's wire width plus an 8-byte count. Light
    slot: id plus a 1-byte small counter. Full-domain aggregators: one 8-byte
    counter per domain item. A fixed per-structure overhead covers scalars.
    The point of the accounting is the growth trend in d, not allocator- or
    runtime-specific absolute numbers.
    """
    w = int_width(domain_size)
    if isinstance(state, HeavyGuardian):
        heavy = state.heavy_len * (w + COUNT_BYTES)
        light = state.light_len * (w + LIGHT_COUNT_BYTES)
        return STRUCT_OVERHEAD_BYTES + heavy + light
    if isinstance(state, (GrrAggregator, OlhAggregator, HrAggregator)):
        return STRUCT_OVERHEAD_BYTES + domain_size * COUNT_BYTES
    if isinstance(state, SchemeBase):
        agg = getattr(state, "agg", None)
        if agg is not None:
            return logical_memory_bytes(agg, domain_size)
        return logical_memory_bytes(state.hg, domain_size)
    raise TypeError(f"no memory accounting for {type(state).__name__}")
