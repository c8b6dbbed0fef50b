"""Full-domain LDP frequency oracles: GRR, OLH, and Hadamard response.

These are the memory-unbounded comparison baselines. Each mechanism comes in
three pieces: a client-side randomizer, a server-side aggregator whose memory
grows with the domain size d (that growth is the point of the comparison),
and a debias step that turns observed counts into unbiased estimates.

``probability_table`` builders enumerate each mechanism's exact per-input
output distribution so the e^eps indistinguishability bound can be checked by
exhaustive ratio scan at small domain sizes.

Hash convention (an implementation constant, shared by the wire format):
``hash64(seed, v) = splitmix64(seed XOR splitmix64(v + 1))``, a seeded
non-cryptographic 64-bit mix. OLH reduces it mod g.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import GrrParams, RngHandle, grr_params, splitmix64
from .errors import DegenerateParamsError

_MASK64 = (1 << 64) - 1
_U64 = np.uint64


def hash64(seed: int, value: int) -> int:
    return splitmix64(seed ^ splitmix64((value + 1) & _MASK64))


def _splitmix64_np(x: np.ndarray) -> np.ndarray:
    x = x + _U64(0x9E3779B97F4A7C15)
    x = (x ^ (x >> _U64(30))) * _U64(0xBF58476D1CE4E5B9)
    x = (x ^ (x >> _U64(27))) * _U64(0x94D049BB133111EB)
    return x ^ (x >> _U64(31))


def hash64_np(seeds: np.ndarray, value_mix: np.ndarray) -> np.ndarray:
    """Vectorized hash64; ``value_mix`` must be splitmix64(values + 1)."""
    return _splitmix64_np(seeds ^ value_mix)


def item_mix(d: int) -> np.ndarray:
    """Precomputed splitmix64(v + 1) for v in [0, d), for support scans."""
    return _splitmix64_np(np.arange(1, d + 1, dtype=np.uint64))


# ---------------------------------------------------------------------------
# GRR
# ---------------------------------------------------------------------------

def grr_randomize(v: int, params: GrrParams, rng: RngHandle) -> int:
    """Report v with probability p, else a uniform draw from the other d-1."""
    if rng.random() < params.p:
        return v
    r = rng.randrange(params.domain_size - 1)
    return r + 1 if r >= v else r


def grr_randomize_many(values: np.ndarray, params: GrrParams,
                       nprng: np.random.Generator) -> np.ndarray:
    keep = nprng.random(len(values)) < params.p
    others = nprng.integers(0, params.domain_size - 1, size=len(values))
    others = np.where(others >= values, others + 1, others)
    return np.where(keep, values, others)


def grr_debias(counts: np.ndarray, n: int, params: GrrParams) -> np.ndarray:
    """Affine correction: estimate_i = (count_i - n q) / (p - q).

    Estimates sum to n because the raw counts do.
    """
    if n < 1:
        raise ValueError("need at least one report")
    denom = params.p - params.q
    if denom == 0.0:
        raise DegenerateParamsError("p == q: epsilon = 0 carries no signal")
    return (np.asarray(counts, dtype=float) - n * params.q) / denom


def grr_variance(epsilon: float, d: int, n: int) -> float:
    """Per-item estimate variance n (d - 2 + e^eps) / (e^eps - 1)^2."""
    e = math.exp(epsilon)
    return n * (d - 2 + e) / (e - 1) ** 2


class GrrAggregator:
    """Observed-count histogram over the full domain (Theta(d) memory)."""

    def __init__(self, domain_size: int):
        self.domain_size = domain_size
        self.counts = np.zeros(domain_size, dtype=np.int64)
        self.n = 0

    def add(self, value: int) -> None:
        self.counts[value] += 1
        self.n += 1

    def estimates(self, params: GrrParams) -> np.ndarray:
        return grr_debias(self.counts, self.n, params)


# ---------------------------------------------------------------------------
# OLH
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OlhParams:
    """Optimal-local-hash parameters.

    The value is hashed into [0, g) with a per-report random seed and the
    hashed symbol is perturbed by GRR over g: p = e^eps / (e^eps + g - 1),
    q = 1 / (e^eps + g - 1). The variance-optimal reduced domain is
    g = e^eps + 1, rounded to the nearest integer and clamped to >= 2.
    """

    epsilon: float
    g: int
    p: float
    q: float


def olh_params(epsilon: float, g: int | None = None) -> OlhParams:
    if epsilon != epsilon or not epsilon > 0.0:
        raise ValueError(f"epsilon must be positive, got {epsilon!r}")
    if g is None:
        if not math.isfinite(epsilon):
            raise ValueError("g must be given explicitly for a noiseless OLH")
        g = max(2, round(math.exp(epsilon) + 1))
    if g < 2:
        raise ValueError("g must be >= 2")
    inner = grr_params(epsilon, g)
    return OlhParams(epsilon, g, inner.p, inner.q)


def olh_randomize(v: int, params: OlhParams, rng: RngHandle) -> tuple[int, int]:
    """Pick a fresh hash seed, hash v into [0, g), perturb by GRR over g."""
    seed = rng.getrandbits(64)
    h = hash64(seed, v) % params.g
    if rng.random() < params.p:
        return seed, h
    r = rng.randrange(params.g - 1)
    return seed, (r + 1 if r >= h else r)


def olh_randomize_many(values: np.ndarray, params: OlhParams,
                       nprng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    n = len(values)
    seeds = nprng.integers(0, 1 << 64, size=n, dtype=np.uint64)
    mix = _splitmix64_np(values.astype(np.uint64) + _U64(1))
    hashed = (hash64_np(seeds, mix) % _U64(params.g)).astype(np.int64)
    keep = nprng.random(n) < params.p
    others = nprng.integers(0, params.g - 1, size=n)
    others = np.where(others >= hashed, others + 1, others)
    return seeds, np.where(keep, hashed, others)


def olh_support_counts(seeds: np.ndarray, ys: np.ndarray, params: OlhParams,
                       d: int, chunk: int = 4096) -> np.ndarray:
    """support_i = #reports whose seed hashes item i onto the reported symbol.

    Exhaustive scan of the whole domain per report — Theta(n d), acceptable
    because baselines only run at desk scale.
    """
    mix = item_mix(d)
    g = _U64(params.g)
    support = np.zeros(d, dtype=np.int64)
    seeds = np.asarray(seeds, dtype=np.uint64)
    ys = np.asarray(ys, dtype=np.uint64)
    for lo in range(0, len(seeds), chunk):
        s = seeds[lo:lo + chunk, None]
        h = _splitmix64_np(s ^ mix[None, :]) % g
        support += (h == ys[lo:lo + chunk, None]).sum(axis=0)
    return support


def olh_debias(support: np.ndarray, n: int, params: OlhParams) -> np.ndarray:
    """estimate_i = (support_i - n / g) / (p - 1 / g).

    A non-matching report still matches item i with probability 1/g through
    hash collisions, hence the 1/g in both the offset and the denominator.
    """
    denom = params.p - 1.0 / params.g
    if denom == 0.0:
        raise DegenerateParamsError("p == 1/g: OLH estimate is degenerate")
    return (np.asarray(support, dtype=float) - n / params.g) / denom


def olh_variance(epsilon: float, n: int) -> float:
    """n * 4 e^eps / (e^eps - 1)^2 at the optimal g."""
    e = math.exp(epsilon)
    return n * 4 * e / (e - 1) ** 2


class OlhAggregator:
    """Stores raw (seed, symbol) pairs; support is decoded on demand."""

    def __init__(self, domain_size: int, params: OlhParams):
        self.domain_size = domain_size
        self.params = params
        self.seeds: list[int] = []
        self.ys: list[int] = []

    @property
    def n(self) -> int:
        return len(self.seeds)

    def add(self, report: tuple[int, int]) -> None:
        seed, y = report
        self.seeds.append(seed)
        self.ys.append(y)

    def estimates(self) -> np.ndarray:
        support = olh_support_counts(
            np.array(self.seeds, dtype=np.uint64),
            np.array(self.ys, dtype=np.uint64),
            self.params, self.domain_size)
        return olh_debias(support, self.n, self.params)


# ---------------------------------------------------------------------------
# Hadamard response
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HrParams:
    """Hadamard-response parameters.

    Item v maps to row v + 1 of the K x K Sylvester Hadamard matrix,
    K = 2^ceil(log2(d + 1)); row 0 (all ones) is unused. The report is a
    column index drawn uniformly from the +1 columns of the row with
    probability p = e^eps / (1 + e^eps), else uniformly from the -1 columns.
    The matrix is never materialized: entry (r, c) is +1 iff popcount(r & c)
    is even.
    """

    epsilon: float
    K: int
    p: float
    q: float


def hr_params(epsilon: float, d: int) -> HrParams:
    if epsilon != epsilon or not epsilon > 0.0:
        raise ValueError(f"epsilon must be positive, got {epsilon!r}")
    if d < 1:
        raise ValueError("d must be >= 1")
    K = 1
    while K < d + 1:
        K <<= 1
    inner = grr_params(epsilon, 2)
    return HrParams(epsilon, K, inner.p, inner.q)


def hadamard_entry_positive(row: int, col: int) -> bool:
    """Sylvester construction: +1 iff popcount(row AND col) is even."""
    return (row & col).bit_count() % 2 == 0


def hr_randomize(v: int, params: HrParams, rng: RngHandle) -> int:
    """Uniform column of the desired sign in row v + 1.

    XOR-ing a column with the lowest set bit of the row flips the row entry's
    sign and is a bijection between the two sign classes, so one uniform
    column draw plus an optional flip is exactly uniform within the class.
    """
    row = v + 1
    want_positive = rng.random() < params.p
    col = rng.randrange(params.K)
    if hadamard_entry_positive(row, col) != want_positive:
        col ^= row & -row
    return col


def hr_randomize_many(values: np.ndarray, params: HrParams,
                      nprng: np.random.Generator) -> np.ndarray:
    rows = values.astype(np.uint64) + _U64(1)
    cols = nprng.integers(0, params.K, size=len(values), dtype=np.uint64)
    positive = np.bitwise_count(rows & cols) % _U64(2) == 0
    want_positive = nprng.random(len(values)) < params.p
    flip = positive != want_positive
    lowbit = rows & (~rows + _U64(1))
    return np.where(flip, cols ^ lowbit, cols).astype(np.int64)


def hr_plus_counts(cols: np.ndarray, params: HrParams, d: int,
                   chunk: int = 8192) -> np.ndarray:
    """c_hat_i = #reports whose column has +1 in row i + 1."""
    rows = np.arange(1, d + 1, dtype=np.uint64)
    cols = np.asarray(cols, dtype=np.uint64)
    out = np.zeros(d, dtype=np.int64)
    for lo in range(0, len(cols), chunk):
        block = cols[lo:lo + chunk, None] & rows[None, :]
        out += (np.bitwise_count(block) % _U64(2) == 0).sum(axis=0)
    return out


def hr_debias(plus_counts: np.ndarray, n: int, params: HrParams) -> np.ndarray:
    """estimate_i = 2 (e^eps + 1) / (e^eps - 1) * (c_hat_i - n / 2).

    A report from any other item lands on a +1 column of row i + 1 with
    probability exactly 1/2 (row orthogonality), hence the n/2 offset.
    """
    if params.p == params.q:
        raise DegenerateParamsError("p == q: epsilon = 0 carries no signal")
    scale = (
        2.0 if params.q == 0.0
        else 2 * (math.exp(params.epsilon) + 1) / (math.exp(params.epsilon) - 1)
    )
    return scale * (np.asarray(plus_counts, dtype=float) - n / 2.0)


def hr_variance(epsilon: float, n: int) -> float:
    """n * 4 (e^eps + 1)^2 / (e^eps - 1)^2."""
    e = math.exp(epsilon)
    return n * 4 * (e + 1) ** 2 / (e - 1) ** 2


class HrAggregator:
    """Stores raw column indices; row counts are decoded on demand."""

    def __init__(self, domain_size: int, params: HrParams):
        self.domain_size = domain_size
        self.params = params
        self.cols: list[int] = []

    @property
    def n(self) -> int:
        return len(self.cols)

    def add(self, col: int) -> None:
        self.cols.append(col)

    def estimates(self) -> np.ndarray:
        plus = hr_plus_counts(np.array(self.cols, dtype=np.uint64),
                              self.params, self.domain_size)
        return hr_debias(plus, self.n, self.params)


# ---------------------------------------------------------------------------
# Exact output-distribution tables (for indistinguishability verification)
# ---------------------------------------------------------------------------

def grr_table(params: GrrParams) -> np.ndarray:
    d = params.domain_size
    table = np.full((d, d), params.q)
    np.fill_diagonal(table, params.p)
    return table


def olh_table(params: OlhParams, d: int, seeds: tuple[int, ...]) -> np.ndarray:
    """P[v][(seed index, symbol)] for a uniform choice over an explicit seed
    set — the production randomizer draws seeds from the full 64-bit space,
    which cannot be enumerated, but the bound holds seed by seed."""
    S = len(seeds)
    table = np.zeros((d, S * params.g))
    for si, seed in enumerate(seeds):
        for v in range(d):
            h = hash64(seed, v) % params.g
            base = si * params.g
            table[v, base:base + params.g] = params.q / S
            table[v, base + h] = params.p / S
    return table


def hr_table(params: HrParams, d: int) -> np.ndarray:
    """P[v][col]: p over the K/2 positive columns of row v+1, q over the rest."""
    K = params.K
    table = np.zeros((d, K))
    half = K // 2
    for v in range(d):
        row = v + 1
        for col in range(K):
            if hadamard_entry_positive(row, col):
                table[v, col] = params.p / half
            else:
                table[v, col] = params.q / half
    return table


def max_probability_ratio(table: np.ndarray) -> float:
    """max over outputs o and input pairs (v, v') of P[v][o] / P[v'][o]."""
    table = np.asarray(table, dtype=float)
    if np.any(table < 0):
        raise ValueError("probabilities must be non-negative")
    ratios = table.max(axis=0) / table.min(axis=0)
    return float(ratios.max())
