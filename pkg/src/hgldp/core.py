"""Shared domain types, deterministic randomness, and probability bundles.

Everything downstream (the counter structure, the baseline mechanisms, and the
four collection schemes) draws its randomness through :class:`RngHandle` and
its keep/flip probabilities through :func:`grr_params`, so reproducibility and
privacy parameters are decided in exactly one place.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

_MASK64 = (1 << 64) - 1

# Epsilon values beyond this make exp() overflow a double; the randomizer is
# already indistinguishable from the noiseless one long before that.
_NOISELESS_EPSILON = 700.0


def splitmix64(x: int) -> int:
    """One step of the splitmix64 mixer (public-domain constants)."""
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    z = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def fnv1a64(data: bytes) -> int:
    h = 0xCBF29CE484222325
    for b in data:
        h = ((h ^ b) * 0x100000001B3) & _MASK64
    return h


class RngHandle:
    """Seeded, stream-splittable deterministic generator.

    The same seed and the same call sequence produce bit-identical outputs.
    ``spawn(label)`` derives an independent child stream, so each logical
    client and the server-side decay sampler can own their randomness and
    scheme comparisons stay paired under a shared root seed.

    A handle is single-owner: never share one mutably across concurrent tasks.
    """

    __slots__ = ("seed", "_rng", "random", "randrange", "getrandbits")

    def __init__(self, seed: int):
        self.seed = int(seed) & _MASK64
        self._rng = random.Random(self.seed)
        # Bound methods exposed as attributes: hot loops call these millions
        # of times and the extra delegation frame would dominate.
        self.random = self._rng.random
        self.randrange = self._rng.randrange
        self.getrandbits = self._rng.getrandbits

    def spawn(self, label) -> "RngHandle":
        """Derive an independent, deterministic child stream."""
        return RngHandle(splitmix64(self.seed ^ fnv1a64(str(label).encode())))

    def numpy(self) -> np.random.Generator:
        """A numpy generator on its own derived stream (for vectorized work)."""
        return np.random.default_rng(splitmix64(self.seed ^ 0xA076_1D64_78BD_642F))

    def __repr__(self):
        return f"RngHandle(seed={self.seed:#x})"


def bernoulli_exp_neg(gamma: float, rng: RngHandle) -> bool:
    """Return True with probability exactly exp(-gamma), gamma >= 0.

    Uses the series/rejection sampler: exp(-gamma) is factored into unit
    Bernoulli trials that only ever compare uniforms against gamma/k with
    gamma/k in [0, 1]. A single comparison of one uniform against a computed
    exp(-gamma) misrounds badly once gamma is large, which skews decay
    decisions for high counts; this sampler does not evaluate exp() at all.
    """
    if not gamma >= 0.0 or math.isinf(gamma) or gamma != gamma:
        raise ValueError(f"gamma must be finite and >= 0, got {gamma!r}")
    rand = rng.random
    while gamma > 1.0:
        if not _bernoulli_exp_neg_unit(rand, 1.0):
            return False
        gamma -= 1.0
    return _bernoulli_exp_neg_unit(rand, gamma)


def _bernoulli_exp_neg_unit(rand, gamma: float) -> bool:
    # Draw A_k ~ Bernoulli(gamma / k) for k = 1, 2, ... until the first
    # failure at index K; P[K odd] = exp(-gamma) for gamma in [0, 1].
    k = 1
    while rand() < gamma / k:
        k += 1
    return (k & 1) == 1


@dataclass(frozen=True)
class GrrParams:
    """Keep/flip probabilities of generalized randomized response.

    p = e^eps / (e^eps + d - 1) is the probability of reporting the true
    value, q = 1 / (e^eps + d - 1) the probability of each specific other
    value, so p + (d - 1) q = 1 and p / q = e^eps.
    """

    p: float
    q: float
    domain_size: int

    @property
    def noiseless(self) -> bool:
        return self.q == 0.0


@lru_cache(maxsize=4096)
def grr_params(epsilon: float, domain_size: int) -> GrrParams:
    """GRR probabilities for a given budget and domain size.

    ``epsilon = math.inf`` is accepted and yields the noiseless identity
    randomizer (p = 1, q = 0), which every scheme uses for differential
    testing against its non-private counterpart. Results are cached: the
    budget-division randomizers rebuild the same bundle on every event.
    """
    if not isinstance(domain_size, (int, np.integer)) or domain_size < 2:
        raise ValueError(f"domain_size must be an integer >= 2, got {domain_size!r}")
    if epsilon != epsilon or not epsilon > 0.0:
        raise ValueError(f"epsilon must be positive, got {epsilon!r}")
    if epsilon > _NOISELESS_EPSILON:
        return GrrParams(1.0, 0.0, int(domain_size))
    e = math.exp(epsilon)
    return GrrParams(e / (e + domain_size - 1), 1.0 / (e + domain_size - 1), int(domain_size))


@dataclass(frozen=True)
class PrivacyBudget:
    """Per-event privacy budget, optionally split into two stages.

    The split is constructed as epsilon1 = epsilon * r / (1 + r) and
    epsilon2 = epsilon - epsilon1 so the two parts always recompose exactly.
    """

    epsilon: float
    epsilon1: float | None = None
    epsilon2: float | None = None

    def __post_init__(self):
        if self.epsilon != self.epsilon or not self.epsilon > 0.0:
            raise ValueError(f"epsilon must be positive, got {self.epsilon!r}")
        if (self.epsilon1 is None) != (self.epsilon2 is None):
            raise ValueError("epsilon1 and epsilon2 must be given together")
        if self.epsilon1 is not None:
            if not self.epsilon1 > 0.0 or not self.epsilon2 > 0.0:
                raise ValueError("split budgets must be positive")
            if math.isfinite(self.epsilon):
                total = self.epsilon1 + self.epsilon2
                if abs(total - self.epsilon) > math.ulp(self.epsilon):
                    raise ValueError(
                        f"epsilon1 + epsilon2 = {total!r} != epsilon = {self.epsilon!r}"
                    )

    @classmethod
    def split(cls, epsilon: float, ratio: float) -> "PrivacyBudget":
        """Split ``epsilon`` so that epsilon1 / epsilon2 == ratio."""
        if not ratio > 0.0:
            raise ValueError(f"split ratio must be positive, got {ratio!r}")
        if math.isinf(epsilon):
            return cls(epsilon, epsilon, epsilon)
        epsilon1 = epsilon * ratio / (1.0 + ratio)
        return cls(epsilon, epsilon1, epsilon - epsilon1)
