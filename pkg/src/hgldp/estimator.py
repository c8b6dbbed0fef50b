"""Scikit-learn style front door for the streaming top-k schemes.

``TopKEstimator`` wraps one scheme end to end: ``fit`` replays an event
stream through the client/server session (warm-up, randomize, wire round
trip, insert) and exposes the debiased top-k as fitted attributes. It plays
by the sklearn estimator contract (``get_params`` / ``set_params`` /
``clone``), so it drops into pipelines, grid search over privacy budgets,
and cross-dataset sweeps.
"""

from __future__ import annotations

import math
from typing import Optional

from sklearn.base import BaseEstimator

from .metrics import ExactOracle, logical_memory_bytes, ndcg
from .protocol import run_session
from .schemes import SchemeConfig
from .validation import check_domain, check_epsilon, check_stream


class TopKEstimator(BaseEstimator):
    """Locally private bounded-memory top-k heavy hitter estimator.

    Parameters mirror one scheme configuration: ``scheme`` is one of
    ``bgr | dsr | bdr | cnr`` (bounded-memory schemes), ``grr | olh | hr``
    (full-domain baselines), or ``none`` (non-private ceiling).
    ``epsilon=math.inf`` disables randomization. ``domain_size=None``
    discovers the domain from the fitted stream.

    Fitted attributes: ``top_k_`` (list of (item, estimated count)),
    ``estimates_`` (dict view of the same), ``n_events_``, ``traffic_``,
    ``state_bytes_``.
    """

    def __init__(self, scheme: str = "cnr", epsilon: float = 1.0,
                 k: int = 20, domain_size: Optional[int] = None,
                 eps_split: float = 0.5, light_len: Optional[int] = None,
                 decay_base: float = 1.08, warmup_frac: float = 0.01,
                 gamma_h: Optional[float] = None,
                 dsr_consistent_debias: bool = False,
                 random_state: int = 0):
        self.scheme = scheme
        self.epsilon = epsilon
        self.k = k
        self.domain_size = domain_size
        self.eps_split = eps_split
        self.light_len = light_len
        self.decay_base = decay_base
        self.warmup_frac = warmup_frac
        self.gamma_h = gamma_h
        self.dsr_consistent_debias = dsr_consistent_debias
        self.random_state = random_state

    def fit(self, X, y=None):
        """Replay the event stream X (1-D array of item ids) through the
        configured scheme."""
        X = check_stream(X)
        epsilon = check_epsilon(self.epsilon) if not math.isinf(self.epsilon) \
            else self.epsilon
        d = self.domain_size
        if d is None:
            d = int(X.max()) + 1 if X.size else 2
            d = max(d, self.k + 1)
        d = check_domain(d, self.k, X)
        cfg = SchemeConfig(
            scheme=self.scheme, epsilon=epsilon, domain_size=d, k=self.k,
            eps_split=self.eps_split, light_len=self.light_len,
            decay_base=self.decay_base, warmup_frac=self.warmup_frac,
            gamma_h=self.gamma_h,
            dsr_consistent_debias=self.dsr_consistent_debias,
        )
        result = run_session(X, cfg, self.random_state)
        self.domain_size_ = d
        self.top_k_ = list(result.report.entries)
        self.estimates_ = dict(result.report.entries)
        self.n_events_ = result.report.num_events
        self.traffic_ = result.traffic
        self.state_bytes_ = logical_memory_bytes(result.scheme, d)
        return self

    def score(self, X, y=None) -> float:
        """NDCG of the fitted top-k against the exact top-k of X."""
        if not hasattr(self, "top_k_"):
            raise ValueError("estimator is not fitted")
        X = check_stream(X)
        oracle = ExactOracle(X, self.k, self.domain_size_)
        return ndcg(self.top_k_, oracle)

    def fit_score(self, X) -> float:
        """Fit on X and score against X's own exact oracle."""
        return self.fit(X).score(X)
