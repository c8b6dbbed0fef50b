"""Input validation helpers shared by the estimator, CLI, and session entry
points."""

from __future__ import annotations

import math

import numpy as np


def check_stream(X) -> np.ndarray:
    """Coerce X to a 1-D int64 array of non-negative item ids."""
    X = np.asarray(X)
    if X.ndim == 2 and X.shape[1] == 1:
        X = X.ravel()
    if X.ndim != 1:
        raise ValueError(f"expected a 1-D event stream, got shape {X.shape}")
    if X.size and not np.issubdtype(X.dtype, np.integer):
        as_int = X.astype(np.int64)
        if not np.array_equal(as_int, X):
            raise ValueError("event stream must contain integer item ids")
        X = as_int
    X = X.astype(np.int64, copy=False)
    if X.size and X.min() < 0:
        raise ValueError("item ids must be non-negative")
    return X


def check_epsilon(epsilon: float) -> float:
    epsilon = float(epsilon)
    if math.isnan(epsilon) or epsilon <= 0.0:
        raise ValueError(f"epsilon must be positive, got {epsilon!r}")
    return epsilon


def check_domain(domain_size: int, k: int, stream: np.ndarray | None = None) -> int:
    domain_size = int(domain_size)
    if domain_size < 2:
        raise ValueError("domain_size must be >= 2")
    if domain_size <= k:
        raise ValueError(f"domain_size ({domain_size}) must exceed k ({k})")
    if stream is not None and stream.size and int(stream.max()) >= domain_size:
        raise ValueError(
            f"stream contains id {int(stream.max())} >= domain_size {domain_size}")
    return domain_size
