"""Synthetic stream generators and transaction-file ingestion.

Generators are pure: the same spec and seed always produce the same events.
All emitted ids lie in [0, d).
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from .errors import EmptyDatasetError, ParseError


@dataclass(frozen=True)
class StreamSpec:
    """One synthetic or file-backed event stream.

    ``kind`` is one of "normal", "exponential", "zipf", or "file".
    ``sigma`` is the standard deviation of the normal / exponential draw
    (the exponential's scale equals its standard deviation); ``zipf_s`` the
    Zipf exponent. Normal draws center on d / 2; out-of-domain draws clamp
    to the domain edges so the stream always holds exactly n events.
    """

    kind: str
    domain_size: int
    n: int
    sigma: float = 5.0
    zipf_s: float = 1.2
    path: Optional[str] = None

    def __post_init__(self):
        if self.kind not in ("normal", "exponential", "zipf", "file"):
            raise ValueError(f"unknown stream kind {self.kind!r}")
        if self.kind != "file":
            if self.domain_size < 2:
                raise ValueError("domain_size must be >= 2")
            if self.n < 0:
                raise ValueError("n must be >= 0")
            if self.kind in ("normal", "exponential") and not self.sigma > 0:
                raise ValueError("sigma must be positive")
            if self.kind == "zipf" and not self.zipf_s > 0:
                raise ValueError("zipf_s must be positive")


def generate_stream(spec: StreamSpec, seed: int) -> np.ndarray:
    """Materialize a synthetic stream as an int64 array of item ids."""
    if spec.kind == "file":
        events, _ = load_transactions(spec.path, limit=spec.n if spec.n else None)
        return events
    rng = np.random.default_rng(seed)
    d, n = spec.domain_size, spec.n
    if spec.kind == "normal":
        vals = np.rint(rng.normal(d / 2.0, spec.sigma, size=n))
    elif spec.kind == "exponential":
        vals = np.floor(rng.exponential(spec.sigma, size=n))
    else:  # zipf over the d ranks: P(rank r) proportional to r^-s
        weights = np.arange(1, d + 1, dtype=float) ** -spec.zipf_s
        cdf = np.cumsum(weights / weights.sum())
        vals = np.searchsorted(cdf, rng.random(n), side="right")
    return np.clip(vals, 0, d - 1).astype(np.int64)


def load_transactions(path, limit: Optional[int] = None) -> tuple[np.ndarray, int]:
    """Flatten a whitespace-separated transaction file into an event stream.

    Each line is one transaction of non-negative integer item ids; events
    keep file order. Returns (events, discovered domain size = max id + 1).
    ``limit`` caps the number of flattened events.
    """
    events: list[int] = []
    with open(path, "rt", encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            for token in line.split():
                try:
                    value = int(token)
                except ValueError:
                    raise ParseError(line_no, f"not an integer: {token!r}") from None
                if value < 0:
                    raise ParseError(line_no, f"negative item id: {value}")
                events.append(value)
                if limit is not None and len(events) >= limit:
                    return np.array(events, dtype=np.int64), max(events) + 1
    if not events:
        raise EmptyDatasetError(f"{path} contains no events")
    return np.array(events, dtype=np.int64), max(events) + 1


def save_stream(path, events) -> None:
    """Re-export a stream as one integer per line (reproducibility bundles)."""
    path = Path(path)
    with open(path, "wt", encoding="utf-8") as fh:
        for v in np.asarray(events).tolist():
            fh.write(f"{v}\n")
