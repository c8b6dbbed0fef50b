"""Exact per-event output distributions of every randomizer.

Each builder enumerates P[input v -> output o] for a small domain, with the
hot set fixed to {0, ..., k-1} without loss of generality. The tables exist
so the e^eps indistinguishability bound can be verified by exhaustive ratio
scan, and so the samplers can be cross-checked against their analytic
distributions. Builders deliberately recompute probabilities from first
principles instead of calling the samplers.

Column conventions:

* ``dsr_reduced_table``: k hot-id columns then one BOT column.
* ``bdr_table`` / ``cnr_table``: k hot-id columns, d - k cold-id columns
  (cold id k + j in column k + j), then one BOT column.
"""

from __future__ import annotations

import numpy as np

from .core import grr_params
from .mechanisms import grr_table, hr_table, max_probability_ratio, olh_table


def dsr_reduced_table(epsilon: float, d: int, k: int) -> np.ndarray:
    """Reduced-domain randomizer: GRR over {hot ids} + {BOT}; every cold
    input is the BOT symbol."""
    params = grr_params(epsilon, k + 1)
    p, q = params.p, params.q
    table = np.zeros((d, k + 1))
    for v in range(d):
        if v < k:
            table[v, :k] = q
            table[v, k] = q
            table[v, v] = p
        else:
            table[v, :k] = q
            table[v, k] = p
    return table


def judge_table(epsilon1: float) -> np.ndarray:
    """Binary membership response: rows (hot, cold) x cols (HOT, COLD)."""
    params = grr_params(epsilon1, 2)
    return np.array([[params.p, params.q], [params.q, params.p]])


def m_hot_table(epsilon2: float, d: int, k: int) -> np.ndarray:
    """Hot-set randomizer: GRR over the k hot ids for hot inputs, uniform
    over them for cold inputs."""
    params = grr_params(epsilon2, k) if k >= 2 else None
    table = np.zeros((d, k))
    for v in range(d):
        if v < k:
            if k == 1:
                table[v, 0] = 1.0
            else:
                table[v, :] = params.q
                table[v, v] = params.p
        else:
            table[v, :] = 1.0 / k
    return table


def m_cold_table(epsilon2: float, d: int, k: int) -> np.ndarray:
    """Cold-domain randomizer: GRR over the d - k cold ids for cold inputs,
    uniform over them for hot inputs."""
    m = d - k
    if m < 2:
        raise ValueError("cold domain must contain at least 2 items")
    params = grr_params(epsilon2, m)
    table = np.zeros((d, m))
    for v in range(d):
        if v < k:
            table[v, :] = 1.0 / m
        else:
            table[v, :] = params.q
            table[v, v - k] = params.p
    return table


def bdr_table(epsilon1: float, epsilon2: float, d: int, k: int,
              weakest_low: bool) -> np.ndarray:
    """Composite per-event distribution of the budget-division randomizer.

    ``weakest_low`` selects whether judged-cold events go through the cold
    randomizer (eviction imminent) or collapse to BOT.
    """
    judge = grr_params(epsilon1, 2)
    hot = m_hot_table(epsilon2, d, k)
    table = np.zeros((d, d + 1))
    p_hot = np.where(np.arange(d) < k, judge.p, judge.q)
    table[:, :k] = p_hot[:, None] * hot
    if weakest_low:
        cold = m_cold_table(epsilon2, d, k)
        table[:, k:d] = (1.0 - p_hot)[:, None] * cold
    else:
        table[:, d] = 1.0 - p_hot
    return table


def cnr_table(epsilon1: float, epsilon2: float, d: int, k: int) -> np.ndarray:
    """Composite per-event distribution of the cold-nomination randomizer:
    judged-cold events always go through the cold randomizer, so the BOT
    column is identically zero."""
    return bdr_table(epsilon1, epsilon2, d, k, weakest_low=True)


def mechanism_probability_table(name: str, epsilon: float, d: int,
                                k: int = 2, eps_split: float = 0.5,
                                olh_seeds: tuple = (0, 1, 2, 3),
                                olh_g: int | None = None,
                                weakest_low: bool = True) -> np.ndarray:
    """Dispatcher over every table builder, keyed by randomizer name.

    For the composite schemes, ``epsilon`` is the total budget and is split
    by ``eps_split`` exactly as the schemes split it.
    """
    if name == "grr":
        return grr_table(grr_params(epsilon, d))
    if name == "olh":
        from .mechanisms import olh_params
        return olh_table(olh_params(epsilon, olh_g), d, olh_seeds)
    if name == "hr":
        from .mechanisms import hr_params
        return hr_table(hr_params(epsilon, d), d)
    if name == "dsr_reduced":
        return dsr_reduced_table(epsilon, d, k)
    if name == "m_judge":
        return judge_table(epsilon)
    if name == "m_hot":
        return m_hot_table(epsilon, d, k)
    if name == "m_cold":
        return m_cold_table(epsilon, d, k)
    from .core import PrivacyBudget
    budget = PrivacyBudget.split(epsilon, eps_split)
    if name == "bdr":
        return bdr_table(budget.epsilon1, budget.epsilon2, d, k, weakest_low)
    if name == "cnr":
        return cnr_table(budget.epsilon1, budget.epsilon2, d, k)
    raise ValueError(f"unknown randomizer {name!r}")


def table_satisfies_bound(table: np.ndarray, epsilon: float,
                          slack: float = 1e-9) -> bool:
    """Def-style indistinguishability check: max pairwise ratio <= e^eps.

    Columns that are identically zero (outputs the randomizer never emits)
    are dropped before the scan.
    """
    table = np.asarray(table, dtype=float)
    nonzero = table.max(axis=0) > 0.0
    return max_probability_ratio(table[:, nonzero]) <= np.exp(epsilon) + slack
