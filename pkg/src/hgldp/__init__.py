"""Bounded-memory top-k heavy hitter detection under local differential privacy."""

from .core import PrivacyBudget, RngHandle, bernoulli_exp_neg, grr_params
from .datasets import StreamSpec, generate_stream, load_transactions
from .estimator import TopKEstimator
from .heavyguardian import HeavyGuardian
from .metrics import ExactOracle, aae, logical_memory_bytes, ndcg, precision
from .protocol import run_session
from .schemes import Bulletin, SchemeConfig, TopKReport, build_scheme

__version__ = "0.1.0"

__all__ = [
    "Bulletin",
    "ExactOracle",
    "HeavyGuardian",
    "PrivacyBudget",
    "RngHandle",
    "SchemeConfig",
    "StreamSpec",
    "TopKEstimator",
    "TopKReport",
    "aae",
    "bernoulli_exp_neg",
    "build_scheme",
    "generate_stream",
    "grr_params",
    "load_transactions",
    "logical_memory_bytes",
    "ndcg",
    "precision",
    "run_session",
    "__version__",
]
