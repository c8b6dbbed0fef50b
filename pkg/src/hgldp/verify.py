"""Self-contained verification suite behind ``hgldp verify``.

Checks the analytic privacy tables of every randomizer, the wire round trip,
the decay sampler calibration, and the metric golden values. Each check
prints one [PASS]/[FAIL] line; the runner returns the failure count.
"""

from __future__ import annotations

import math

import numpy as np

from .core import RngHandle, bernoulli_exp_neg, grr_params
from .heavyguardian import HeavyGuardian
from .metrics import ExactOracle, aae, ndcg, precision
from .protocol import WireContext, decode_report, encode_report
from .schemes import (
    SchemeConfig,
    TAG_BOT,
    TAG_FULL_DOMAIN,
    TAG_HOT_SET,
    TAG_HR_INDEX,
    TAG_OLH_PAIR,
)
from .tables import mechanism_probability_table, table_satisfies_bound

_TABLE_EPSILONS = (0.5, 1.0, 2.0, 5.0)


def _check(echo, name: str, ok: bool, detail: str = "") -> int:
    mark = "PASS" if ok else "FAIL"
    suffix = f" ({detail})" if detail and not ok else ""
    echo(f"[{mark}] {name}{suffix}")
    return 0 if ok else 1


def check_privacy_tables(echo) -> int:
    failures = 0
    d, k = 8, 3
    for eps in _TABLE_EPSILONS:
        cases = {
            "grr": dict(),
            "olh": dict(olh_g=min(8, max(2, round(math.exp(eps) + 1)))),
            "hr": dict(),
            "dsr_reduced": dict(k=k),
            "m_judge": dict(),
            "m_hot": dict(k=k),
            "m_cold": dict(k=k),
            "bdr": dict(k=k, weakest_low=False),
            "cnr": dict(k=k),
        }
        for name, kwargs in cases.items():
            table = mechanism_probability_table(name, eps, d, **kwargs)
            row_sums_ok = bool(np.allclose(table.sum(axis=1), 1.0, atol=1e-12))
            bound_ok = table_satisfies_bound(table, eps)
            failures += _check(
                echo, f"privacy table {name} eps={eps}",
                row_sums_ok and bound_ok,
                f"row sums ok={row_sums_ok}, ratio bound ok={bound_ok}")
        table = mechanism_probability_table("bdr", eps, d, k=k, weakest_low=True)
        failures += _check(
            echo, f"privacy table bdr(eviction imminent) eps={eps}",
            table_satisfies_bound(table, eps) and
            bool(np.allclose(table.sum(axis=1), 1.0, atol=1e-12)))
    return failures


def check_wire_roundtrip(echo, cases: int) -> int:
    rng = RngHandle(7)
    ctx = WireContext(41_270, olh_g=16, hr_k=1 << 16)
    ok = True
    for _ in range(cases):
        tag = rng.randrange(5)
        if tag == TAG_BOT:
            report = (TAG_BOT, None)
        elif tag == TAG_OLH_PAIR:
            report = (tag, (rng.getrandbits(64), rng.randrange(ctx.olh_g)))
        elif tag == TAG_HR_INDEX:
            report = (tag, rng.randrange(ctx.hr_k))
        else:
            report = (tag, rng.randrange(ctx.domain_size))
        if decode_report(encode_report(report, ctx), ctx) != report:
            ok = False
            break
    return _check(echo, f"wire round trip x{cases}", ok)


def check_decay_calibration(echo, trials: int) -> int:
    failures = 0
    rng = RngHandle(11)
    b = 1.08
    for c in (1, 2, 5, 10):
        hits = 0
        gamma = c * math.log(b)
        for _ in range(trials):
            hits += bernoulli_exp_neg(gamma, rng)
        expect = b ** -c
        sigma = math.sqrt(expect * (1 - expect) / trials)
        ok = abs(hits / trials - expect) <= 3 * sigma
        failures += _check(
            echo, f"decay acceptance b^-c at c={c}", ok,
            f"observed {hits / trials:.4f}, expected {expect:.4f}")
    return failures


def check_case3_decay(echo, trials: int) -> int:
    """Case-3 acceptance measured through the structure itself."""
    failures = 0
    for c in (1, 2, 5, 10):
        rng = RngHandle(13 + c)
        hg = HeavyGuardian(2)
        decays = 0
        for t in range(trials):
            hg.ids = [0, 1]
            hg.counts = [float(c), float(c + 5)]
            hg.pos = {0: 0, 1: 1}
            hg._free = []
            out = hg.insert_no_replace(2, rng)
            decays += out.kind == "decayed"
        expect = 1.08 ** -c
        sigma = math.sqrt(expect * (1 - expect) / trials)
        ok = abs(decays / trials - expect) <= 3 * sigma
        failures += _check(
            echo, f"structure case-3 decay at c={c}", ok,
            f"observed {decays / trials:.4f}, expected {expect:.4f}")
    return failures


def check_metric_golden(echo) -> int:
    failures = 0
    oracle = ExactOracle([0, 0, 0, 1, 1, 2], k=3)
    perfect = [(0, 3.0), (1, 2.0), (2, 1.0)]
    failures += _check(echo, "ndcg perfect ranking = 1",
                       ndcg(perfect, oracle) == 1.0)
    swapped = [(1, 3.0), (0, 2.0), (2, 1.0)]
    expected = (2 + 2 + 3 / math.log2(3)) / (3 + 3 + 3 / math.log2(3))
    failures += _check(echo, "ndcg worked swap example",
                       abs(ndcg(swapped, oracle) - expected) < 1e-12,
                       f"got {ndcg(swapped, oracle):.6f}")
    failures += _check(echo, "precision worked example",
                       precision([(0, 1.0), (5, 1.0), (4, 1.0)], oracle) == 1 / 3)
    failures += _check(echo, "aae all-missing example",
                       aae([], oracle) == (3 + 2 + 1) / 3)
    return failures


def check_grr_identities(echo) -> int:
    failures = 0
    p = grr_params(math.log(3), 3)
    failures += _check(echo, "grr(ln 3, d=3) = (0.6, 0.2)",
                       abs(p.p - 0.6) < 1e-12 and abs(p.q - 0.2) < 1e-12)
    ok = True
    for eps in (0.1, 0.5, 1.0, 2.0, 5.0, 10.0):
        for d in (2, 10, 1000):
            params = grr_params(eps, d)
            if abs(params.p + (d - 1) * params.q - 1.0) > 1e-12:
                ok = False
            if abs(params.p / params.q - math.exp(eps)) > 1e-9 * math.exp(eps):
                ok = False
    failures += _check(echo, "grr normalization and ratio sweep", ok)
    return failures


def check_session_determinism(echo) -> int:
    from .datasets import StreamSpec, generate_stream
    from .protocol import run_session
    stream = generate_stream(StreamSpec("zipf", 64, 2000), seed=5)
    cfg = SchemeConfig(scheme="cnr", epsilon=1.0, domain_size=64, k=8,
                       warmup_frac=0.05)
    a = run_session(stream, cfg, seed=42)
    b = run_session(stream, cfg, seed=42)
    return _check(echo, "session determinism under fixed seed",
                  a.report == b.report and a.traffic == b.traffic)


def run_all(quick: bool = False, echo=print) -> int:
    """Run every check; returns the number of failures."""
    fuzz = 10_000 if quick else 100_000
    trials = 20_000 if quick else 100_000
    failures = 0
    failures += check_grr_identities(echo)
    failures += check_privacy_tables(echo)
    failures += check_wire_roundtrip(echo, fuzz)
    failures += check_decay_calibration(echo, trials)
    failures += check_case3_decay(echo, trials)
    failures += check_metric_golden(echo)
    failures += check_session_determinism(echo)
    return failures
