"""The four collection schemes: BGR, DSR, BDR, CNR.

Each scheme is a (randomize, insert, response) triple over a shared
HeavyGuardian: clients randomize one event at a time against the latest
server bulletin, the server folds the perturbed report into the structure,
and a top-k query debiases the recorded counts.

Client randomizers are stateless per event given (bulletin, params, rng) and
may run fully parallel; the server-side insert path of one scheme instance is
single-writer. Bulletins are immutable snapshots; the simulation guarantees a
client never sees a bulletin newer than the server state its report lands in.

Report tags double as wire tags (see protocol.py):
FULL_DOMAIN / HOT_SET carry an item id, BOT carries nothing, OLH_PAIR and
HR_INDEX carry mechanism encodings for the baseline schemes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from .core import GrrParams, PrivacyBudget, RngHandle, grr_params
from .errors import (
    DegenerateParamsError,
    ProtocolViolationError,
    StaleBulletinError,
)
from .heavyguardian import HeavyGuardian, InsertOutcome, REJECTED
from . import mechanisms as mech

TAG_FULL_DOMAIN = 0
TAG_HOT_SET = 1
TAG_BOT = 2
TAG_OLH_PAIR = 3
TAG_HR_INDEX = 4

BOT = (TAG_BOT, None)

SCHEME_NAMES = ("bgr", "dsr", "bdr", "cnr", "grr", "olh", "hr", "none")


class Bulletin(NamedTuple):
    """Server-published snapshot clients randomize against."""

    hot_ids: tuple
    hot_set: frozenset
    weakest_low: bool
    seq: int


class TopKReport(NamedTuple):
    """Debiased (id, estimated count) list, count-descending."""

    entries: tuple
    num_events: int

    def ids(self) -> tuple:
        return tuple(e[0] for e in self.entries)


@dataclass
class SchemeConfig:
    """Everything needed to instantiate one scheme end to end.

    ``epsilon = math.inf`` selects noiseless operation (identity
    randomizers), used by the differential tests. ``eps_split`` is the
    epsilon1 / epsilon2 ratio for the budget-division schemes; 0.5 is the
    recommended general-purpose setting and 1/9 the near-optimal-accuracy
    one. ``gamma_h`` is the hot-event fraction used by the BDR/CNR debias:
    an explicit value wins, otherwise it is estimated from the warm-up.
    """

    scheme: str = "cnr"
    epsilon: float = 1.0
    domain_size: int = 1000
    k: int = 20
    eps_split: float = 0.5
    light_len: Optional[int] = None  # default: 5 for cnr, else 0
    decay_base: float = 1.08
    warmup_frac: float = 0.01
    gamma_h: Optional[float] = None
    dsr_consistent_debias: bool = False
    debias_at_insert: bool = False
    olh_g: Optional[int] = None

    def __post_init__(self):
        if self.scheme not in SCHEME_NAMES:
            raise ValueError(f"unknown scheme {self.scheme!r}")
        if self.domain_size < 2 or self.domain_size <= self.k:
            raise ValueError("need domain_size >= 2 and domain_size > k")
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if not 0.0 <= self.warmup_frac < 1.0:
            raise ValueError("warmup_frac must be in [0, 1)")
        if self.gamma_h is not None and not 0.0 <= self.gamma_h <= 1.0:
            raise ValueError("gamma_h must be in [0, 1]")
        if self.light_len is None:
            self.light_len = 5 if self.scheme == "cnr" else 0

    @property
    def budget(self) -> PrivacyBudget:
        return PrivacyBudget.split(self.epsilon, self.eps_split)


def estimate_gamma_h(warmup_hg: HeavyGuardian, warmup_len: int) -> float:
    """Hot-event fraction estimated from the warmed-up structure.

    Sum of retained heavy counts over the number of warm-up events, clamped
    to [0, 1].
    """
    if warmup_len < 1:
        raise ValueError("warm-up is empty; gamma_h cannot be estimated")
    return min(1.0, max(0.0, warmup_hg.sum_counts() / warmup_len))


# ---------------------------------------------------------------------------
# Client-side randomizers
# ---------------------------------------------------------------------------

def bgr_randomize(v: int, params: GrrParams, rng: RngHandle) -> tuple:
    """Full-domain GRR; the whole client side of the baseline scheme."""
    return (TAG_FULL_DOMAIN, mech.grr_randomize(v, params, rng))


def dsr_randomize(v: int, bulletin: Bulletin, entire: GrrParams,
                  reduced: GrrParams, rng: RngHandle) -> tuple:
    """Domain-shrinkage randomizer.

    While no eviction is imminent, the event is randomized by GRR over the
    k + 1 symbols {hot ids} + {BOT}: every cold item collapses onto BOT. The
    moment the weakest count drops to <= 1 the client falls back to
    full-domain GRR so the server can learn a concrete replacement id.
    """
    if bulletin.weakest_low:
        return (TAG_FULL_DOMAIN, mech.grr_randomize(v, entire, rng))
    hot = bulletin.hot_ids
    k = reduced.domain_size - 1
    if len(hot) != k:
        raise StaleBulletinError(
            f"bulletin carries {len(hot)} hot ids, scheme expects {k}")
    if v in bulletin.hot_set:
        if rng.random() < reduced.p:
            return (TAG_HOT_SET, v)
        # uniform over the other k symbols: k - 1 hot ids and BOT
        r = rng.randrange(k)
        if r == k - 1:
            return BOT
        other = hot[r] if hot[r] != v else hot[k - 1]
        return (TAG_HOT_SET, other)
    if rng.random() < reduced.p:
        return BOT
    return (TAG_HOT_SET, hot[rng.randrange(k)])


def bdr_m_judge(v: int, bulletin: Bulletin, judge: GrrParams,
                rng: RngHandle) -> bool:
    """Binary randomized response on hot-set membership (budget epsilon1)."""
    truthful = rng.random() < judge.p
    return (v in bulletin.hot_set) == truthful


def bdr_m_hot(v: int, bulletin: Bulletin, epsilon2: float,
              rng: RngHandle) -> tuple:
    """Randomize a judged-hot event onto the hot set (budget epsilon2).

    A truly hot item goes through GRR over the hot ids; a cold one maps
    uniformly onto them (its identity must not leak into the choice).
    """
    hot = bulletin.hot_ids
    m = len(hot)
    if m == 0:
        raise StaleBulletinError("bulletin carries no hot ids")
    if m == 1:
        return (TAG_HOT_SET, hot[0])
    if v in bulletin.hot_set:
        keep = grr_params(epsilon2, m).p
        if rng.random() < keep:
            return (TAG_HOT_SET, v)
        r = rng.randrange(m - 1)
        pick = hot[r]
        if pick == v:
            pick = hot[m - 1]
        return (TAG_HOT_SET, pick)
    return (TAG_HOT_SET, hot[rng.randrange(m)])


def bdr_m_cold(v: int, bulletin: Bulletin, epsilon2: float, d: int,
               rng: RngHandle) -> tuple:
    """Mirror of m_hot over the d - k cold ids (budget epsilon2)."""
    hot_set = bulletin.hot_set
    m_cold = d - len(hot_set)
    if m_cold < 2:
        raise ValueError("cold domain must contain at least 2 items")
    if v not in hot_set:
        keep = grr_params(epsilon2, m_cold).p
        if rng.random() < keep:
            return (TAG_FULL_DOMAIN, v)
        while True:
            r = rng.randrange(d)
            if r != v and r not in hot_set:
                return (TAG_FULL_DOMAIN, r)
    while True:
        r = rng.randrange(d)
        if r not in hot_set:
            return (TAG_FULL_DOMAIN, r)


def bdr_randomize(v: int, bulletin: Bulletin, judge: GrrParams,
                  epsilon2: float, d: int, rng: RngHandle) -> tuple:
    """Budget-division randomizer: judge with epsilon1, then report with
    epsilon2 — onto the hot set, onto the cold domain when an eviction is
    imminent, or as BOT otherwise. Total spend epsilon1 + epsilon2."""
    if bdr_m_judge(v, bulletin, judge, rng):
        return bdr_m_hot(v, bulletin, epsilon2, rng)
    if bulletin.weakest_low:
        return bdr_m_cold(v, bulletin, epsilon2, d, rng)
    return BOT


def cnr_randomize(v: int, bulletin: Bulletin, judge: GrrParams,
                  epsilon2: float, d: int, rng: RngHandle) -> tuple:
    """Cold-nomination randomizer: like BDR but judged-cold events always go
    through m_cold, so the otherwise idle epsilon2 keeps feeding concrete
    cold ids to the server (no BOT reports ever)."""
    if bdr_m_judge(v, bulletin, judge, rng):
        return bdr_m_hot(v, bulletin, epsilon2, rng)
    return bdr_m_cold(v, bulletin, epsilon2, d, rng)


# ---------------------------------------------------------------------------
# Debias formulas
# ---------------------------------------------------------------------------

def bgr_debias_count(count: float, num: int, params: GrrParams) -> float:
    if params.p == params.q:
        raise DegenerateParamsError("p == q: epsilon = 0 carries no signal")
    return (count - num * params.q) / (params.p - params.q)


def bdr_debias_count(count: float, num: int, gamma_h: float,
                     judge: GrrParams, hot: GrrParams) -> float:
    """Closed-form debias of one recorded count.

    estimate = (count - gamma_h num (p1 q2 - q1 / k) - num q1 / k)
               / (p1 (p2 - q2))
    """
    p1, q1 = judge.p, judge.q
    p2, q2 = hot.p, hot.q
    k = hot.domain_size
    denom = p1 * (p2 - q2)
    if denom == 0.0:
        raise DegenerateParamsError("p2 == q2: epsilon2 = 0 carries no signal")
    return (count - gamma_h * num * (p1 * q2 - q1 / k) - num * q1 / k) / denom


def bdr_debias_count_response_form(count: float, num: int, gamma_h: float,
                                   judge: GrrParams, hot: GrrParams) -> float:
    """Algebraically identical regrouping of :func:`bdr_debias_count`:

    estimate = (count - num (gamma_h p1 q2 + (1 - gamma_h) q1 / k))
               / (p1 (p2 - q2))
    """
    p1, q1 = judge.p, judge.q
    p2, q2 = hot.p, hot.q
    k = hot.domain_size
    denom = p1 * (p2 - q2)
    if denom == 0.0:
        raise DegenerateParamsError("p2 == q2: epsilon2 = 0 carries no signal")
    offset = num * (gamma_h * p1 * q2 + (1.0 - gamma_h) * q1 / k)
    return (count - offset) / denom


# ---------------------------------------------------------------------------
# Scheme servers
# ---------------------------------------------------------------------------

class SchemeBase:
    """Shared server plumbing: warm-up, bulletin snapshots, top-k assembly."""

    uses_bulletin = True

    def __init__(self, cfg: SchemeConfig):
        self.cfg = cfg
        self.hg = HeavyGuardian(cfg.k, cfg.light_len, cfg.decay_base)
        self.num = 0
        self.warmup_len = 0
        self._gamma_h = cfg.gamma_h
        self._seq = 0

    def warmup(self, items, rng: RngHandle) -> None:
        """Fill the heavy part from a non-randomized prefix.

        Only the heavy part is filled, for every scheme — the light part
        starts cold even when the scheme uses one.
        """
        hg = self.hg
        for v in items:
            hg.insert(v, rng)
            self.warmup_len += 1
        if self._gamma_h is None and self.warmup_len > 0:
            self._gamma_h = estimate_gamma_h(hg, self.warmup_len)

    @property
    def gamma_h(self) -> Optional[float]:
        return self._gamma_h

    def bulletin(self) -> Bulletin:
        hot = self.hg.hot_ids()
        self._seq += 1
        return Bulletin(hot, frozenset(hot), self.hg.weakest_low(), self._seq)

    def _topk_report(self, debias) -> TopKReport:
        entries = [(i, debias(c)) for i, c in self.hg.topk()]
        entries.sort(key=lambda t: (-t[1], t[0]))
        return TopKReport(tuple(entries), self.num)

    def randomize(self, v: int, bulletin: Optional[Bulletin],
                  rng: RngHandle) -> tuple:
        raise NotImplementedError

    def insert(self, report: tuple, rng: RngHandle) -> InsertOutcome:
        raise NotImplementedError

    def response(self) -> TopKReport:
        raise NotImplementedError


class NonPrivateScheme(SchemeBase):
    """Plain HeavyGuardian, no randomization: the accuracy ceiling."""

    uses_bulletin = False

    def randomize(self, v, bulletin, rng):
        return (TAG_FULL_DOMAIN, v)

    def insert(self, report, rng):
        tag, payload = report
        if tag != TAG_FULL_DOMAIN:
            raise ProtocolViolationError(f"unexpected tag {tag}")
        self.num += 1
        return self.hg.insert(payload, rng)

    def response(self):
        return self._topk_report(lambda c: c)


class BgrScheme(SchemeBase):
    """Full-domain GRR feeding the structure.

    With ``debias_at_insert`` (the default), every incoming report subtracts
    the per-event noise expectation q from all stored counts, and the
    response only divides by p - q. Storing raw counts instead (debias fully
    at query time) yields the same estimates on undisturbed slots but lets
    the accumulated noise floor inflate the minimum count until exponential
    decay effectively stops; debiasing as reports arrive keeps decay
    operating on noise-free count scales.
    """

    uses_bulletin = False

    def __init__(self, cfg):
        super().__init__(cfg)
        self.params = grr_params(cfg.epsilon, cfg.domain_size)

    def randomize(self, v, bulletin, rng):
        return bgr_randomize(v, self.params, rng)

    def insert(self, report, rng):
        tag, payload = report
        if tag != TAG_FULL_DOMAIN:
            raise ProtocolViolationError(f"unexpected tag {tag}")
        self.num += 1
        if self.cfg.debias_at_insert and self.params.q:
            self.hg.shift_all(-self.params.q)
        return self.hg.insert(payload, rng)

    def response(self):
        num, params = self.num, self.params
        if self.cfg.debias_at_insert:
            denom = params.p - params.q
            if denom == 0.0:
                raise DegenerateParamsError("p == q: epsilon = 0 carries no signal")
            return self._topk_report(lambda c: c / denom)
        return self._topk_report(lambda c: bgr_debias_count(c, num, params))


_ENTIRE = "entire"
_REDUCED = "reduced"


class DsrScheme(SchemeBase):
    """Domain-shrinkage scheme with debias-on-switch bookkeeping.

    The server is in ENTIRE mode when the weakest heavy count is <= 1 (an
    eviction is imminent and clients must randomize over the whole domain)
    and in REDUCED mode otherwise. Every event partially debiases the stored
    counts in place; every mode switch rescales them onto the new mechanism's
    denominator; the final response applies the one remaining division.

    Two debias variants ship. The default applies the published branch
    constants verbatim, which pair the entire-domain probabilities with
    REDUCED-mode events and vice versa. ``dsr_consistent_debias`` swaps the
    pairing so each mode subtracts its own per-event q, converts by
    new/old denominator on switches, and installs replacements normalized by
    accumulated q (the variant that is empirically unbiased and reduces to
    the identity when noiseless).
    """

    def __init__(self, cfg):
        super().__init__(cfg)
        self.entire = grr_params(cfg.epsilon, cfg.domain_size)
        self.reduced = grr_params(cfg.epsilon, cfg.k + 1)
        self.num_entire = 0
        self.num_reduced = 0
        self._mode: Optional[str] = None  # mode of the last processed event
        p1, q1 = self.entire.p, self.entire.q
        p2, q2 = self.reduced.p, self.reduced.q
        if cfg.dsr_consistent_debias:
            self._sub = {_REDUCED: q2, _ENTIRE: q1}
            self._div = {_REDUCED: p2 - q2, _ENTIRE: p1 - q1}
            self._repl_num = (q1, q2)
        else:
            self._sub = {_REDUCED: q1, _ENTIRE: q2}
            self._div = {_REDUCED: p1 - q1, _ENTIRE: p2 - q2}
            self._repl_num = (p1, p2)

    def _current_mode(self) -> str:
        return _ENTIRE if self.hg.weakest_low() else _REDUCED

    def randomize(self, v, bulletin, rng):
        return dsr_randomize(v, bulletin, self.entire, self.reduced, rng)

    def _replacement_count(self) -> float:
        c1, c2 = self._repl_num
        p1, q1 = self.entire.p, self.entire.q
        p2, q2 = self.reduced.p, self.reduced.q
        return (1.0
                - c1 * self.num_entire / (p1 - q1)
                - c2 * self.num_reduced / (p2 - q2))

    def insert(self, report, rng):
        tag, payload = report
        mode = self._current_mode()
        if mode == _ENTIRE:
            if tag != TAG_FULL_DOMAIN:
                raise ProtocolViolationError(
                    "entire mode expects a full-domain report")
        elif tag not in (TAG_HOT_SET, TAG_BOT):
            raise ProtocolViolationError(
                "reduced mode expects a hot-set or BOT report")
        self.num += 1
        hg = self.hg
        prev = self._mode
        if prev is not None and prev != mode:
            # debias-on-switch: close out the old mechanism's per-event q and
            # move the accumulated counts onto the new denominator
            self._mode = mode
            hg.rescale(self._sub[prev], self._div[mode] / self._div[prev])
        else:
            self._mode = mode
            hg.shift_all(-self._sub[mode])
        if mode == _ENTIRE:
            self.num_entire += 1
        else:
            self.num_reduced += 1
        if tag == TAG_BOT:
            return hg.decay_weakest(rng)
        out = hg.insert_no_replace(payload, rng)
        if (mode == _ENTIRE and payload not in hg.pos and hg.is_full
                and hg.weakest()[1] <= 0.0):
            return hg.replace_weakest(payload, self._replacement_count())
        return out

    def response(self):
        mode = self._mode if self._mode is not None else self._current_mode()
        div = self._div[mode]
        if div == 0.0:
            raise DegenerateParamsError("degenerate debias denominator")
        return self._topk_report(lambda c: c / div)


def _kary_params(epsilon: float, size: int) -> GrrParams:
    # grr_params rejects a single-item domain, but the debias formula is
    # still well defined there (keep probability 1).
    if size == 1:
        return GrrParams(1.0, 0.0, 1)
    return grr_params(epsilon, size)


class BdrScheme(SchemeBase):
    """Budget-division scheme: epsilon1 judges hot/cold, epsilon2 reports.

    Under ``debias_at_insert`` every report subtracts the expected per-event
    noise contribution gamma_h p1 q2 + (1 - gamma_h) q1 / k from all stored
    counts and the response divides by p1 (p2 - q2); otherwise counts are
    stored raw and the closed-form correction runs at query time. See
    :class:`BgrScheme` for why the default debiases while collecting.
    """

    def __init__(self, cfg):
        super().__init__(cfg)
        budget = cfg.budget
        self.epsilon2 = budget.epsilon2
        self.judge = grr_params(budget.epsilon1, 2)
        self.hot = _kary_params(budget.epsilon2, cfg.k)
        if cfg.domain_size - cfg.k < 2:
            raise ValueError("cold domain must contain at least 2 items")

    def randomize(self, v, bulletin, rng):
        return bdr_randomize(v, bulletin, self.judge, self.epsilon2,
                             self.cfg.domain_size, rng)

    def _per_event_offset(self) -> float:
        p1, q1 = self.judge.p, self.judge.q
        q2 = self.hot.q
        if q1 == 0.0 and q2 == 0.0:
            return 0.0
        gamma = self._gamma_h
        if gamma is None:
            raise ValueError(
                "gamma_h is unresolved: configure it or run a warm-up")
        return gamma * p1 * q2 + (1.0 - gamma) * q1 / self.hot.domain_size

    def insert(self, report, rng):
        tag, payload = report
        self.num += 1
        if self.cfg.debias_at_insert:
            offset = self._per_event_offset()
            if offset:
                self.hg.shift_all(-offset)
        if tag == TAG_BOT:
            # a BOT can only decay; it is never installable as an id
            return self.hg.decay_weakest(rng)
        if tag not in (TAG_HOT_SET, TAG_FULL_DOMAIN):
            raise ProtocolViolationError(f"unexpected tag {tag}")
        return self.hg.insert(payload, rng)

    def response(self):
        gamma = self._gamma_h
        num, judge, hot = self.num, self.judge, self.hot
        if self.cfg.debias_at_insert:
            denom = judge.p * (hot.p - hot.q)
            if denom == 0.0:
                raise DegenerateParamsError(
                    "p2 == q2: epsilon2 = 0 carries no signal")
            return self._topk_report(lambda c: c / denom)
        if gamma is None:
            raise ValueError(
                "gamma_h is unresolved: configure it or run a warm-up")
        return self._topk_report(
            lambda c: bdr_debias_count(c, num, gamma, judge, hot))


class CnrScheme(BdrScheme):
    """Cold-nomination scheme: BDR plus a light part that elects the
    replacement candidate when a heavy eviction happens."""

    def __init__(self, cfg):
        if cfg.light_len < 1:
            raise ValueError("cnr needs a light part (light_len >= 1)")
        super().__init__(cfg)

    def randomize(self, v, bulletin, rng):
        return cnr_randomize(v, bulletin, self.judge, self.epsilon2,
                             self.cfg.domain_size, rng)

    def insert(self, report, rng):
        tag, payload = report
        if tag not in (TAG_HOT_SET, TAG_FULL_DOMAIN):
            raise ProtocolViolationError(f"unexpected tag {tag}")
        self.num += 1
        hg = self.hg
        if self.cfg.debias_at_insert:
            offset = self._per_event_offset()
            if offset:
                hg.shift_all(-offset)
        out = hg.insert_no_replace(payload, rng)
        if payload not in hg.pos:
            hg.light_insert(payload, rng)
        if hg.is_full and hg.weakest()[1] <= 0.0:
            king = hg.light_king()
            if king is not None:
                hg.light_clear(king)
                return hg.replace_weakest(king, 1.0)
        return out


class _MechanismBaseline(SchemeBase):
    """Common shell for the memory-unbounded full-domain baselines."""

    uses_bulletin = False

    def warmup(self, items, rng):
        # Full-domain oracles have no structure to warm; warm-up events are
        # counted into the ground truth by the harness, not here.
        self.warmup_len += len(list(items))

    def _topk_from_estimates(self, estimates: np.ndarray) -> TopKReport:
        k = self.cfg.k
        order = np.lexsort((np.arange(len(estimates)), -estimates))[:k]
        entries = tuple((int(i), float(estimates[i])) for i in order)
        return TopKReport(entries, self.num)


class GrrBaselineScheme(_MechanismBaseline):
    def __init__(self, cfg):
        super().__init__(cfg)
        self.params = grr_params(cfg.epsilon, cfg.domain_size)
        self.agg = mech.GrrAggregator(cfg.domain_size)

    def randomize(self, v, bulletin, rng):
        return (TAG_FULL_DOMAIN, mech.grr_randomize(v, self.params, rng))

    def insert(self, report, rng):
        tag, payload = report
        if tag != TAG_FULL_DOMAIN:
            raise ProtocolViolationError(f"unexpected tag {tag}")
        self.num += 1
        self.agg.add(payload)
        return REJECTED

    def response(self):
        return self._topk_from_estimates(self.agg.estimates(self.params))


class OlhBaselineScheme(_MechanismBaseline):
    def __init__(self, cfg):
        super().__init__(cfg)
        self.params = mech.olh_params(cfg.epsilon, cfg.olh_g)
        self.agg = mech.OlhAggregator(cfg.domain_size, self.params)

    def randomize(self, v, bulletin, rng):
        return (TAG_OLH_PAIR, mech.olh_randomize(v, self.params, rng))

    def insert(self, report, rng):
        tag, payload = report
        if tag != TAG_OLH_PAIR:
            raise ProtocolViolationError(f"unexpected tag {tag}")
        self.num += 1
        self.agg.add(payload)
        return REJECTED

    def response(self):
        return self._topk_from_estimates(self.agg.estimates())


class HrBaselineScheme(_MechanismBaseline):
    def __init__(self, cfg):
        super().__init__(cfg)
        self.params = mech.hr_params(cfg.epsilon, cfg.domain_size)
        self.agg = mech.HrAggregator(cfg.domain_size, self.params)

    def randomize(self, v, bulletin, rng):
        return (TAG_HR_INDEX, mech.hr_randomize(v, self.params, rng))

    def insert(self, report, rng):
        tag, payload = report
        if tag != TAG_HR_INDEX:
            raise ProtocolViolationError(f"unexpected tag {tag}")
        self.num += 1
        self.agg.add(payload)
        return REJECTED

    def response(self):
        return self._topk_from_estimates(self.agg.estimates())


_SCHEME_CLASSES = {
    "bgr": BgrScheme,
    "dsr": DsrScheme,
    "bdr": BdrScheme,
    "cnr": CnrScheme,
    "grr": GrrBaselineScheme,
    "olh": OlhBaselineScheme,
    "hr": HrBaselineScheme,
    "none": NonPrivateScheme,
}


def build_scheme(cfg: SchemeConfig) -> SchemeBase:
    return _SCHEME_CLASSES[cfg.scheme](cfg)
