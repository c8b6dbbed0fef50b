"""Bounded-memory space-saving counter structure with exponential decay.

The structure keeps a heavy part of ``heavy_len`` exact(ish) <id, count> slots
and an optional light part of ``light_len`` saturating small counters. State
size depends only on (heavy_len, light_len, buckets) — never on the domain
size or the stream length.

Insertion follows the exponential-decay (ED) strategy:

* Case 1 — the item already holds a heavy slot: its count += 1.
* Case 2 — the item is absent and an empty slot exists: install with count 1.
* Case 3 — the item is absent and the part is full: with probability
  b^(-c), where c is the current minimum count and b > 1 the decay base,
  decrement that minimum by 1; if it reaches <= 0 the weakest pair is evicted
  and (item, 1) installed.

Counts are doubles: the domain-shrinkage scheme debiases in place with
fractional corrections, so counts may become fractional or negative.

Concurrency: single-writer. Snapshots handed to clients (``hot_ids``,
``topk``) are fresh immutable values.
"""

from __future__ import annotations

import math
from typing import NamedTuple, Optional

from .core import RngHandle, bernoulli_exp_neg

LIGHT_COUNTER_CAP = 15  # 4-bit saturating counters by default


class InsertOutcome(NamedTuple):
    kind: str
    old_id: Optional[int] = None
    new_id: Optional[int] = None


HIT = InsertOutcome("hit")
NEW_SLOT = InsertOutcome("new_slot")
DECAYED = InsertOutcome("decayed")
REJECTED = InsertOutcome("rejected")


def replaced(old_id: int, new_id: int) -> InsertOutcome:
    return InsertOutcome("replaced", old_id, new_id)


class HeavyGuardian:
    """One bucket of the structure: heavy slots plus an optional light list.

    ``decay_base`` defaults to 1.08. Tie-breaks (weakest slot, light king,
    top-k ordering) go to the lowest slot index / lowest id so that runs are
    reproducible.
    """

    __slots__ = (
        "heavy_len", "light_len", "decay_base", "light_cap",
        "ids", "counts", "pos", "_free",
        "light_ids", "light_counts", "light_pos", "_light_free",
        "total_inserted", "_ln_b", "_hot_cache",
    )

    def __init__(self, heavy_len: int, light_len: int = 0,
                 decay_base: float = 1.08, light_cap: int = LIGHT_COUNTER_CAP):
        if heavy_len < 1:
            raise ValueError("heavy_len must be >= 1")
        if light_len < 0:
            raise ValueError("light_len must be >= 0")
        if not decay_base > 1.0:
            raise ValueError("decay_base must be > 1")
        self.heavy_len = heavy_len
        self.light_len = light_len
        self.decay_base = decay_base
        self.light_cap = light_cap
        self._ln_b = math.log(decay_base)
        self.ids: list[Optional[int]] = [None] * heavy_len
        self.counts: list[float] = [0.0] * heavy_len
        self.pos: dict[int, int] = {}
        self._free = list(range(heavy_len - 1, -1, -1))  # pop() yields lowest index
        self.light_ids: list[Optional[int]] = [None] * light_len
        self.light_counts: list[int] = [0] * light_len
        self.light_pos: dict[int, int] = {}
        self._light_free = list(range(light_len - 1, -1, -1))
        self.total_inserted = 0
        self._hot_cache: Optional[tuple] = ()

    # ---------- queries ----------

    @property
    def is_full(self) -> bool:
        return not self._free

    @property
    def occupancy(self) -> int:
        return len(self.pos)

    def weakest(self) -> tuple[int, float]:
        """(slot index, count) of the minimum-count occupied slot."""
        if not self.pos:
            raise ValueError("heavy part is empty")
        if not self._free:
            m = min(self.counts)
            return self.counts.index(m), m
        best_i = -1
        best_c = math.inf
        for i, id_ in enumerate(self.ids):
            if id_ is not None and self.counts[i] < best_c:
                best_i, best_c = i, self.counts[i]
        return best_i, best_c

    def weakest_low(self, threshold: float = 1.0) -> bool:
        """True when the guard count is at or below ``threshold``.

        A not-yet-full heavy part counts as low: an empty slot accepts any
        item outright, which is the same "eviction imminent" situation this
        flag exists to broadcast.
        """
        if self._free:
            return True
        return min(self.counts) <= threshold

    def hot_ids(self) -> tuple:
        """Occupied heavy ids in slot order (cached immutable snapshot)."""
        cache = self._hot_cache
        if cache is None:
            cache = tuple(i for i in self.ids if i is not None)
            self._hot_cache = cache
        return cache

    def topk(self) -> list[tuple[int, float]]:
        """Heavy slots sorted by count descending, ties by lowest id."""
        items = [(i, c) for i, c in zip(self.ids, self.counts) if i is not None]
        items.sort(key=lambda t: (-t[1], t[0]))
        return items

    def sum_counts(self) -> float:
        return sum(c for i, c in zip(self.ids, self.counts) if i is not None)

    # ---------- mutation ----------

    def insert(self, item: int, rng: RngHandle) -> InsertOutcome:
        """ED insert with the standard Case-3 eviction (install (item, 1))."""
        return self._ed_insert(item, rng, auto_replace=True)

    def insert_no_replace(self, item: int, rng: RngHandle) -> InsertOutcome:
        """ED insert that leaves a decayed-to-zero weakest slot in place.

        For schemes that install their own replacement pair (a nominated
        candidate, or a debias-adjusted count) instead of the arriving item.
        """
        return self._ed_insert(item, rng, auto_replace=False)

    def _ed_insert(self, item: int, rng: RngHandle, auto_replace: bool) -> InsertOutcome:
        self.total_inserted += 1
        pos = self.pos.get(item)
        if pos is not None:
            self.counts[pos] += 1.0
            return HIT
        if self._free:
            idx = self._free.pop()
            self.ids[idx] = item
            self.counts[idx] = 1.0
            self.pos[item] = idx
            self._hot_cache = None
            if self.light_pos:
                self.light_clear(item)
            return NEW_SLOT
        counts = self.counts
        m = min(counts)
        # b^-c >= 1 once the weakest count is <= 0, so decay always fires
        # there without consuming a draw.
        if m > 0.0 and not bernoulli_exp_neg(m * self._ln_b, rng):
            return REJECTED
        i = counts.index(m)
        c = m - 1.0
        if c <= 0.0 and auto_replace:
            old = self.ids[i]
            del self.pos[old]
            self.ids[i] = item
            counts[i] = 1.0
            self.pos[item] = i
            self._hot_cache = None
            if self.light_pos:
                self.light_clear(item)
            return replaced(old, item)
        counts[i] = c
        return DECAYED

    def decay_weakest(self, rng: RngHandle) -> InsertOutcome:
        """Case-3 decay alone, for reports that carry no concrete id."""
        self.total_inserted += 1
        if not self.pos:
            return REJECTED
        i, m = self.weakest()
        if m > 0.0 and not bernoulli_exp_neg(m * self._ln_b, rng):
            return REJECTED
        self.counts[i] = m - 1.0
        return DECAYED

    def replace_weakest(self, item: int, count: float) -> InsertOutcome:
        """Evict the weakest pair and install (item, count)."""
        if item in self.pos:
            raise ValueError(f"item {item} already holds a heavy slot")
        i, _ = self.weakest()
        old = self.ids[i]
        del self.pos[old]
        self.ids[i] = item
        self.counts[i] = count
        self.pos[item] = i
        self._hot_cache = None
        if self.light_pos:
            self.light_clear(item)
        return replaced(old, item)

    def shift_all(self, delta: float) -> None:
        """Add ``delta`` to every occupied heavy count (per-event debias)."""
        counts = self.counts
        if not self._free:
            for i in range(len(counts)):
                counts[i] += delta
        else:
            for i, id_ in enumerate(self.ids):
                if id_ is not None:
                    counts[i] += delta

    def rescale(self, sub: float, factor: float) -> None:
        """Map every occupied count c to (c - sub) * factor (debias-on-switch)."""
        counts = self.counts
        for i, id_ in enumerate(self.ids):
            if id_ is not None:
                counts[i] = (counts[i] - sub) * factor

    # ---------- light part ----------

    def light_insert(self, item: int, rng: RngHandle) -> InsertOutcome:
        """ED insert into the light list of saturating small counters."""
        if self.light_len == 0:
            raise ValueError("structure has no light part")
        pos = self.light_pos.get(item)
        if pos is not None:
            if self.light_counts[pos] < self.light_cap:
                self.light_counts[pos] += 1
            return HIT
        if self._light_free:
            idx = self._light_free.pop()
            self.light_ids[idx] = item
            self.light_counts[idx] = 1
            self.light_pos[item] = idx
            return NEW_SLOT
        counts = self.light_counts
        m = min(counts)
        if m > 0 and not bernoulli_exp_neg(m * self._ln_b, rng):
            return REJECTED
        i = counts.index(m)
        if m - 1 <= 0:
            old = self.light_ids[i]
            del self.light_pos[old]
            self.light_ids[i] = item
            counts[i] = 1
            self.light_pos[item] = i
            return replaced(old, item)
        counts[i] = m - 1
        return DECAYED

    def light_king(self) -> Optional[int]:
        """Id with the maximum light count; ties to the lowest slot index.

        Returns None when the light part holds no candidate.
        """
        if not self.light_pos:
            return None
        best_i = -1
        best_c = -1
        for i, id_ in enumerate(self.light_ids):
            if id_ is not None and self.light_counts[i] > best_c:
                best_i, best_c = i, self.light_counts[i]
        return self.light_ids[best_i]

    def light_clear(self, item: int) -> None:
        # An id that enters the heavy part must not keep a light slot, or the
        # two parts could disagree about it.
        pos = self.light_pos.pop(item, None)
        if pos is not None:
            self.light_ids[pos] = None
            self.light_counts[pos] = 0
            self._light_free.append(pos)


class HashedHeavyGuardian:
    """``buckets`` independent bucket structures behind a seeded hash.

    The schemes and all headline configurations run with a single bucket;
    this wrapper exists so the bucket count stays a configurable parameter.
    """

    def __init__(self, buckets: int, heavy_len: int, light_len: int = 0,
                 decay_base: float = 1.08, hash_seed: int = 0):
        if buckets < 1:
            raise ValueError("buckets must be >= 1")
        self.buckets = [
            HeavyGuardian(heavy_len, light_len, decay_base) for _ in range(buckets)
        ]
        self.hash_seed = hash_seed

    def _bucket(self, item: int) -> HeavyGuardian:
        if len(self.buckets) == 1:
            return self.buckets[0]
        from .mechanisms import hash64
        return self.buckets[hash64(self.hash_seed, item) % len(self.buckets)]

    def insert(self, item: int, rng: RngHandle) -> InsertOutcome:
        return self._bucket(item).insert(item, rng)

    def topk(self) -> list[tuple[int, float]]:
        items = [kv for b in self.buckets for kv in b.topk()]
        items.sort(key=lambda t: (-t[1], t[0]))
        return items

    @property
    def total_inserted(self) -> int:
        return sum(b.total_inserted for b in self.buckets)
