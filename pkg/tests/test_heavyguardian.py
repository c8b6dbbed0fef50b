import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hgldp.core import RngHandle
from hgldp.heavyguardian import (
    DECAYED,
    HIT,
    HashedHeavyGuardian,
    HeavyGuardian,
    NEW_SLOT,
    REJECTED,
)


class AlwaysAccept:
    """Drives bernoulli_exp_neg to True: the series sampler's first factor
    fails immediately (K = 1, odd) whenever the draw is >= gamma/1, which
    holds for every gamma < 0.999999 used in these tests."""

    def random(self):
        return 0.999999


class AlwaysReject:
    """Drives bernoulli_exp_neg to False: succeed at k = 1, fail at k = 2,
    so the first factor stops at even K for any gamma > 0."""

    def __init__(self):
        self._flip = False

    def random(self):
        self._flip = not self._flip
        return 0.0 if self._flip else 0.999999


def full_hg(counts, ids=None, **kwargs):
    hg = HeavyGuardian(len(counts), **kwargs)
    rng = RngHandle(0)
    ids = list(range(len(counts))) if ids is None else ids
    for i in ids:
        hg.insert(i, rng)
    for slot, c in enumerate(counts):
        hg.counts[hg.pos[ids[slot]]] = float(c)
    return hg


class TestEdCases:
    def test_case1_hit_increments(self):
        hg = full_hg([7, 3, 2])
        assert hg.insert(0, RngHandle(1)) == HIT
        assert hg.counts[hg.pos[0]] == 8.0

    def test_case2_empty_slot(self):
        hg = HeavyGuardian(3)
        out = hg.insert(9, RngHandle(1))
        assert out == NEW_SLOT
        assert hg.ids[0] == 9 and hg.counts[0] == 1.0

    def test_case3_rejected_leaves_state(self):
        hg = full_hg([5, 8])
        before = (list(hg.ids), list(hg.counts))
        out = hg.insert(42, AlwaysReject())
        assert out == REJECTED
        assert (list(hg.ids), list(hg.counts)) == before

    def test_case3_decay_to_zero_replaces_with_count1(self):
        hg = full_hg([1, 8])
        out = hg.insert(42, AlwaysAccept())
        assert out.kind == "replaced" and out.old_id == 0 and out.new_id == 42
        assert hg.counts[hg.pos[42]] == 1.0

    def test_case3_no_replace_leaves_zero_visible(self):
        hg = full_hg([1, 8])
        out = hg.insert_no_replace(42, AlwaysAccept())
        assert out == DECAYED
        assert hg.weakest() == (0, 0.0)
        assert 42 not in hg.pos

    @pytest.mark.parametrize("c", [1, 5])
    def test_case3_decay_rate_matches_b_pow_minus_c(self, c):
        trials = 30_000
        rng = RngHandle(c)
        hg = HeavyGuardian(2)
        decays = 0
        for _ in range(trials):
            hg.ids = [0, 1]
            hg.counts = [float(c), float(c) + 5]
            hg.pos = {0: 0, 1: 1}
            hg._free = []
            decays += hg.insert_no_replace(2, rng).kind == "decayed"
        expect = 1.08 ** -c
        sigma = math.sqrt(expect * (1 - expect) / trials)
        assert abs(decays / trials - expect) <= 3 * sigma


class TestWeakest:
    def test_first_minimum_wins(self):
        assert full_hg([9, 3, 3]).weakest() == (1, 3.0)

    def test_single_slot(self):
        assert full_hg([5]).weakest() == (0, 5.0)

    def test_empty_raises(self):
        with pytest.raises(ValueError):
            HeavyGuardian(3).weakest()

    def test_weakest_low_thresholds(self):
        assert HeavyGuardian(2).weakest_low()            # empty slots count as low
        assert full_hg([1, 9]).weakest_low()
        assert full_hg([1.5, 9]).weakest_low() is False
        assert not full_hg([2, 9]).weakest_low()


class TestTopk:
    def test_sorted_by_count(self):
        hg = full_hg([10, 3, 7], ids=[100, 200, 300])
        assert hg.topk() == [(100, 10.0), (300, 7.0), (200, 3.0)]

    def test_empty(self):
        assert HeavyGuardian(4).topk() == []

    def test_tie_breaks_by_lower_id(self):
        hg = full_hg([5, 5], ids=[7, 3])  # higher id occupies the lower slot
        assert hg.topk() == [(3, 5.0), (7, 5.0)]


class TestLightPart:
    def test_requires_light_slots(self):
        with pytest.raises(ValueError):
            HeavyGuardian(2, light_len=0).light_insert(1, RngHandle(0))

    def test_hit_increments(self):
        hg = HeavyGuardian(2, light_len=2)
        rng = RngHandle(0)
        hg.light_insert(4, rng)
        hg.light_insert(4, rng)
        assert hg.light_insert(4, rng) == HIT
        assert hg.light_counts[hg.light_pos[4]] == 3

    def test_saturates_at_cap(self):
        hg = HeavyGuardian(2, light_len=1)
        rng = RngHandle(0)
        for _ in range(40):
            hg.light_insert(6, rng)
        assert hg.light_counts[hg.light_pos[6]] == 15

    def test_full_saturated_decay_fail_rejects(self):
        hg = HeavyGuardian(2, light_len=2)
        rng = RngHandle(0)
        for item in (1, 2):
            for _ in range(20):
                hg.light_insert(item, rng)
        out = hg.light_insert(3, AlwaysReject())
        assert out == REJECTED
        assert 3 not in hg.light_pos

    def test_empty_slot_installs(self):
        hg = HeavyGuardian(2, light_len=3)
        assert hg.light_insert(9, RngHandle(0)) == NEW_SLOT
        assert hg.light_counts[hg.light_pos[9]] == 1

    def test_decay_to_zero_replaces(self):
        hg = HeavyGuardian(2, light_len=1)
        hg.light_insert(1, RngHandle(0))
        out = hg.light_insert(2, AlwaysAccept())
        assert out.kind == "replaced" and out.new_id == 2
        assert hg.light_counts[hg.light_pos[2]] == 1

    def test_king_max_count(self):
        hg = HeavyGuardian(2, light_len=3)
        rng = RngHandle(0)
        for _ in range(4):
            hg.light_insert(10, rng)
        for _ in range(9):
            hg.light_insert(11, rng)
        assert hg.light_king() == 11

    def test_king_tie_breaks_by_slot_index(self):
        hg = HeavyGuardian(2, light_len=3)
        rng = RngHandle(0)
        for item in (10, 11):
            for _ in range(4):
                hg.light_insert(item, rng)
        assert hg.light_king() == 10

    def test_king_empty_light_is_none(self):
        assert HeavyGuardian(2, light_len=3).light_king() is None

    def test_heavy_install_clears_light_slot(self):
        hg = HeavyGuardian(2, light_len=2)
        rng = RngHandle(0)
        hg.light_insert(5, rng)
        hg.insert(5, rng)  # empty heavy slot takes it
        assert 5 in hg.pos and 5 not in hg.light_pos


class TestStructureBounds:
    def test_state_independent_of_domain(self):
        # the structure never learns the domain size at all; its footprint is
        # a function of (heavy_len, light_len) only
        hg = HeavyGuardian(20, light_len=5)
        rng = RngHandle(0)
        for v in [3, 999, 41_269, 7, 999_999]:
            hg.insert(v, rng)
        assert len(hg.ids) == 20 and len(hg.light_ids) == 5

    @given(st.lists(st.integers(min_value=0, max_value=30),
                    min_size=0, max_size=300),
           st.integers(min_value=0, max_value=2**32))
    @settings(max_examples=60, deadline=None)
    def test_raw_counts_never_exceed_events(self, stream, seed):
        hg = HeavyGuardian(4)
        rng = RngHandle(seed)
        for v in stream:
            hg.insert(v, rng)
        assert hg.sum_counts() <= hg.total_inserted
        assert len(hg.pos) <= 4
        assert len(set(i for i in hg.ids if i is not None)) == len(hg.pos)

    def test_replace_weakest_rejects_resident(self):
        hg = full_hg([2, 4])
        with pytest.raises(ValueError):
            hg.replace_weakest(0, 1.0)


class TestNonPrivateAccuracy:
    # Precision at this configuration is seed-sensitive at the rank-20
    # boundary (true counts there differ by < 2x and the early-stream slot
    # lottery is sticky); across seeds it lands in [0.90, 1.0]. The pinned
    # seeds document the deterministic fixture.
    def test_normal_stream_precision(self):
        from hgldp.datasets import StreamSpec, generate_stream
        from hgldp.metrics import ExactOracle, precision

        stream = generate_stream(StreamSpec("normal", 1000, 100_000, sigma=5.0),
                                 seed=2)
        oracle = ExactOracle(stream, 20, 1000)
        hg = HeavyGuardian(20, decay_base=1.08)
        rng = RngHandle(1)
        for v in stream.tolist():
            hg.insert(v, rng)
        assert precision(hg.topk(), oracle) >= 0.95

    def test_normal_stream_precision_floor_across_seeds(self):
        from hgldp.datasets import StreamSpec, generate_stream
        from hgldp.metrics import ExactOracle, precision

        for seed in range(4):
            stream = generate_stream(
                StreamSpec("normal", 1000, 100_000, sigma=5.0), seed=seed)
            oracle = ExactOracle(stream, 20, 1000)
            hg = HeavyGuardian(20, decay_base=1.08)
            rng = RngHandle(1)
            for v in stream.tolist():
                hg.insert(v, rng)
            assert precision(hg.topk(), oracle) >= 0.85


class TestHashedWrapper:
    def test_routing_is_deterministic(self):
        a = HashedHeavyGuardian(4, heavy_len=3, hash_seed=9)
        b = HashedHeavyGuardian(4, heavy_len=3, hash_seed=9)
        ra, rb = RngHandle(1), RngHandle(1)
        for v in range(50):
            a.insert(v, ra)
            b.insert(v, rb)
        assert a.topk() == b.topk()
        assert a.total_inserted == 50

    def test_single_bucket_matches_plain(self):
        wrapped = HashedHeavyGuardian(1, heavy_len=4)
        plain = HeavyGuardian(4)
        ra, rb = RngHandle(2), RngHandle(2)
        for v in [1, 2, 1, 3, 4, 5, 1, 2]:
            wrapped.insert(v, ra)
            plain.insert(v, rb)
        assert wrapped.topk() == plain.topk()
