import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hgldp.core import (
    GrrParams,
    PrivacyBudget,
    RngHandle,
    bernoulli_exp_neg,
    grr_params,
)


def binomial_3sigma(p: float, n: int) -> float:
    return 3 * math.sqrt(p * (1 - p) / n)


class TestGrrParams:
    def test_ln3_domain3(self):
        params = grr_params(math.log(3), 3)
        assert params.p == pytest.approx(0.6, abs=1e-12)
        assert params.q == pytest.approx(0.2, abs=1e-12)
        assert params.p + 2 * params.q == pytest.approx(1.0, abs=1e-12)

    def test_tiny_epsilon_is_uniform(self):
        params = grr_params(1e-12, 10)
        assert params.p == pytest.approx(0.1, abs=1e-9)
        assert params.q == pytest.approx(0.1, abs=1e-9)

    def test_eps1_domain1000(self):
        params = grr_params(1.0, 1000)
        e = math.e
        assert params.p == pytest.approx(e / (e + 999), rel=1e-12)
        assert params.q == pytest.approx(1 / (e + 999), rel=1e-12)
        assert params.p / params.q == pytest.approx(e, rel=1e-9)

    def test_noiseless(self):
        params = grr_params(math.inf, 50)
        assert (params.p, params.q) == (1.0, 0.0)
        assert params.noiseless

    @pytest.mark.parametrize("epsilon", [0.0, -1.0, math.nan])
    def test_rejects_bad_epsilon(self, epsilon):
        with pytest.raises(ValueError):
            grr_params(epsilon, 10)

    @pytest.mark.parametrize("d", [0, 1, -3, 2.5])
    def test_rejects_bad_domain(self, d):
        with pytest.raises(ValueError):
            grr_params(1.0, d)

    @given(epsilon=st.floats(min_value=0.1, max_value=10.0),
           d=st.sampled_from([2, 10, 1000]))
    @settings(max_examples=200, deadline=None)
    def test_distribution_normalizes(self, epsilon, d):
        params = grr_params(epsilon, d)
        assert abs(params.p + (d - 1) * params.q - 1.0) <= 1e-12
        assert params.p / params.q <= math.exp(epsilon) * (1 + 1e-9)


class TestPrivacyBudget:
    def test_split_recomposes_exactly(self):
        budget = PrivacyBudget.split(1.0, 0.5)
        assert budget.epsilon1 + budget.epsilon2 == budget.epsilon
        assert budget.epsilon1 / budget.epsilon2 == pytest.approx(0.5, rel=1e-12)

    def test_rejects_mismatched_split(self):
        with pytest.raises(ValueError):
            PrivacyBudget(1.0, 0.7, 0.4)

    def test_rejects_partial_split(self):
        with pytest.raises(ValueError):
            PrivacyBudget(1.0, 0.5, None)

    def test_noiseless_split(self):
        budget = PrivacyBudget.split(math.inf, 0.5)
        assert math.isinf(budget.epsilon1) and math.isinf(budget.epsilon2)


class TestBernoulliExpNeg:
    def test_gamma_zero_always_true(self):
        rng = RngHandle(1)
        assert all(bernoulli_exp_neg(0.0, rng) for _ in range(1000))

    @pytest.mark.parametrize("gamma", [-1.0, -1e-9, math.inf, math.nan])
    def test_rejects_bad_gamma(self, gamma):
        with pytest.raises(ValueError):
            bernoulli_exp_neg(gamma, RngHandle(1))

    @pytest.mark.parametrize("gamma,n", [(math.log(2), 1_000_000), (3.0, 1_000_000)])
    def test_empirical_rate(self, gamma, n):
        rng = RngHandle(12345)
        hits = sum(bernoulli_exp_neg(gamma, rng) for _ in range(n))
        expect = math.exp(-gamma)
        assert abs(hits / n - expect) <= binomial_3sigma(expect, n)

    def test_fractional_gamma_rate(self):
        rng = RngHandle(99)
        n = 200_000
        gamma = 0.35
        hits = sum(bernoulli_exp_neg(gamma, rng) for _ in range(n))
        assert abs(hits / n - math.exp(-gamma)) <= binomial_3sigma(math.exp(-gamma), n)


class TestRngHandle:
    def test_bit_exact_reproducibility(self):
        a, b = RngHandle(42), RngHandle(42)
        assert [a.random() for _ in range(100)] == [b.random() for _ in range(100)]
        assert [a.randrange(1000) for _ in range(100)] == \
               [b.randrange(1000) for _ in range(100)]

    def test_spawn_is_deterministic_and_distinct(self):
        root = RngHandle(7)
        assert root.spawn("client").seed == RngHandle(7).spawn("client").seed
        assert root.spawn("client").seed != root.spawn("server").seed
        assert root.spawn("client").random() != root.spawn("server").random()

    def test_spawn_does_not_disturb_parent(self):
        a, b = RngHandle(5), RngHandle(5)
        a.spawn("x")
        assert a.random() == b.random()

    def test_numpy_stream_deterministic(self):
        x = RngHandle(3).numpy().random(4)
        y = RngHandle(3).numpy().random(4)
        assert (x == y).all()

    def test_identical_perturbation_sequences(self):
        # determinism end to end: same seed, same call pattern, same draws
        def draws(seed):
            rng = RngHandle(seed)
            return [bernoulli_exp_neg(0.7, rng) for _ in range(500)]

        assert draws(11) == draws(11)
        assert draws(11) != draws(12)
