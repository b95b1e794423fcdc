from fractions import Fraction
from itertools import combinations
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from compdof.assignment import GeneratorSpec, generate
from compdof.errors import BudgetExceededError
from compdof.search import (
    assignment_space_size,
    binary_entropy,
    epsilon_experiment,
    epsilon_threshold,
    eta_out_exact,
    eta_out_random,
    expansion_ratio,
    min_cooperation_order,
    min_neighbourhood_of_size,
)


class TestEtaOutExact:
    @pytest.mark.parametrize(
        "k, m", [(1, 1), (2, 1), (3, 1), (2, 2), (3, 2), (3, 3), (4, 1)]
    )
    def test_against_brute_force(self, k, m):
        r = eta_out_exact(k, m)
        assert r.best_value == oracles.eta_out(k, m)
        assert r.method == "exhaustive"
        assert r.trials_or_count == assignment_space_size(k, m)
        assert oracles.bound(k, r.best_assignment.transmit_sets)[0] == r.best_value

    def test_known_values(self):
        assert eta_out_exact(4, 1).best_value == 2
        assert eta_out_exact(3, 2).best_value == 2
        assert eta_out_exact(4, 4).best_value == 4

    def test_dedup_does_not_change_value(self):
        with_dedup = eta_out_exact(3, 2)
        without = eta_out_exact(3, 2, dedup=False)
        assert with_dedup.best_value == without.best_value
        assert with_dedup.dedup_hits > 0 and without.dedup_hits == 0

    def test_monotone_in_m(self):
        values = [eta_out_exact(4, m).best_value for m in range(1, 5)]
        assert values == sorted(values)
        assert values[-1] == 4

    def test_cap(self):
        with pytest.raises(BudgetExceededError, match="capped"):
            eta_out_exact(5, 2)
        with pytest.raises(BudgetExceededError):
            eta_out_exact(7, 1)

    def test_budget_gives_partial(self):
        with pytest.raises(BudgetExceededError) as info:
            eta_out_exact(4, 3, budget=50)
        partial = info.value.partial
        assert partial.method == "random" and partial.trials_or_count == 50
        assert 0 < partial.best_value <= 4

    def test_bad_arguments(self):
        with pytest.raises(ValueError):
            eta_out_exact(3, 4)


class TestEtaOutRandom:
    def test_below_exact(self):
        for k, m in [(3, 2), (4, 2), (4, 3)]:
            exact = eta_out_exact(k, m).best_value
            for gen in ("matching_union", "uniform_random"):
                assert eta_out_random(k, m, 50, seed=1, generator=gen).best_value <= exact

    def test_deterministic(self):
        a = eta_out_random(12, 3, 20, seed=5)
        b = eta_out_random(12, 3, 20, seed=5)
        assert a.best_value == b.best_value and a.best_assignment == b.best_assignment
        assert a.trials_or_count == 20 and a.seed == 5

    def test_include_full_cooperation(self):
        full = generate(GeneratorSpec("full", 8))
        r = eta_out_random(8, 8, 5, seed=0, include=[full])
        assert r.best_value == 8 and r.best_assignment == full
        assert r.trials_or_count == 6

    def test_ratio(self):
        r = eta_out_random(10, 2, 10, seed=0)
        assert r.ratio == Fraction(r.best_value, 10)

    def test_errors(self):
        with pytest.raises(ValueError):
            eta_out_random(4, 2, 1, generator="successive")
        with pytest.raises(BudgetExceededError):
            eta_out_random(30, 2, 1)
        with pytest.raises(ValueError):
            eta_out_random(4, 2, 1, include=[generate(GeneratorSpec("full", 5))])


class TestExpansionRatio:
    def test_identity(self):
        r = expansion_ratio(generate(GeneratorSpec("identity", 8)), [Fraction(1, 2)])
        assert r == {Fraction(1, 2): 1}

    def test_full(self):
        r = expansion_ratio(generate(GeneratorSpec("full", 8)), [Fraction(1, 4)])
        assert r == {Fraction(1, 4): 4}

    def test_matching_union_expands(self):
        a = generate(GeneratorSpec("matching_union", 16, 3), seed=0)
        r = expansion_ratio(a)
        assert set(r) == {Fraction(1, 8), Fraction(1, 4), Fraction(3, 8), Fraction(1, 2)}
        assert all(v >= 1 for v in r.values())
        assert r[Fraction(1, 8)] > 1

    def test_odd_k_half(self):
        r = expansion_ratio(generate(GeneratorSpec("identity", 7)), [Fraction(1, 2)])
        assert r == {Fraction(1, 2): 1}

    @pytest.mark.parametrize("alpha", [Fraction(0), Fraction(3, 4), Fraction(1, 100)])
    def test_bad_alpha(self, alpha):
        with pytest.raises(ValueError):
            expansion_ratio(generate(GeneratorSpec("identity", 8)), [alpha])


class TestEpsilon:
    def test_threshold_values(self):
        assert epsilon_threshold(Fraction(1, 2)) == pytest.approx(4.0, abs=1e-12)
        assert epsilon_threshold(Fraction(1, 4)) == pytest.approx(15.6377, abs=1e-4)
        assert min_cooperation_order(Fraction(1, 2)) == 5
        assert min_cooperation_order(Fraction(1, 4)) == 16

    def test_threshold_large_eps(self):
        assert 0 < epsilon_threshold(0.9) < 1

    @pytest.mark.parametrize("eps", [0, 1, Fraction(-1, 2), 2])
    def test_threshold_domain(self, eps):
        with pytest.raises(ValueError):
            epsilon_threshold(eps)

    def test_entropy(self):
        assert binary_entropy(0.5) == 1.0 and binary_entropy(0) == 0.0

    @settings(max_examples=40, deadline=None)
    @given(st.integers(1, 10), st.integers(0, 2**32))
    def test_min_neighbourhood_matches_oracle(self, k, seed):
        a = generate(GeneratorSpec("uniform_random", k, min(3, k)), seed)
        e = oracles.profile(k, a.transmit_sets)
        for size in range(k + 1):
            assert min_neighbourhood_of_size(a, size) == e[size]

    def test_min_neighbourhood_large_k_path(self):
        a = generate(GeneratorSpec("matching_union", 22, 2), seed=3)
        got = min_neighbourhood_of_size(a, 2)
        want = min(len(oracles.carried(a.transmit_sets, s)) for s in combinations(range(1, 23), 2))
        assert got == want

    def test_experiment_against_brute_force(self):
        exp = epsilon_experiment(4, 4, Fraction(1, 2), trials=10, seed=2)
        spec = GeneratorSpec("matching_union", 4, 4)
        for t in range(10):
            a = generate(spec, 2, trial=t)
            e2 = oracles.profile(4, a.transmit_sets)[2]
            assert exp.success_per_trial[t] == (e2 > 2)
            assert exp.min_ratio_per_trial[t] == Fraction(e2, 2)
        assert exp.successes == sum(exp.success_per_trial)

    def test_m1_never_succeeds(self):
        assert epsilon_experiment(6, 1, Fraction(1, 2), trials=5).successes == 0

    def test_m5_succeeds(self):
        assert epsilon_experiment(12, 5, Fraction(1, 2), trials=5, seed=1).successes >= 1

    def test_errors(self):
        with pytest.raises(ValueError, match="not an integer"):
            epsilon_experiment(5, 2, Fraction(1, 2), trials=1)
        with pytest.raises(BudgetExceededError):
            epsilon_experiment(40, 5, Fraction(1, 2), trials=1)
        assert comb(40, 20) > 10**6
