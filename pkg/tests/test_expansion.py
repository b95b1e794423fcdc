from math import ceil

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from compdof.assignment import GeneratorSpec, MessageAssignment, generate
from compdof.errors import (
    BudgetExceededError,
    IndexRangeError,
    InvalidAssignmentError,
    MalformedProfileError,
    UnderdeterminedError,
)
from compdof.expansion import (
    ExpansionProfile,
    carried_messages,
    dof_upper_bound,
    expansion_profile,
    i_min_of_profile,
    numerical_rank,
    reconstruction_check,
)

CYCLIC = MessageAssignment(3, 2, [{1, 2}, {2, 3}, {3, 1}])
FIVE_USER = MessageAssignment(5, 2, [{1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}])


def identity(k):
    return generate(GeneratorSpec("identity", k))


@st.composite
def assignments(draw, max_k=8):
    k = draw(st.integers(1, max_k))
    m = draw(st.integers(1, k))
    sets = [
        draw(st.sets(st.integers(1, k), min_size=1, max_size=m)) for _ in range(k)
    ]
    return MessageAssignment(k, m, sets)


class TestCarried:
    def test_empty_set(self):
        assert carried_messages(CYCLIC, set()) == frozenset()

    def test_full_cooperation(self):
        full = generate(GeneratorSpec("full", 4))
        assert carried_messages(full, {1}) == {1, 2, 3, 4}

    def test_five_user(self):
        assert carried_messages(FIVE_USER, {1, 2}) == {1, 2, 3}

    def test_out_of_range(self):
        with pytest.raises(IndexRangeError):
            carried_messages(CYCLIC, {0, 1})

    @given(assignments(), st.data())
    def test_matches_definition(self, a, data):
        s = data.draw(st.sets(st.integers(1, a.k)))
        assert carried_messages(a, s) == oracles.carried(a.transmit_sets, s)


class TestProfile:
    def test_identity(self):
        assert expansion_profile(identity(4)).e == (0, 1, 2, 3, 4)

    def test_cyclic(self):
        assert oracles.profile(3, CYCLIC.transmit_sets) == (0, 2, 3, 3)
        assert expansion_profile(CYCLIC).e == (0, 2, 3, 3)

    def test_sampled_identity_is_exact(self):
        p = expansion_profile(identity(4), "sampled", samples_per_size=2, seed=11)
        assert p.e == (0, 1, 2, 3, 4) and p.mode == "sampled"

    def test_sampled_on_large_k(self):
        a = generate(GeneratorSpec("matching_union", 40, 3), seed=4)
        p = expansion_profile(a, "sampled", samples_per_size=50, seed=4)
        assert p.e[0] == 0 and p.e[-1] == 40
        assert all(x <= y for x, y in zip(p.e, p.e[1:]))

    def test_sampled_reproducible(self):
        a = generate(GeneratorSpec("uniform_random", 14, 3), seed=8)
        p1 = expansion_profile(a, "sampled", 30, seed=3)
        assert p1 == expansion_profile(a, "sampled", 30, seed=3)

    def test_exact_cap(self):
        with pytest.raises(BudgetExceededError, match="sampled"):
            expansion_profile(identity(25))
        with pytest.raises(BudgetExceededError):
            expansion_profile(identity(6), cap=5)

    def test_invalid_input(self):
        with pytest.raises(InvalidAssignmentError):
            expansion_profile(MessageAssignment(2, 1, [{1}, set()]))

    @settings(max_examples=120, deadline=None)
    @given(assignments())
    def test_matches_oracle(self, a):
        e = expansion_profile(a).e
        assert e == oracles.profile(a.k, a.transmit_sets)
        assert e[0] == 0 and e[1] <= a.m
        assert all(x <= y for x, y in zip(e, e[1:]))

    @settings(max_examples=80, deadline=None)
    @given(assignments(max_k=10), st.integers(1, 20), st.integers(0, 2**32))
    def test_sampled_dominates_exact(self, a, samples, seed):
        exact = expansion_profile(a).e
        sampled = expansion_profile(a, "sampled", samples, seed).e
        assert all(s >= x for s, x in zip(sampled, exact))
        assert all(x <= y for x, y in zip(sampled, sampled[1:]))


class TestBound:
    def test_identity(self):
        b = dof_upper_bound(identity(4))
        assert (b.value, b.i_min, b.witness_set) == (2, 2, {1, 2})

    def test_cyclic(self):
        b = dof_upper_bound(CYCLIC)
        assert (b.value, b.witness_set) == (2, {1})
        assert oracles.bound(3, CYCLIC.transmit_sets) == (2, {1})

    def test_single_active_transmitter(self):
        b = dof_upper_bound(MessageAssignment(4, 1, [{1}] * 4))
        assert (b.value, b.witness_set, b.i_min) == (1, {2, 3, 4}, 3)

    def test_k1(self):
        b = dof_upper_bound(MessageAssignment(1, 1, [{1}]))
        assert (b.value, b.witness_set, b.i_min) == (1, frozenset(), 0)

    def test_lexicographic_tiebreak(self):
        # only {1,4} and {2,3} attain B=2; {1,4} is lexicographically first
        # even though its mask (0b1001) is larger than that of {2,3}
        a = MessageAssignment(4, 2, [{1, 4}, {1, 4}, {2, 3}, {2, 3}])
        assert oracles.bound(4, a.transmit_sets) == (2, {1, 4})
        b = dof_upper_bound(a)
        assert (b.value, b.witness_set) == (2, {1, 4})

    @settings(max_examples=150, deadline=None)
    @given(assignments(max_k=9))
    def test_matches_oracle_and_profile(self, a):
        b = dof_upper_bound(a)
        value, witness = oracles.bound(a.k, a.transmit_sets)
        assert (b.value, set(b.witness_set)) == (value, witness)
        assert b.value == max(len(carried_messages(a, b.witness_set)), a.k - len(b.witness_set))
        assert 0 <= b.value <= a.k
        assert i_min_of_profile(expansion_profile(a)) == (b.i_min, b.value)

    @settings(max_examples=80, deadline=None)
    @given(assignments(max_k=9), st.data())
    def test_monotone_under_edge_addition(self, a, data):
        i = data.draw(st.integers(1, a.k))
        j = data.draw(st.integers(1, a.k))
        bigger = a.with_edge(i, j, m=a.k)
        e0, e1 = expansion_profile(a).e, expansion_profile(bigger).e
        assert all(x <= y for x, y in zip(e0, e1))
        assert dof_upper_bound(a).value <= dof_upper_bound(bigger).value

    @settings(max_examples=60, deadline=None)
    @given(assignments(max_k=10))
    def test_self_inclusion(self, a):
        sets = [t | {i} for i, t in enumerate(a.transmit_sets, start=1)]
        b = MessageAssignment(a.k, a.k, sets)
        assert dof_upper_bound(b).value >= ceil(a.k / 2)

    def test_large_k_runs(self):
        a = generate(GeneratorSpec("matching_union", 20, 3), seed=1)
        b = dof_upper_bound(a)
        assert b.value == max(len(carried_messages(a, b.witness_set)), 20 - len(b.witness_set))
        assert i_min_of_profile(expansion_profile(a))[1] == b.value


class TestIMin:
    def test_identity(self):
        assert i_min_of_profile(expansion_profile(identity(4))) == (2, 2)

    def test_cyclic(self):
        assert i_min_of_profile(ExpansionProfile(3, (0, 2, 3, 3))) == (1, 2)

    def test_all_zero(self):
        assert i_min_of_profile(ExpansionProfile(3, (0, 0, 0, 0))) == (3, 0)

    @pytest.mark.parametrize(
        "e", [(0, 2, 1, 3), (1, 2, 3, 3), (0, 1, 2), (0, 1, 2, 4), (0, -1, 2, 3)]
    )
    def test_malformed(self, e):
        with pytest.raises(MalformedProfileError):
            i_min_of_profile(ExpansionProfile(3, e))


class TestReconstruction:
    def test_five_user_sets(self):
        assert reconstruction_check(5, {1, 2}, {1, 2, 3}, trials=100, seed=0)

    def test_square(self):
        assert reconstruction_check(4, set(), {1, 2, 3, 4}, trials=50, seed=3)

    def test_nothing_unknown(self):
        assert reconstruction_check(3, {1, 2, 3}, set(), trials=5)

    def test_underdetermined(self):
        with pytest.raises(UnderdeterminedError, match="underdetermined"):
            reconstruction_check(5, {1, 2}, {1, 2})

    def test_range(self):
        with pytest.raises(IndexRangeError):
            reconstruction_check(3, {4}, {1, 2, 3})

    @settings(max_examples=60, deadline=None)
    @given(st.integers(1, 7), st.data(), st.integers(0, 2**32))
    def test_generic_full_rank(self, k, data, seed):
        s = data.draw(st.sets(st.integers(1, k)))
        a = data.draw(st.sets(st.integers(1, k), min_size=k - len(s)))
        assert reconstruction_check(k, s, a, trials=5, seed=seed)


class TestNumericalRank:
    @pytest.mark.parametrize(
        "rows",
        [
            [[1, 2], [2, 4]],
            [[0, 0], [0, 0]],
            [[1, 0, 0], [0, 1, 0], [1, 1, 0]],
            [[3, 1, 4], [1, 5, 9], [2, 6, 5], [3, 5, 8]],
            [[0, 1], [0, 2], [0, 0]],
        ],
    )
    def test_against_exact_rank(self, rows):
        assert numerical_rank(np.array(rows)) == oracles.gauss_rank(rows)

    @settings(max_examples=60, deadline=None)
    @given(st.integers(1, 6), st.integers(1, 6), st.integers(0, 5), st.integers(0, 2**32))
    def test_against_svd(self, r, c, deficit, seed):
        rng = np.random.default_rng(seed)
        rank = max(0, min(r, c) - deficit)
        a = rng.standard_normal((r, rank)) @ rng.standard_normal((rank, c))
        assert numerical_rank(a) == np.linalg.matrix_rank(a) == rank
