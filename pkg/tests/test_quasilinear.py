import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from seqbid import (BundleMax, OpponentBidModel, ProblemInstance, QState, bid_upper_bound,
                    q_value, solve_quasilinear)
from seqbid.errors import ValidationError
from seqbid.generators import random_instance
from seqbid.quasilinear import table_size

from oracles import expectimax_quasi, path_eval, win_prob


def test_q_value_fig1(fig1):
    pi = solve_quasilinear(fig1)
    assert q_value(fig1, pi.values[1], QState(0, 0), 1) == pytest.approx(0.5, abs=1e-12)
    assert q_value(fig1, pi.values[1], QState(0, 0), 0) == 0.0
    assert q_value(fig1, pi.values[2], QState(1, 0b01), 2) == pytest.approx(2.0, abs=1e-12)


def test_q_value_agrees_with_path_oracle(fig1):
    # bid z first, then continue with the optimal stage-1 bids
    pi = solve_quasilinear(fig1)
    for z in range(4):
        expected, _ = path_eval(fig1, lambda t, s, p: z if t == 0 else int(pi.bids[1][s]))
        assert q_value(fig1, pi.values[1], QState(0, 0), z) == pytest.approx(expected, abs=1e-12)


def test_bid_upper_bound_fig1(fig1):
    pi = solve_quasilinear(fig1)
    assert bid_upper_bound(pi.values, QState(1, 0b01)) == 4
    assert bid_upper_bound(pi.values, QState(1, 0)) == 0


def test_bid_upper_bound_equal_values():
    values = (np.zeros(1), np.array([3.0, 3.0]))
    assert bid_upper_bound(values, QState(0, 0)) == 0


def test_solve_fig1(fig1):
    pi = solve_quasilinear(fig1)
    assert pi.root_value == pytest.approx(0.5, abs=1e-9)
    assert pi.bid(QState(0, 0)) == 1
    assert pi.bid(QState(1, 0b01)) == 2
    assert pi.bid(QState(1, 0)) == 0


def test_zero_valuation_bids_nothing(fig1):
    inst = ProblemInstance.create(fig1.models, BundleMax(2, ()))
    pi = solve_quasilinear(inst)
    for t in range(2):
        assert not pi.bids[t].any()
    for v in pi.values:
        assert not v.any()


def test_invalid_instance_rejected(fig1):
    inst = ProblemInstance.create([OpponentBidModel((1,), (0.7,))] * 2, fig1.valuation)
    with pytest.raises(ValidationError):
        solve_quasilinear(inst)


def test_table_shapes(fig1):
    pi = solve_quasilinear(fig1)
    assert [len(v) for v in pi.values] == [1, 2, 4]
    assert table_size(pi) == 2 ** 3 - 1
    np.testing.assert_array_equal(pi.values[2], fig1.valuation.table)


seeds = st.integers(0, 2**32 - 1)


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_bellman_optimality_over_grid(seed):
    inst = random_instance(np.random.default_rng(seed), n_max=5)
    pi = solve_quasilinear(inst)
    for t in range(inst.n):
        support = inst.models[t].max_support
        for s in range(1 << t):
            state = QState(t, s)
            qs = [q_value(inst, pi.values[t + 1], state, z) for z in range(support + 1)]
            assert pi.value(state) >= max(qs) - 1e-9
            assert pi.value(state) == pytest.approx(qs[pi.bid(state)], abs=1e-12)
            # smallest maximiser
            assert all(q < max(qs) - 1e-9 for q in qs[: pi.bid(state)])
            assert pi.bid(state) <= min(bid_upper_bound(pi.values, state), support)


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_value_at_least_hold_value(seed):
    inst = random_instance(np.random.default_rng(seed), n_max=5)
    pi = solve_quasilinear(inst)
    for t in range(inst.n + 1):
        for s in range(1 << t):
            lower = _hold_value(inst, t, s)
            assert pi.values[t][s] >= lower - 1e-9


def _hold_value(inst, t, s):
    # expected value of bidding 0 from (t, s) onwards: exact by enumeration of free wins
    total = 0.0
    rest = range(t, inst.n)
    for extra in range(1 << len(rest)):
        p, mask = 1.0, s
        for k, i in enumerate(rest):
            w = win_prob(inst.models[i], 0)
            if extra >> k & 1:
                p *= w
                mask |= 1 << i
            else:
                p *= 1 - w
        total += p * inst.valuation.table[mask]
    return total


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_matches_expectimax(seed):
    inst = random_instance(np.random.default_rng(seed), n_max=3, support_max=6)
    cap = max(inst.max_supports)
    assert solve_quasilinear(inst).root_value == pytest.approx(expectimax_quasi(inst, cap), abs=1e-9)


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_monotone_valuation_value_dominates_holding(seed):
    inst = random_instance(np.random.default_rng(seed), n_max=6, explicit=False)
    pi = solve_quasilinear(inst)
    vt = inst.valuation.table
    for t in range(inst.n + 1):
        assert (pi.values[t] >= vt[: 1 << t] - 1e-9).all()
