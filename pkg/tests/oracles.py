"""Slow, independent reference computations used only by the tests.

Nothing here calls the package solvers: win probabilities are summed from
the raw pmf pairs, valuations are looked up by scanning bundles, and all
recursion is plain Python.
"""
from functools import lru_cache

from seqbid.model import BundleMax


def win_prob(model, z):
    return sum(p for v, p in zip(model.values, model.probs) if v <= z)


def value_of(valuation, mask):
    if isinstance(valuation, BundleMax):
        return max([0.0] + [v for b, v in valuation.bundles if b & mask == b])
    return valuation.values[mask]


def path_eval(instance, bid_fn, utility="quasilinear", m=None):
    """Expected utility and max positive-probability payment by DFS over outcomes.

    ``bid_fn(t, mask, paid)`` gives the bid.
    """
    n = instance.n
    total = 0.0
    max_pay = 0

    def rec(t, mask, paid, prob):
        nonlocal total, max_pay
        if t == n:
            v = value_of(instance.valuation, mask)
            u = v - paid if utility == "quasilinear" else v + (m - paid)
            total += prob * u
            max_pay = max(max_pay, paid)
            return
        z = bid_fn(t, mask, paid)
        w = win_prob(instance.models[t], z)
        if w > 0:
            rec(t + 1, mask | (1 << t), paid + z, prob * w)
        if w < 1:
            rec(t + 1, mask, paid, prob * (1 - w))

    rec(0, 0, 0, 1.0)
    return total, max_pay


def expectimax_quasi(instance, cap):
    """Best quasi-linear value over all bids ``0..cap`` in every state."""
    n = instance.n

    @lru_cache(maxsize=None)
    def v(t, mask):
        if t == n:
            return value_of(instance.valuation, mask)
        best = -float("inf")
        for z in range(cap + 1):
            w = win_prob(instance.models[t], z)
            best = max(best, w * (v(t + 1, mask | 1 << t) - z) + (1 - w) * v(t + 1, mask))
        return best

    return v(0, 0)


def expectimax_additive(instance, m):
    """Best additive value (f = identity) over every bid ``z <= d``."""
    n = instance.n

    @lru_cache(maxsize=None)
    def v(t, mask, d):
        if t == n:
            return value_of(instance.valuation, mask) + d
        best = -float("inf")
        for z in range(d + 1):
            w = win_prob(instance.models[t], z)
            best = max(best, w * v(t + 1, mask | 1 << t, d - z) + (1 - w) * v(t + 1, mask, d))
        return best

    return v(0, 0, m)


def reachable_additive_states(n, m, t):
    """All (mask, d) at stage t reachable from (0, m) with any bids z <= d."""
    frontier = {(0, m)}
    for i in range(t):
        nxt = set()
        for mask, d in frontier:
            nxt.add((mask, d))
            for z in range(d + 1):
                nxt.add((mask | 1 << i, d - z))
        frontier = nxt
    return frontier
