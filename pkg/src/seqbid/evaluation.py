"""Ground-truth evaluation of bidding policies.

A policy is any object with ``bids_for(t, masks, paid)`` returning the bid
for each (obtained-set, payment-so-far) pair at stage ``t``, vectorised over
numpy arrays.  Every strategy type in the package satisfies this, and
:class:`FunctionPolicy` adapts a plain function.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Union

import numpy as np

from .errors import CapacityError, DomainError
from .model import MoneyUtility, ProblemInstance, check_instance
from .quasilinear import QStrategy

MAX_EXACT_ITEMS = 20
MAX_BRUTE_FORCE_ITEMS = 3
MAX_BRUTE_FORCE_POLICIES = 10**7


@dataclass(frozen=True)
class AdditiveUtility:
    """Terminal utility ``v(R) + f(m - payments)``."""

    m: int
    f: MoneyUtility = MoneyUtility.identity()


QUASILINEAR = "quasilinear"
UtilityMode = Union[str, AdditiveUtility]


class FunctionPolicy:
    """Policy from ``fn(t, mask, paid) -> bid``."""

    def __init__(self, fn: Callable[[int, int, int], int], n: Optional[int] = None):
        self.fn = fn
        self.n = n

    def bids_for(self, t, masks, paid):
        return np.array([self.fn(t, int(s), int(p)) for s, p in zip(masks, paid)], dtype=np.int64)


def zero_policy(n=None) -> FunctionPolicy:
    return FunctionPolicy(lambda t, s, p: 0, n)


@dataclass(frozen=True)
class EvalReport:
    expected_utility: float
    max_payment: int
    path_count: int
    probability_total: float
    bundle_probabilities: Optional[np.ndarray] = None

    def summary(self) -> str:
        return (f"expected_utility={self.expected_utility:.12g} max_payment={self.max_payment} "
                f"paths={self.path_count}")

    def to_dict(self) -> dict:
        return {
            "expected_utility": self.expected_utility,
            "max_payment": self.max_payment,
            "path_count": self.path_count,
            "probability_total": self.probability_total,
        }


@dataclass(frozen=True)
class MCReport:
    mean: float
    std_error: float
    samples: int
    seed: int

    def summary(self) -> str:
        return f"mean={self.mean:.12g} std_error={self.std_error:.6g} samples={self.samples} seed={self.seed}"

    def to_dict(self) -> dict:
        return {"mean": self.mean, "std_error": self.std_error, "samples": self.samples, "seed": self.seed}


def _policy_bids(policy, t, masks, paid) -> np.ndarray:
    b = np.asarray(policy.bids_for(t, masks, paid), dtype=np.int64)
    if b.shape != masks.shape:
        b = np.broadcast_to(b, masks.shape)
    if np.any(b < 0):
        raise DomainError(f"policy produced a negative bid at stage {t}")
    return b


def _win_prob(model, bids: np.ndarray) -> np.ndarray:
    return model.cdf(int(bids.max(initial=0)))[bids]


def _terminal_utility(instance, masks, paid, utility: UtilityMode) -> np.ndarray:
    v = instance.valuation.table[masks]
    if isinstance(utility, AdditiveUtility):
        return v + np.asarray(utility.f(utility.m - paid), dtype=float)
    if utility != QUASILINEAR:
        raise DomainError(f"unknown utility mode {utility!r}")
    return v - paid


def exact_eval(instance: ProblemInstance, policy, utility: UtilityMode = QUASILINEAR,
               diagnostics: bool = False) -> EvalReport:
    """Expected utility by enumerating all ``2**n`` win/lose outcome vectors.

    ``max_payment`` is taken over paths of positive probability only.
    """
    check_instance(instance)
    n = instance.n
    if n > MAX_EXACT_ITEMS:
        raise CapacityError(f"exact evaluation enumerates 2^{n} paths; use monte_carlo")
    masks = np.zeros(1, dtype=np.int64)
    paid = np.zeros(1, dtype=np.int64)
    prob = np.ones(1)
    possible = np.ones(1, dtype=bool)
    for t in range(n):
        b = _policy_bids(policy, t, masks, paid)
        w = _win_prob(instance.models[t], b)
        masks = np.concatenate([masks, masks | (1 << t)])
        paid = np.concatenate([paid, paid + b])
        prob = np.concatenate([prob * (1.0 - w), prob * w])
        possible = np.concatenate([possible & (w < 1.0), possible & (w > 0.0)])
    util = _terminal_utility(instance, masks, paid, utility)
    expected = math.fsum((prob * util).tolist())
    return EvalReport(
        expected_utility=expected,
        max_payment=int(paid[possible].max()),
        path_count=len(masks),
        probability_total=math.fsum(prob.tolist()),
        bundle_probabilities=prob if diagnostics else None,
    )


def monte_carlo(instance: ProblemInstance, policy, samples: int, seed: int,
                utility: UtilityMode = QUASILINEAR) -> MCReport:
    """Estimate expected utility by simulating ``samples`` auction sequences.

    Highest opposing bids are drawn by inverse-CDF lookup from uniforms of
    numpy's PCG64 generator seeded with ``seed``, one vector of ``samples``
    uniforms per item in auction order, so results are reproducible.
    """
    check_instance(instance)
    if samples < 1:
        raise DomainError("samples must be >= 1")
    rng = np.random.Generator(np.random.PCG64(seed))
    masks = np.zeros(samples, dtype=np.int64)
    paid = np.zeros(samples, dtype=np.int64)
    for t, model in enumerate(instance.models):
        cum = np.cumsum(model.probs)
        idx = np.minimum(np.searchsorted(cum, rng.random(samples), side="right"), len(cum) - 1)
        highest = np.asarray(model.values, dtype=np.int64)[idx]
        b = _policy_bids(policy, t, masks, paid)
        win = b >= highest
        masks = np.where(win, masks | (1 << t), masks)
        paid = paid + np.where(win, b, 0)
    util = _terminal_utility(instance, masks, paid, utility)
    if np.all(util == util[0]):
        return MCReport(float(util[0]), 0.0, samples, seed)
    mean = math.fsum(util.tolist()) / samples
    se = float(np.std(util, ddof=1) / math.sqrt(samples))
    return MCReport(mean, se, samples, seed)


def brute_force_optimal(instance: ProblemInstance, bid_grid_cap: int):
    """Best quasi-linear policy by trying every bid table over ``0..bid_grid_cap``.

    Returns ``(value, strategy)`` where ``strategy`` is a :class:`QStrategy`
    holding the best table found (first in enumeration order on ties).
    """
    from .budget import policy_values

    check_instance(instance)
    n = instance.n
    n_states = (1 << n) - 1
    radix = bid_grid_cap + 1
    total = radix ** n_states
    if n > MAX_BRUTE_FORCE_ITEMS or total > MAX_BRUTE_FORCE_POLICIES:
        raise CapacityError(f"{total} bid tables over {n} items is too many to enumerate")
    cdfs = [m.cdf(bid_grid_cap) for m in instance.models]
    vals = instance.valuation.table
    best_value, best_index = -math.inf, 0
    chunk = 1 << 18
    for lo in range(0, total, chunk):
        idx = np.arange(lo, min(total, lo + chunk), dtype=np.int64)
        # column j holds the bid for state j, states ordered (t, mask)
        table = np.empty((len(idx), n_states), dtype=np.int64)
        rest = idx.copy()
        for j in range(n_states):
            table[:, j] = rest % radix
            rest //= radix
        eu = np.zeros(len(idx))
        for outcome in range(1 << n):
            prob = np.ones(len(idx))
            paid = np.zeros(len(idx), dtype=np.int64)
            for t in range(n):
                b = table[:, (1 << t) - 1 + (outcome & ((1 << t) - 1))]
                w = cdfs[t][b]
                if outcome >> t & 1:
                    prob *= w
                    paid += b
                else:
                    prob *= 1.0 - w
            eu += prob * (vals[outcome] - paid)
        k = int(np.argmax(eu))
        if eu[k] > best_value:
            best_value, best_index = float(eu[k]), lo + k
    bids = []
    rest = best_index
    for t in range(n):
        row = np.empty(1 << t, dtype=np.int64)
        for s in range(1 << t):
            row[s] = rest % radix
            rest //= radix
        bids.append(row)
    values = policy_values(instance, bids)
    return best_value, QStrategy(tuple(values), tuple(bids), instance.fingerprint)
