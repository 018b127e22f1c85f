"""Backward induction over (stage, obtained-set) states with quasi-linear utility.

Payment is charged as a transition cost, so remaining money never enters the
state and stage ``t`` holds exactly ``2**t`` states: the subsets of items
``0..t-1``.  Because item ``t`` is the highest bit at stage ``t``, the
lose-successor of mask ``s`` is ``s`` and the win-successor is ``s + 2**t``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .model import ProblemInstance, check_instance

# Q-values closer than this count as ties; ties go to the smaller bid.
TIE_TOL = 1e-9

# subsets per vectorised block when building a stage
_CHUNK = 1 << 15


class QState(NamedTuple):
    stage: int
    subset: int


@dataclass(frozen=True)
class QStrategy:
    """Optimal unconstrained strategy.

    ``values[t]`` has ``2**t`` entries for ``t = 0..n``; ``bids[t]`` has
    ``2**t`` entries for ``t = 0..n-1``.
    """

    values: tuple[np.ndarray, ...]
    bids: tuple[np.ndarray, ...]
    fingerprint: str = ""

    mode = "quasilinear"

    @property
    def n(self) -> int:
        return len(self.bids)

    @property
    def root_value(self) -> float:
        return float(self.values[0][0])

    def bid(self, state: QState) -> int:
        return int(self.bids[state.stage][state.subset])

    def value(self, state: QState) -> float:
        return float(self.values[state.stage][state.subset])

    def bids_for(self, t, masks, paid):
        return self.bids[t][masks]


def q_value(instance: ProblemInstance, next_values, state: QState, z: int) -> float:
    """Expected utility of bidding ``z`` in ``state`` given stage ``t+1`` values."""
    t, s = state
    w = instance.models[t].win_probability(z)
    v_win = float(next_values[s | (1 << t)])
    v_lose = float(next_values[s])
    return w * (v_win - z) + (1.0 - w) * v_lose


def bid_upper_bound(values, state: QState) -> int:
    """``floor(V_win - V_lose)`` clamped at 0; larger bids are dominated by bidding 0."""
    t, s = state
    nxt = values[t + 1]
    return _upper_bound(float(nxt[s | (1 << t)]) - float(nxt[s]))


def _upper_bound(delta):
    return max(0, math.floor(delta + TIE_TOL))


def best_bids(v_win: np.ndarray, v_lose: np.ndarray, cdf: np.ndarray, caps: np.ndarray):
    """Smallest maximising bid in ``0..caps[k]`` for each state ``k``.

    ``cdf[z]`` is the win probability of bid ``z``; ``cdf`` must cover
    ``0..caps.max()``.  Returns ``(bids, values)``.
    """
    caps = np.asarray(caps, dtype=np.int64)
    zmax = int(caps.max(initial=0))
    z = np.arange(zmax + 1)
    w = cdf[: zmax + 1]
    q = w[None, :] * (v_win[:, None] - z[None, :]) + (1.0 - w[None, :]) * v_lose[:, None]
    q[z[None, :] > caps[:, None]] = -np.inf
    best = q.max(axis=1)
    arg = np.argmax(q >= (best - TIE_TOL)[:, None], axis=1)
    return arg, q[np.arange(len(q)), arg]


def solve_quasilinear(instance: ProblemInstance) -> QStrategy:
    """Solve the unconstrained quasi-linear problem by value iteration."""
    check_instance(instance)
    n = instance.n
    values = [None] * (n + 1)
    bids = [None] * n
    values[n] = np.array(instance.valuation.table, dtype=float)
    for t in range(n - 1, -1, -1):
        nxt = values[t + 1]
        size = 1 << t
        support = instance.models[t].max_support
        cdf = instance.models[t].cdf(support)
        v_t = np.empty(size)
        b_t = np.empty(size, dtype=np.int64)
        for lo in range(0, size, _CHUNK):
            hi = min(size, lo + _CHUNK)
            v_lose = nxt[lo:hi]
            v_win = nxt[size + lo: size + hi]
            delta = np.floor(v_win - v_lose + TIE_TOL)
            caps = np.clip(delta, 0, support).astype(np.int64)
            b_t[lo:hi], v_t[lo:hi] = best_bids(v_win, v_lose, cdf, caps)
        values[t] = v_t
        bids[t] = b_t
    for arr in values + bids:
        arr.setflags(write=False)
    return QStrategy(tuple(values), tuple(bids), instance.fingerprint)


def table_size(strategy: QStrategy) -> int:
    return sum(len(v) for v in strategy.values)
