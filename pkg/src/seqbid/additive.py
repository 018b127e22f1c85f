"""Backward induction over (stage, obtained-set, remaining-money) states.

Utility is additive, ``v(R) + f(d)``.  Remaining money is an explicit state
coordinate, so every bid satisfies ``z <= d`` and the resulting strategy is
budget-feasible by construction.  This is the slow exact baseline.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .errors import DomainError
from .model import MoneyUtility, ProblemInstance, check_instance
from .quasilinear import TIE_TOL


@dataclass(frozen=True)
class AStrategy:
    """``values[t][mask, d]`` and ``bids[t][mask, d]`` for ``d`` in ``0..m``."""

    values: tuple[np.ndarray, ...]
    bids: tuple[np.ndarray, ...]
    endowment: int
    money_utility: MoneyUtility
    fingerprint: str = ""

    mode = "additive"

    @property
    def n(self) -> int:
        return len(self.bids)

    @property
    def root_value(self) -> float:
        return float(self.values[0][0, self.endowment])

    @property
    def root_bid(self) -> int:
        return int(self.bids[0][0, self.endowment])

    def value(self, t: int, mask: int, d: int) -> float:
        return float(self.values[t][mask, d])

    def bid(self, t: int, mask: int, d: int) -> int:
        return int(self.bids[t][mask, d])

    def state_count(self, t: int) -> int:
        """Representable states at stage ``t``: every money level for non-empty
        sets, and only ``d = m`` for the empty set."""
        rows, cols = self.values[t].shape
        return (rows - 1) * cols + 1

    def bids_for(self, t, masks, paid):
        d = self.endowment - np.asarray(paid)
        if np.any(d < 0):
            raise DomainError("payment exceeds endowment")
        return self.bids[t][masks, d]


def additive_state_count(n: int, m: int, t: int) -> int:
    if not 0 <= t <= n or m < 0:
        raise DomainError(f"need 0 <= t <= n and m >= 0, got n={n}, m={m}, t={t}")
    return ((1 << t) - 1) * (m + 1) + 1


def _resolve_cap(instance: ProblemInstance, t: int, bid_cap) -> int:
    if bid_cap == "support":
        return instance.models[t].max_support
    if bid_cap == "valuation":
        # the cap used for the published runtime comparison: value of the best set
        return int(np.floor(instance.valuation.table.max()))
    return int(bid_cap)


def solve_additive(
    instance: ProblemInstance,
    m: Optional[int] = None,
    f: Optional[MoneyUtility] = None,
    bid_cap: Union[str, int] = "support",
) -> AStrategy:
    """Optimal strategy under the additive utility ``v(R) + f(d)``.

    ``m`` defaults to the instance endowment and ``f`` to its money utility.
    ``bid_cap`` limits the bids searched in each state besides ``z <= d``:
    ``"support"`` (largest opposing bid of the item, never loses optimality),
    ``"valuation"`` (largest set value) or an explicit integer.
    """
    check_instance(instance)
    if m is None:
        m = instance.endowment
    if m is None or m < 0:
        raise DomainError("additive solve needs an endowment m >= 0")
    m = int(m)
    f = f or instance.money_utility
    n = instance.n
    d = np.arange(m + 1)
    fd = np.asarray(f(d), dtype=float)
    values = [None] * (n + 1)
    bids = [None] * n
    values[n] = instance.valuation.table[:, None] + fd[None, :]
    for t in range(n - 1, -1, -1):
        nxt = values[t + 1]
        size = 1 << t
        lose, win = nxt[:size], nxt[size:]
        zc = min(m, max(0, _resolve_cap(instance, t, bid_cap)))
        cdf = instance.models[t].cdf(zc)
        best = cdf[0] * win + (1.0 - cdf[0]) * lose
        arg = np.zeros(best.shape, dtype=np.int64)
        for z in range(1, zc + 1):
            w = cdf[z]
            q = w * win[:, : m + 1 - z] + (1.0 - w) * lose[:, z:]
            cur = best[:, z:]
            # streaming form of the smallest-argmax rule; the full Q cube is too big
            better = q > cur + TIE_TOL
            np.copyto(cur, q, where=better)
            np.copyto(arg[:, z:], z, where=better)
        values[t] = best
        bids[t] = arg
    for arr in values + bids:
        arr.setflags(write=False)
    return AStrategy(tuple(values), tuple(bids), m, f, instance.fingerprint)
