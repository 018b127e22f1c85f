"""Budget-constrained bidding derived from the unconstrained strategy.

Two policies are provided:

* the prorated strategy, a second backward pass in which the bid of every
  state is capped by a share of the budget left over after the worst-case
  future payments, the share being proportional to the unconstrained bids
  already paid on the path to the state;
* the trivial policy, which follows the unconstrained bids but never bids more
  than the money it has left.

Neither is optimal in general; ``solve_additive(m=budget)`` is the exact
reference.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, MismatchError, SequencingError
from .model import ProblemInstance
from .quasilinear import QState, QStrategy, best_bids


def prepayment(pi: QStrategy, state: QState) -> int:
    """Sum of the unconstrained bids paid on the path from the root to ``state``.

    The path is unique: the agent won exactly the items in ``state.subset``.
    The bid placed in ``state`` itself is not included.
    """
    t, s = state
    total = 0
    for i in range(t):
        if s >> i & 1:
            total += int(pi.bids[i][s & ((1 << i) - 1)])
    return total


def prepayment_table(bids, n: int) -> list[np.ndarray]:
    """Path payments to every state of stages ``0..n`` under ``bids``."""
    paid = [np.zeros(1, dtype=np.int64)]
    for t in range(n):
        paid.append(np.concatenate([paid[t], paid[t] + bids[t]]))
    return paid


def _future_payments(bids, n: int) -> list[np.ndarray]:
    # worst-case sum of bids from each state on; every placed bid counts as payable
    out = [None] * (n + 1)
    out[n] = np.zeros(1 << n, dtype=np.int64)
    for t in range(n - 1, -1, -1):
        size = 1 << t
        out[t] = np.maximum(out[t + 1][:size], bids[t] + out[t + 1][size:])
    return out


def proration_cap(z_opt, z_pre, z_past, budget):
    """Integer bid cap ``floor(z_opt * (budget - z_past) / (z_pre + z_opt))``.

    The cap is 0 where ``z_opt`` is 0 or the remaining budget is negative.
    Works elementwise on arrays.
    """
    z_opt = np.asarray(z_opt, dtype=np.int64)
    denom = np.asarray(z_pre, dtype=np.int64) + z_opt
    num = z_opt * (budget - np.asarray(z_past, dtype=np.int64))
    cap = np.floor_divide(num, np.where(denom == 0, 1, denom))
    return np.where(z_opt == 0, 0, np.maximum(cap, 0))


@dataclass(frozen=True)
class ProratedStrategy:
    bids: tuple[np.ndarray, ...]
    values: tuple[np.ndarray, ...]
    caps: tuple[np.ndarray, ...]
    budget: int
    certified_max_payment: int
    clamped_states: int
    fingerprint: str = ""

    mode = "prorated"

    @property
    def n(self) -> int:
        return len(self.bids)

    @property
    def feasible(self) -> bool:
        return self.certified_max_payment <= self.budget

    @property
    def root_value(self) -> float:
        return float(self.values[0][0])

    def bid(self, state: QState) -> int:
        return int(self.bids[state.stage][state.subset])

    def bids_for(self, t, masks, paid):
        return self.bids[t][masks]


class ProratedPass:
    """Backward pass state; :meth:`step` adjusts one stage, last stage first."""

    def __init__(self, instance: ProblemInstance, pi: QStrategy, budget: int):
        if pi.fingerprint != instance.fingerprint:
            raise MismatchError("strategy was solved on a different instance")
        if budget < 0:
            raise DomainError("budget must be >= 0")
        self.instance = instance
        self.pi = pi
        self.budget = int(budget)
        n = instance.n
        self.n = n
        self.prepaid = prepayment_table(pi.bids, n)
        self.values = [None] * (n + 1)
        self.bids = [None] * n
        self.caps = [None] * n
        self.future = [None] * (n + 1)
        self.values[n] = np.array(instance.valuation.table, dtype=float)
        self.future[n] = np.zeros(1 << n, dtype=np.int64)
        self.adjusted_from = n

    @property
    def done(self) -> bool:
        return self.adjusted_from == 0

    def step(self) -> None:
        if self.done:
            raise SequencingError("all stages already adjusted")
        t = self.adjusted_from - 1
        size = 1 << t
        model = self.instance.models[t]
        z_opt = self.pi.bids[t]
        z_past = self.future[t + 1][size:]
        caps = proration_cap(z_opt, self.prepaid[t], z_past, self.budget)
        support = model.max_support
        search = np.minimum(caps, support)
        nxt = self.values[t + 1]
        bids, vals = best_bids(nxt[size:], nxt[:size], model.cdf(support), search)
        self.bids[t] = bids
        self.values[t] = vals
        self.caps[t] = caps
        self.future[t] = np.maximum(self.future[t + 1][:size], bids + self.future[t + 1][size:])
        self.adjusted_from = t

    def max_future_payment(self, state: QState) -> int:
        t, s = state
        if t < self.adjusted_from:
            raise SequencingError(f"stage {t} not adjusted yet (adjusted from stage {self.adjusted_from})")
        return int(self.future[t][s])

    def finish(self) -> ProratedStrategy:
        """Clamp bids that could overrun the budget, then re-evaluate."""
        if not self.done:
            raise SequencingError("backward pass incomplete")
        n = self.n
        bids = [b.copy() for b in self.bids]
        paid = np.zeros(1, dtype=np.int64)
        clamped = 0
        for t in range(n):
            room = self.budget - paid
            over = bids[t] > room
            clamped += int(over.sum())
            bids[t][over] = room[over]
            paid = np.concatenate([paid, paid + bids[t]])
        values = list(self.values)
        if clamped:
            values = policy_values(self.instance, bids)
        certified = int(_future_payments(bids, n)[0][0])
        for arr in values + bids + self.caps:
            arr.setflags(write=False)
        return ProratedStrategy(
            tuple(bids), tuple(values), tuple(self.caps), self.budget,
            certified, clamped, self.instance.fingerprint,
        )


def max_future_payment(adjusted, state: QState) -> int:
    """Worst-case total of adjusted bids paid from ``state`` to the end.

    ``adjusted`` is a :class:`ProratedPass` (possibly partial) or a finished
    :class:`ProratedStrategy`.
    """
    if isinstance(adjusted, ProratedStrategy):
        return int(_future_payments(adjusted.bids, adjusted.n)[state.stage][state.subset])
    return adjusted.max_future_payment(state)


def policy_values(instance: ProblemInstance, bids) -> list[np.ndarray]:
    """Quasi-linear expected utility of every state under a fixed bid table."""
    n = instance.n
    values = [None] * (n + 1)
    values[n] = np.array(instance.valuation.table, dtype=float)
    for t in range(n - 1, -1, -1):
        size = 1 << t
        b = np.asarray(bids[t])
        w = instance.models[t].cdf(int(b.max(initial=0)))[b]
        nxt = values[t + 1]
        values[t] = w * (nxt[size:] - b) + (1.0 - w) * nxt[:size]
    return values


def solve_prorated(instance: ProblemInstance, pi: QStrategy, budget: int) -> ProratedStrategy:
    """Budget-feasible strategy from ``pi`` by capped re-optimisation."""
    run = ProratedPass(instance, pi, budget)
    while not run.done:
        run.step()
    return run.finish()


@dataclass(frozen=True)
class TrivialPolicy:
    """Bid as ``pi`` does, but never more than the money left."""

    pi: QStrategy
    budget: int

    mode = "trivial"

    @property
    def n(self) -> int:
        return self.pi.n

    def bids_for(self, t, masks, paid):
        return np.minimum(self.pi.bids[t][masks], self.budget - np.asarray(paid))


def trivial_policy(pi: QStrategy, budget: int) -> TrivialPolicy:
    if budget < 0:
        raise DomainError("budget must be >= 0")
    return TrivialPolicy(pi, int(budget))
