"""Auction model: opponent bid distributions, valuations and problem instances.

Items are indexed ``0..n-1`` in auction order, and a set of items is a bitmask
with bit ``i`` standing for item ``i``.  Bids and money are non-negative
integers in minor currency units; valuations are reals.
"""
from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, NamedTuple, Optional, Sequence, Union

import numpy as np

from .errors import DomainError, ValidationError

MAX_ITEMS = 24
PROB_SUM_TOL = 1e-9

ItemSet = Union[int, Iterable[int]]


def to_mask(items: ItemSet) -> int:
    """Return the bitmask for ``items`` (an int mask passes through)."""
    if isinstance(items, (int, np.integer)):
        return int(items)
    mask = 0
    for i in items:
        mask |= 1 << int(i)
    return mask


def mask_items(mask: int) -> list[int]:
    return [i for i in range(int(mask).bit_length()) if mask >> i & 1]


@dataclass(frozen=True)
class OpponentBidModel:
    """Probability mass function of the highest opposing bid for one item.

    ``values`` are strictly increasing integer bids and ``probs`` their
    probabilities.  The agent wins ties, so the win probability of a bid
    ``z`` is the mass on values ``<= z``.
    """

    values: tuple[int, ...]
    probs: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        object.__setattr__(self, "probs", tuple(float(p) for p in self.probs))

    @classmethod
    def from_pairs(cls, pairs: Iterable[Sequence[float]]) -> "OpponentBidModel":
        pairs = list(pairs)
        return cls(tuple(p[0] for p in pairs), tuple(p[1] for p in pairs))

    @classmethod
    def uniform(cls, low: int, high: int) -> "OpponentBidModel":
        """Uniform mass on every integer in ``low..high``."""
        k = high - low + 1
        return cls(tuple(range(low, high + 1)), (1.0 / k,) * k)

    @classmethod
    def point(cls, value: int) -> "OpponentBidModel":
        return cls((value,), (1.0,))

    @property
    def pairs(self) -> list[tuple[int, float]]:
        return list(zip(self.values, self.probs))

    @property
    def max_support(self) -> int:
        return self.values[-1]

    def win_probability(self, bid: int) -> float:
        k = np.searchsorted(self.values, bid, side="right")
        return min(1.0, math.fsum(self.probs[:k]))

    def cdf(self, upto: int) -> np.ndarray:
        """Win probabilities for every bid ``0..upto`` as a float array."""
        upto = max(int(upto), 0)
        pmf = np.zeros(upto + 1)
        for v, p in zip(self.values, self.probs):
            if v <= upto:
                pmf[v] += p
        return np.minimum(np.cumsum(pmf), 1.0)


def win_probability(model: OpponentBidModel, bid: int) -> float:
    return model.win_probability(bid)


def max_meaningful_bid(model: OpponentBidModel) -> int:
    """Largest bid worth considering: bidding more never wins more often."""
    return model.max_support


def _superset_max(table: np.ndarray, n: int) -> np.ndarray:
    # table[R] <- max over subsets S of R of table[S]
    for i in range(n):
        view = table.reshape(-1, 2, 1 << i)
        np.maximum(view[:, 1, :], view[:, 0, :], out=view[:, 1, :])
    return table


class Valuation:
    """Base class for valuations over subsets of ``n_items`` items."""

    n_items: int

    @cached_property
    def table(self) -> np.ndarray:
        """Dense read-only array of ``v(mask)`` for every mask in ``0..2^n-1``."""
        t = self._build_table()
        t.setflags(write=False)
        return t

    def _build_table(self) -> np.ndarray:
        raise NotImplementedError

    def value(self, subset: ItemSet) -> float:
        mask = to_mask(subset)
        if mask < 0 or mask >> self.n_items:
            raise DomainError(f"subset {mask:#b} is outside items 0..{self.n_items - 1}")
        return self._value(mask)

    def _value(self, mask: int) -> float:
        return float(self.table[mask])


@dataclass(frozen=True, eq=False)
class ExplicitTable(Valuation):
    """Complete table of values indexed by subset bitmask."""

    n_items: int
    values: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))

    @classmethod
    def from_entries(cls, n_items: int, entries: Iterable[Sequence[float]]) -> "ExplicitTable":
        """Build from ``(mask, value)`` pairs; masks not listed get NaN."""
        values = [math.nan] * (1 << n_items)
        for mask, v in entries:
            mask = int(mask)
            if 0 <= mask < len(values):
                values[mask] = float(v)
            else:
                raise DomainError(f"mask {mask} is outside items 0..{n_items - 1}")
        return cls(n_items, tuple(values))

    def _build_table(self):
        return np.array(self.values, dtype=float)

    def _key(self):
        return ("table", self.n_items, self.values)


@dataclass(frozen=True, eq=False)
class BundleMax(Valuation):
    """Value of the best single bundle contained in the held set (0 if none).

    Bundles act as substitutes for each other while the items inside one
    bundle are complements.
    """

    n_items: int
    bundles: tuple[tuple[int, float], ...]

    def __post_init__(self):
        object.__setattr__(
            self, "bundles", tuple((to_mask(b), float(v)) for b, v in self.bundles)
        )

    def _build_table(self):
        t = np.zeros(1 << self.n_items)
        for mask, v in self.bundles:
            t[mask] = max(t[mask], v)
        return _superset_max(t, self.n_items)

    def _value(self, mask):
        if "table" in self.__dict__ or self.n_items <= 16:
            return float(self.table[mask])
        best = 0.0
        for b, v in self.bundles:
            if b & mask == b:
                best = max(best, v)
        return best

    def _key(self):
        return ("bundles", self.n_items, self.bundles)


def evaluate_valuation(valuation: Valuation, subset: ItemSet) -> float:
    return valuation.value(subset)


@dataclass(frozen=True)
class MoneyUtility:
    """Monotone utility of remaining money; ``fn`` maps an int array to floats."""

    fn: Callable[[np.ndarray], np.ndarray]
    name: str = "custom"
    table: Optional[tuple[float, ...]] = None

    @classmethod
    def identity(cls) -> "MoneyUtility":
        return cls(lambda d: np.asarray(d, dtype=float), "identity")

    @classmethod
    def tabulated(cls, values: Sequence[float]) -> "MoneyUtility":
        """``f(d) = values[d]``; defined for ``d < len(values)``."""
        arr = np.array(values, dtype=float)
        arr.setflags(write=False)

        def fn(d):
            d = np.asarray(d)
            if np.any(d < 0) or np.any(d >= len(arr)):
                raise DomainError(f"money utility table covers 0..{len(arr) - 1} only")
            return arr[d]

        return cls(fn, "table", tuple(arr.tolist()))

    @property
    def is_identity(self) -> bool:
        return self.name == "identity"

    def __call__(self, d):
        return self.fn(d)


@dataclass(frozen=True)
class ProblemInstance:
    n: int
    models: tuple[OpponentBidModel, ...]
    valuation: Valuation
    endowment: Optional[int] = None
    budget: Optional[int] = None
    money_utility: MoneyUtility = field(default_factory=MoneyUtility.identity)

    def __post_init__(self):
        object.__setattr__(self, "models", tuple(self.models))

    @classmethod
    def create(cls, models, valuation, **kwargs) -> "ProblemInstance":
        models = tuple(models)
        return cls(len(models), models, valuation, **kwargs)

    @cached_property
    def fingerprint(self) -> str:
        """Stable digest of the data that determines solver output."""
        h = hashlib.sha256()
        h.update(repr((self.n, [(m.values, m.probs) for m in self.models])).encode())
        h.update(repr(self.valuation._key()).encode())
        return h.hexdigest()

    @property
    def max_supports(self) -> list[int]:
        return [m.max_support for m in self.models]


class Violation(NamedTuple):
    field: str
    rule: str
    detail: str

    def __str__(self):
        return f"{self.field}: {self.rule} ({self.detail})"


def _model_violations(i: int, model: OpponentBidModel) -> list[Violation]:
    name = f"models[{i}]"
    out = []
    if not model.values or len(model.values) != len(model.probs):
        return [Violation(name, "pmf-shape", "pmf must be a non-empty list of (value, prob) pairs")]
    if model.values[0] < 0:
        out.append(Violation(name, "negative-value", f"smallest value is {model.values[0]}"))
    if any(b <= a for a, b in zip(model.values, model.values[1:])):
        out.append(Violation(name, "values-increasing", "values must be strictly increasing"))
    bad = [p for p in model.probs if not (0.0 < p <= 1.0)]
    if bad:
        out.append(Violation(name, "probability-range", f"probabilities outside (0, 1]: {bad[:3]}"))
    total = math.fsum(model.probs)
    if abs(total - 1.0) > PROB_SUM_TOL:
        out.append(Violation(name, "probability-sum", f"probabilities sum to {total!r}"))
    return out


def _valuation_violations(valuation: Valuation, n: int) -> list[Violation]:
    out = []
    if valuation.n_items != n:
        return [Violation("valuation", "item-domain", f"valuation covers {valuation.n_items} items, instance has {n}")]
    if isinstance(valuation, ExplicitTable):
        vals = np.array(valuation.values, dtype=float)
        if len(vals) != 1 << n:
            return [Violation("valuation", "table-complete", f"{len(vals)} entries, need {1 << n}")]
        if np.isnan(vals).any():
            out.append(Violation("valuation", "table-complete", f"{int(np.isnan(vals).sum())} subsets missing"))
        finite = vals[~np.isnan(vals)]
        if (finite < 0).any() or not np.isfinite(finite).all():
            out.append(Violation("valuation", "non-negative", "values must be finite and >= 0"))
        if vals[0] != 0:
            out.append(Violation("valuation", "empty-set", f"v(empty set) = {vals[0]}, must be 0"))
    elif isinstance(valuation, BundleMax):
        for mask, v in valuation.bundles:
            if mask >> n or mask < 0:
                out.append(Violation("valuation", "item-domain", f"bundle {mask:#b} outside items"))
            if not (v >= 0 and math.isfinite(v)):
                out.append(Violation("valuation", "non-negative", f"bundle value {v}"))
            if mask == 0 and v != 0:
                out.append(Violation("valuation", "empty-set", f"empty bundle worth {v}"))
    else:
        out.append(Violation("valuation", "type", f"unsupported valuation {type(valuation).__name__}"))
    return out


def validate_instance(instance: ProblemInstance) -> list[Violation]:
    """Check every model invariant; an empty list means the instance is valid."""
    out = []
    n = instance.n
    if not 1 <= n <= MAX_ITEMS:
        out.append(Violation("n", "item-count", f"n = {n}, must be in 1..{MAX_ITEMS}"))
    if len(instance.models) != n:
        out.append(Violation("models", "length", f"{len(instance.models)} models for {n} items"))
    for i, model in enumerate(instance.models):
        out.extend(_model_violations(i, model))
    if 1 <= n <= MAX_ITEMS:
        out.extend(_valuation_violations(instance.valuation, n))
    for name in ("endowment", "budget"):
        x = getattr(instance, name)
        if x is not None and (not isinstance(x, (int, np.integer)) or x < 0):
            out.append(Violation(name, "money", f"{name} = {x!r}, must be a non-negative integer"))
    top = instance.endowment if isinstance(instance.endowment, int) and instance.endowment >= 0 else 100
    try:
        fvals = np.asarray(instance.money_utility(np.arange(top + 1)), dtype=float)
        if (np.diff(fvals) < 0).any():
            out.append(Violation("money_utility", "monotone", "f must be non-decreasing"))
    except Exception as exc:  # a user-supplied f that cannot be evaluated is a violation
        out.append(Violation("money_utility", "evaluable", str(exc)))
    return out


def check_instance(instance: ProblemInstance) -> None:
    violations = validate_instance(instance)
    if violations:
        raise ValidationError([str(v) for v in violations])
