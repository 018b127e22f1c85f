"""Instance families used in the experiments, plus the two-item worked example."""
from __future__ import annotations

import numpy as np

from .errors import DomainError
from .model import BundleMax, ExplicitTable, OpponentBidModel, ProblemInstance


def uniform_model(high: int = 100) -> OpponentBidModel:
    """Highest opposing bid uniform over the integers ``0..high``."""
    return OpponentBidModel.uniform(0, high)


def two_item_example(endowment: int = 4) -> ProblemInstance:
    """Two items worth 4 together and nothing apart; opposing bids 1 or 2."""
    model = OpponentBidModel((1, 2), (0.5, 0.5))
    return ProblemInstance.create(
        [model, model], BundleMax(2, ((0b11, 4.0),)), endowment=endowment
    )


def gen_substitutes(n: int) -> ProblemInstance:
    """Odd-position items and even-position items form two substitute bundles,
    each worth ``100 * n / 2``."""
    if n % 2 or not 2 <= n <= 24:
        raise DomainError(f"n must be even and in 2..24, got {n}")
    worth = 100.0 * n / 2
    odd = sum(1 << i for i in range(0, n, 2))
    even = sum(1 << i for i in range(1, n, 2))
    return ProblemInstance.create(
        [uniform_model()] * n, BundleMax(n, ((odd, worth), (even, worth)))
    )


def gen_three_bundles() -> ProblemInstance:
    """Nine items in three interleaved substitute bundles worth 300 each."""
    bundles = tuple((sum(1 << i for i in range(k, 9, 3)), 300.0) for k in range(3))
    return ProblemInstance.create([uniform_model()] * 9, BundleMax(9, bundles))


def random_instance(rng: np.random.Generator, n_max: int = 6, support_max: int = 20,
                    value_max: int = 40, explicit: bool = None) -> ProblemInstance:
    """Random instance with random pmfs and a random valuation.

    ``support_max`` bounds both the number of support points and the largest
    opposing bid.
    """
    n = int(rng.integers(1, n_max + 1))
    models = []
    for _ in range(n):
        k = int(rng.integers(1, support_max + 1))
        values = np.sort(rng.choice(support_max + 1, size=min(k, support_max + 1), replace=False))
        p = rng.random(len(values)) + 0.05
        p /= p.sum()
        p[-1] = 1.0 - p[:-1].sum()
        models.append(OpponentBidModel(tuple(values.tolist()), tuple(p.tolist())))
    if explicit is None:
        explicit = bool(rng.integers(2))
    if explicit:
        table = rng.random(1 << n) * value_max
        table[0] = 0.0
        valuation = ExplicitTable(n, tuple(table.tolist()))
    else:
        k = int(rng.integers(1, 4))
        bundles = tuple(
            (int(rng.integers(1, 1 << n)), float(rng.random() * value_max)) for _ in range(k)
        )
        valuation = BundleMax(n, bundles)
    return ProblemInstance.create(models, valuation)
