"""Benchmark harness producing CSV rows for the runtime and quality experiments.

A config is a JSON object::

    {"family": "substitutes" | "three_bundles",
     "methods": ["additive", "quasilinear", "prorated", "trivial"],
     "n": [2, 4, ...],            # substitutes only
     "m": [500, 1000],            # endowment sweep (additive), or
     "budget": [10, 20, ...],     # budget sweep (all budgeted methods)
     "repetitions": 1, "seed": 0,
     "additive_bid_cap": "support" | "valuation" | int}

Exactly one of ``m`` and ``budget`` drives the sweep.  In a budget sweep the
additive method uses the budget as its endowment.  Expected utilities are
quasi-linear (valuation minus payments) so all methods are comparable.
"""
from __future__ import annotations

import csv
import time
from dataclasses import astuple, dataclass
from typing import Optional

from .additive import solve_additive
from .budget import solve_prorated, trivial_policy
from .errors import ConfigError
from .evaluation import exact_eval, monte_carlo
from .generators import gen_substitutes, gen_three_bundles
from .quasilinear import solve_quasilinear

METHODS = ("additive", "quasilinear", "prorated", "trivial")
CSV_HEADER = ("method", "n", "m", "budget", "runtime_ms", "expected_utility", "max_payment", "seed")
EXACT_EVAL_MAX_N = 12
MC_SAMPLES = 100_000


@dataclass(frozen=True)
class BenchRow:
    method: str
    n: int
    m: Optional[int]
    budget: Optional[int]
    runtime_ms: float
    expected_utility: float
    max_payment: Optional[int]
    seed: int


def fig2_config():
    return {"family": "substitutes", "methods": ["additive", "quasilinear"],
            "n": [2, 4, 6, 8, 10], "m": [500, 1000, 1500], "additive_bid_cap": "valuation"}


def fig3_config():
    return {"family": "three_bundles", "methods": ["additive", "prorated", "trivial"],
            "budget": list(range(10, 261, 10))}


def _instances(config):
    family = config.get("family")
    if family == "substitutes":
        ns = config.get("n")
        if not ns:
            raise ConfigError("substitutes family needs a non-empty 'n' list")
        return [gen_substitutes(int(n)) for n in ns]
    if family == "three_bundles":
        return [gen_three_bundles()]
    raise ConfigError(f"unknown instance family {family!r}")


def _points(config):
    ms, budgets = config.get("m"), config.get("budget")
    if ms and budgets:
        raise ConfigError("give either an 'm' sweep or a 'budget' sweep, not both")
    if budgets:
        return [(None, int(b)) for b in budgets]
    if ms:
        return [(int(m), None) for m in ms]
    return [(None, None)]


def _solve(method, instance, m, budget, cap):
    """Return (policy, endowment used, elapsed ms); only solver time is measured."""
    if method in ("prorated", "trivial") and budget is None:
        raise ConfigError(f"method {method!r} needs a budget sweep")
    start = time.perf_counter()
    if method == "additive":
        m = budget if m is None else m
        if m is None:
            raise ConfigError("additive method needs an 'm' or 'budget' sweep")
        policy = solve_additive(instance, m, bid_cap=cap)
    elif method == "quasilinear":
        policy = solve_quasilinear(instance)
    elif method == "prorated":
        policy = solve_prorated(instance, solve_quasilinear(instance), budget)
    else:
        policy = trivial_policy(solve_quasilinear(instance), budget)
    return policy, m, (time.perf_counter() - start) * 1000.0


def run_bench(config: dict) -> list[BenchRow]:
    methods = list(config.get("methods", []))
    unknown = [m for m in methods if m not in METHODS]
    if unknown:
        raise ConfigError(f"unknown method(s) {unknown}")
    if not methods:
        return []
    reps = int(config.get("repetitions", 1))
    base_seed = int(config.get("seed", 0))
    cap = config.get("additive_bid_cap", "support")
    rows = []
    for instance in _instances(config):
        for m, budget in _points(config):
            for method in methods:
                for rep in range(reps):
                    seed = base_seed + rep
                    policy, endowment, ms = _solve(method, instance, m, budget, cap)
                    if instance.n <= EXACT_EVAL_MAX_N:
                        rep_ = exact_eval(instance, policy)
                        eu, max_pay = rep_.expected_utility, rep_.max_payment
                    else:
                        eu, max_pay = monte_carlo(instance, policy, MC_SAMPLES, seed).mean, None
                    rows.append(BenchRow(method, instance.n, endowment if endowment is not None else m,
                                         budget, ms, eu, max_pay, seed))
    return rows


def write_csv(rows, path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_HEADER)
        for row in rows:
            writer.writerow(["" if x is None else (repr(x) if isinstance(x, float) else x)
                             for x in astuple(row)])
