"""Command line entry point: ``seqbid solve|eval|gen|bench``."""
from __future__ import annotations

import argparse
import json
import sys

from . import serialization as ser
from .additive import solve_additive
from .bench import run_bench, write_csv
from .budget import solve_prorated, trivial_policy
from .errors import CapacityError, ConfigError, DomainError, MismatchError, ValidationError
from .evaluation import QUASILINEAR, AdditiveUtility, exact_eval, monte_carlo
from .generators import gen_substitutes, gen_three_bundles
from .model import check_instance
from .quasilinear import solve_quasilinear

EXIT_INVALID = 2


def _cap(text):
    return text if text in ("support", "valuation") else int(text)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="seqbid", description="Bidding strategies for sequential first-price auctions.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="solve an instance and write the strategy as JSON")
    s.add_argument("--mode", required=True, choices=["quasilinear", "additive", "prorated", "trivial"])
    s.add_argument("--instance", required=True)
    s.add_argument("--endowment", type=int, help="endowment m for additive mode (default: from instance)")
    s.add_argument("--budget", type=int, help="budget for prorated/trivial mode (default: from instance)")
    s.add_argument("--bid-cap", type=_cap, default="support",
                   help="additive bid cap: support (default), valuation, or an integer")
    s.add_argument("--root-only", action="store_true", help="write only the initial state's bid and value")
    s.add_argument("--out", required=True)

    e = sub.add_parser("eval", help="evaluate a strategy file")
    e.add_argument("--instance", required=True)
    e.add_argument("--strategy", required=True)
    how = e.add_mutually_exclusive_group(required=True)
    how.add_argument("--exact", action="store_true")
    how.add_argument("--mc", action="store_true")
    e.add_argument("--samples", type=int, default=100_000)
    e.add_argument("--seed", type=int, default=0)
    e.add_argument("--json", action="store_true", help="print the report as JSON")

    g = sub.add_parser("gen", help="write a generated instance")
    gsub = g.add_subparsers(dest="family", required=True)
    gs = gsub.add_parser("substitutes")
    gs.add_argument("--n", type=int, required=True)
    gs.add_argument("--out", required=True)
    gt = gsub.add_parser("three-bundles")
    gt.add_argument("--out", required=True)

    b = sub.add_parser("bench", help="run a benchmark config and write CSV")
    b.add_argument("--config", required=True)
    b.add_argument("--csv", required=True)
    return p


def _solve(args):
    instance = ser.load_instance(args.instance)
    check_instance(instance)
    if args.mode == "quasilinear":
        strategy = solve_quasilinear(instance)
    elif args.mode == "additive":
        m = args.endowment if args.endowment is not None else instance.endowment
        if m is None:
            raise ValidationError("endowment: additive mode needs --endowment or an instance endowment")
        strategy = solve_additive(instance, m, bid_cap=args.bid_cap)
    else:
        budget = args.budget if args.budget is not None else instance.budget
        if budget is None:
            raise ValidationError(f"budget: {args.mode} mode needs --budget or an instance budget")
        pi = solve_quasilinear(instance)
        strategy = solve_prorated(instance, pi, budget) if args.mode == "prorated" else trivial_policy(pi, budget)
    ser.save_json(ser.strategy_to_dict(strategy, root_only=args.root_only), args.out)


def _eval(args):
    instance = ser.load_instance(args.instance)
    check_instance(instance)
    strategy = ser.strategy_from_dict(ser.load_json(args.strategy), instance)
    utility = AdditiveUtility(strategy.endowment) if strategy.mode == "additive" else QUASILINEAR
    if args.exact:
        report = exact_eval(instance, strategy, utility)
    else:
        report = monte_carlo(instance, strategy, args.samples, args.seed, utility)
    print(json.dumps(report.to_dict()) if args.json else report.summary())


def _gen(args):
    instance = gen_substitutes(args.n) if args.family == "substitutes" else gen_three_bundles()
    ser.save_instance(instance, args.out)


def _bench(args):
    try:
        config = ser.load_json(args.config)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config: {exc}") from exc
    write_csv(run_bench(config), args.csv)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handler = {"solve": _solve, "eval": _eval, "gen": _gen, "bench": _bench}[args.command]
    try:
        handler(args)
    except (ValidationError, ConfigError, DomainError, MismatchError, CapacityError) as exc:
        print(f"seqbid: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    return 0


if __name__ == "__main__":
    sys.exit(main())
