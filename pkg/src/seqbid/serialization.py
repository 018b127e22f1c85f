"""JSON formats for problem instances, strategies and reports."""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .additive import AStrategy
from .budget import ProratedStrategy, TrivialPolicy, policy_values
from .errors import ValidationError
from .model import (BundleMax, ExplicitTable, MoneyUtility, OpponentBidModel,
                    ProblemInstance, mask_items, to_mask)
from .quasilinear import QStrategy


def instance_from_dict(doc: dict) -> ProblemInstance:
    try:
        n = int(doc["items"])
        models = [OpponentBidModel.from_pairs(d["pmf"]) for d in doc["distributions"]]
        val = doc["valuation"]
        kind = val.get("type")
        if kind == "bundles":
            valuation = BundleMax(n, tuple((to_mask(b["items"]), b["value"]) for b in val["bundles"]))
        elif kind == "table":
            valuation = ExplicitTable.from_entries(n, val["entries"])
        else:
            raise ValidationError(f"valuation.type: unknown valuation type {kind!r}")
        return ProblemInstance(
            n, tuple(models), valuation,
            endowment=doc.get("endowment"), budget=doc.get("budget"),
        )
    except (KeyError, TypeError, IndexError, ValueError) as exc:
        if isinstance(exc, ValidationError):
            raise
        raise ValidationError(f"malformed instance file: {exc!r}") from exc


def instance_to_dict(instance: ProblemInstance) -> dict:
    v = instance.valuation
    if isinstance(v, BundleMax):
        valuation = {"type": "bundles",
                     "bundles": [{"items": mask_items(b), "value": x} for b, x in v.bundles]}
    else:
        valuation = {"type": "table", "entries": [[i, x] for i, x in enumerate(v.values)]}
    doc = {
        "items": instance.n,
        "distributions": [{"pmf": [[a, p] for a, p in m.pairs]} for m in instance.models],
        "valuation": valuation,
    }
    if instance.endowment is not None:
        doc["endowment"] = instance.endowment
    if instance.budget is not None:
        doc["budget"] = instance.budget
    return doc


def load_instance(path) -> ProblemInstance:
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"{path}: not valid JSON ({exc})") from exc
    return instance_from_dict(doc)


def save_instance(instance: ProblemInstance, path) -> None:
    Path(path).write_text(json.dumps(instance_to_dict(instance), indent=1))


def _q_stages(bids, values, extra=None):
    stages = []
    for t, b in enumerate(bids):
        entries = []
        for s in range(len(b)):
            e = {"mask": s, "bid": int(b[s]), "value": float(values[t][s])}
            if extra is not None:
                e["z_max"] = int(extra[t][s])
            entries.append(e)
        stages.append({"t": t, "entries": entries})
    return stages


def strategy_to_dict(strategy, root_only: bool = False) -> dict:
    """Serialise any strategy; ``root_only`` keeps just the initial state."""
    doc = {"mode": strategy.mode}
    if isinstance(strategy, AStrategy):
        doc["endowment"] = strategy.endowment
    if isinstance(strategy, (ProratedStrategy, TrivialPolicy)):
        doc["budget"] = strategy.budget
    if isinstance(strategy, ProratedStrategy):
        doc["certified_max_payment"] = strategy.certified_max_payment
    if root_only:
        if isinstance(strategy, AStrategy):
            doc["root"] = {"bid": strategy.root_bid, "value": strategy.root_value}
        else:
            base = strategy.pi if isinstance(strategy, TrivialPolicy) else strategy
            doc["root"] = {"bid": int(base.bids[0][0]), "value": float(base.values[0][0])}
        doc["root_only"] = True
        return doc
    if isinstance(strategy, AStrategy):
        m = strategy.endowment
        stages = []
        for t, b in enumerate(strategy.bids):
            vals = strategy.values[t]
            entries = [{"mask": 0, "money": m, "bid": int(b[0, m]), "value": float(vals[0, m])}]
            for s in range(1, b.shape[0]):
                entries.extend(
                    {"mask": s, "money": d, "bid": int(b[s, d]), "value": float(vals[s, d])}
                    for d in range(m + 1)
                )
            stages.append({"t": t, "entries": entries})
        doc["stages"] = stages
    elif isinstance(strategy, ProratedStrategy):
        doc["stages"] = _q_stages(strategy.bids, strategy.values, strategy.caps)
    elif isinstance(strategy, TrivialPolicy):
        doc["stages"] = _q_stages(strategy.pi.bids, strategy.pi.values)
    else:
        doc["stages"] = _q_stages(strategy.bids, strategy.values)
    return doc


def _stage_tables(doc, n):
    bids = [np.zeros(1 << t, dtype=np.int64) for t in range(n)]
    vals = [np.zeros(1 << t) for t in range(n)]
    caps = [np.zeros(1 << t, dtype=np.int64) for t in range(n)]
    for stage in doc["stages"]:
        t = stage["t"]
        for e in stage["entries"]:
            bids[t][e["mask"]] = e["bid"]
            vals[t][e["mask"]] = e["value"]
            caps[t][e["mask"]] = e.get("z_max", 0)
    return bids, vals, caps


def strategy_from_dict(doc: dict, instance: ProblemInstance):
    """Rebuild an evaluable policy from its JSON form."""
    if doc.get("root_only"):
        raise ValidationError("strategy: root-only output cannot be evaluated")
    n = instance.n
    if len(doc.get("stages", [])) != n:
        raise ValidationError(f"strategy: has {len(doc.get('stages', []))} stages, instance has {n} items")
    mode = doc.get("mode")
    terminal = np.array(instance.valuation.table, dtype=float)
    fp = instance.fingerprint
    if mode == "additive":
        m = int(doc["endowment"])
        bids = [np.zeros((1 << t, m + 1), dtype=np.int64) for t in range(n)]
        vals = [np.zeros((1 << t, m + 1)) for t in range(n)]
        for stage in doc["stages"]:
            t = stage["t"]
            for e in stage["entries"]:
                bids[t][e["mask"], e["money"]] = e["bid"]
                vals[t][e["mask"], e["money"]] = e["value"]
        f = MoneyUtility.identity()
        vals.append(terminal[:, None] + f(np.arange(m + 1))[None, :])
        return AStrategy(tuple(vals), tuple(bids), m, f, fp)
    bids, vals, caps = _stage_tables(doc, n)
    vals.append(terminal)
    if mode == "quasilinear":
        return QStrategy(tuple(vals), tuple(bids), fp)
    if mode == "trivial":
        return TrivialPolicy(QStrategy(tuple(vals), tuple(bids), fp), int(doc["budget"]))
    if mode == "prorated":
        return ProratedStrategy(tuple(bids), tuple(policy_values(instance, bids)), tuple(caps),
                                int(doc["budget"]), int(doc["certified_max_payment"]), 0, fp)
    raise ValidationError(f"strategy.mode: unknown mode {mode!r}")


def save_json(doc: dict, path) -> None:
    Path(path).write_text(json.dumps(doc))


def load_json(path) -> dict:
    with open(path) as fh:
        return json.load(fh)
