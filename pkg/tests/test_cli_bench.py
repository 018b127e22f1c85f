import csv
import json

import pytest

from seqbid.bench import CSV_HEADER, BenchRow, run_bench, write_csv
from seqbid.cli import main
from seqbid.errors import ConfigError
from seqbid.serialization import save_instance


@pytest.fixture
def fig1_file(fig1, tmp_path):
    path = tmp_path / "fig1.json"
    save_instance(fig1, path)
    return path


def test_solve_and_eval_exact(fig1_file, tmp_path, capsys):
    out = tmp_path / "s.json"
    assert main(["solve", "--mode", "quasilinear", "--instance", str(fig1_file), "--out", str(out)]) == 0
    assert json.loads(out.read_text())["stages"][0]["entries"][0]["bid"] == 1
    assert main(["eval", "--instance", str(fig1_file), "--strategy", str(out), "--exact"]) == 0
    line = capsys.readouterr().out.strip()
    assert line == "expected_utility=0.5 max_payment=3 paths=4"


def test_solve_additive_root_only(fig1_file, tmp_path):
    out = tmp_path / "a.json"
    assert main(["solve", "--mode", "additive", "--instance", str(fig1_file), "--root-only",
                 "--out", str(out)]) == 0
    assert json.loads(out.read_text())["root"] == {"bid": 1, "value": 4.5}


def test_eval_additive_uses_endowment(fig1_file, tmp_path, capsys):
    out = tmp_path / "a.json"
    main(["solve", "--mode", "additive", "--instance", str(fig1_file), "--endowment", "4", "--out", str(out)])
    main(["eval", "--instance", str(fig1_file), "--strategy", str(out), "--exact", "--json"])
    assert json.loads(capsys.readouterr().out)["expected_utility"] == pytest.approx(4.5)


@pytest.mark.parametrize("mode", ["prorated", "trivial"])
def test_budgeted_modes(fig1_file, tmp_path, capsys, mode):
    out = tmp_path / "p.json"
    assert main(["solve", "--mode", mode, "--instance", str(fig1_file), "--budget", "2", "--out", str(out)]) == 0
    main(["eval", "--instance", str(fig1_file), "--strategy", str(out), "--exact", "--json"])
    rep = json.loads(capsys.readouterr().out)
    assert rep["expected_utility"] == pytest.approx(0.25)
    assert rep["max_payment"] <= 2


def test_budget_required(fig1_file, tmp_path):
    assert main(["solve", "--mode", "prorated", "--instance", str(fig1_file),
                 "--out", str(tmp_path / "x.json")]) == 2


def test_eval_mc(fig1_file, tmp_path, capsys):
    out = tmp_path / "s.json"
    main(["solve", "--mode", "quasilinear", "--instance", str(fig1_file), "--out", str(out)])
    main(["eval", "--instance", str(fig1_file), "--strategy", str(out), "--mc", "--samples", "20000", "--seed", "3"])
    first = capsys.readouterr().out
    main(["eval", "--instance", str(fig1_file), "--strategy", str(out), "--mc", "--samples", "20000", "--seed", "3"])
    assert capsys.readouterr().out == first
    assert first.startswith("mean=")


def test_invalid_instance_exit_code(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"items": 1, "distributions": [{"pmf": [[1, 0.9]]}],
                               "valuation": {"type": "bundles", "bundles": []}}))
    assert main(["solve", "--mode", "quasilinear", "--instance", str(bad), "--out", str(tmp_path / "o")]) == 2
    garbage = tmp_path / "garbage.json"
    garbage.write_text("{not json")
    assert main(["solve", "--mode", "quasilinear", "--instance", str(garbage), "--out", str(tmp_path / "o")]) == 2


def test_gen(tmp_path):
    out = tmp_path / "g.json"
    assert main(["gen", "substitutes", "--n", "4", "--out", str(out)]) == 0
    assert json.loads(out.read_text())["items"] == 4
    assert main(["gen", "three-bundles", "--out", str(out)]) == 0
    assert json.loads(out.read_text())["items"] == 9
    assert main(["gen", "substitutes", "--n", "3", "--out", str(out)]) == 2


def test_bench_cli(tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"family": "substitutes", "methods": ["additive", "quasilinear"],
                               "n": [2], "m": [50], "seed": 4}))
    out = tmp_path / "b.csv"
    assert main(["bench", "--config", str(cfg), "--csv", str(out)]) == 0
    rows = list(csv.reader(out.open()))
    assert tuple(rows[0]) == CSV_HEADER
    assert [r[0] for r in rows[1:]] == ["additive", "quasilinear"]
    assert rows[1][1:4] == ["2", "50", ""]
    assert rows[1][7] == "4"


def test_bench_bad_config(tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"family": "substitutes", "methods": ["magic"], "n": [2], "m": [5]}))
    assert main(["bench", "--config", str(cfg), "--csv", str(tmp_path / "b.csv")]) == 2
    cfg.write_text(json.dumps({"family": "nope", "methods": ["quasilinear"]}))
    assert main(["bench", "--config", str(cfg), "--csv", str(tmp_path / "b.csv")]) == 2


def test_empty_method_list(tmp_path):
    rows = run_bench({"family": "three_bundles", "methods": [], "budget": [10]})
    assert rows == []
    out = tmp_path / "e.csv"
    write_csv(rows, out)
    assert out.read_text().strip() == ",".join(CSV_HEADER)


def test_budget_methods_need_budget():
    with pytest.raises(ConfigError):
        run_bench({"family": "substitutes", "methods": ["prorated"], "n": [2], "m": [10]})


def test_bench_reproducible_except_timing():
    cfg = {"family": "three_bundles", "methods": ["additive", "prorated", "trivial"],
           "budget": [40, 120], "repetitions": 2, "seed": 11}
    strip = lambda rows: [(r.method, r.n, r.m, r.budget, r.expected_utility, r.max_payment, r.seed) for r in rows]
    a, b = run_bench(cfg), run_bench(cfg)
    assert strip(a) == strip(b)
    assert len(a) == 2 * 3 * 2
    assert all(isinstance(r, BenchRow) and r.runtime_ms >= 0 for r in a)
    assert {r.seed for r in a} == {11, 12}
    for r in a:
        assert r.max_payment <= r.budget
