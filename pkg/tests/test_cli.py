"""End-to-end CLI behavior: reports, determinism, exit codes."""

import json
from pathlib import Path

import pytest
from click.testing import CliRunner

from qwalk.cli import main


@pytest.fixture
def runner():
    return CliRunner()


def _run(runner, args, expect=0):
    result = runner.invoke(main, args, catch_exceptions=False)
    assert result.exit_code == expect, result.output
    return result


def test_graph_roundtrip_and_determinism(runner, tmp_path):
    out1 = tmp_path / "a.json"
    out2 = tmp_path / "b.json"
    base = ["--seed", "5", "--out-dir", str(tmp_path)]
    _run(runner, base + ["graph", "--family", "er", "--size", "12",
                         "--p", "0.4", "--out", str(out1)])
    _run(runner, base + ["graph", "--family", "er", "--size", "12",
                         "--p", "0.4", "--out", str(out2)])
    assert out1.read_bytes() == out2.read_bytes()
    obj = json.loads(out1.read_text())
    assert obj["n"] == 12


def test_evolve_writes_csv_and_report(runner, tmp_path):
    _run(runner, ["--out-dir", str(tmp_path), "evolve", "--family", "cycle",
                  "--size", "5", "--t-final", "2", "--steps", "10"])
    report = json.loads((tmp_path / "evolve.json").read_text())
    assert len(report["final_distribution"]) == 5
    csv_lines = (tmp_path / "evolve.csv").read_text().strip().splitlines()
    assert csv_lines[0] == "t,v0,v1,v2,v3,v4"
    assert len(csv_lines) == 12  # header + 11 grid points


def test_correlate_cross_check(runner, tmp_path):
    _run(runner, ["--out-dir", str(tmp_path), "correlate", "--family", "cycle",
                  "--size", "4", "--particles", "boson",
                  "--inputs", "0,2", "--time", "1.3"])
    report = json.loads((tmp_path / "correlate.json").read_text())
    assert report["extended_walk_max_error"] < 1e-10
    assert abs(sum(report["probabilities"]) - 1.0) < 1e-9


def test_hitting_report(runner, tmp_path):
    _run(runner, ["--out-dir", str(tmp_path), "hitting", "--family", "ecube",
                  "--walker", "quantum", "--t-max", "5", "--dt", "0.01"])
    report = json.loads((tmp_path / "hitting.json").read_text())
    assert report["extended_dim"] == 136
    assert abs(report["efficiency"] - 1.0) < 1e-6


def test_mixing_nonconvergence_exit_3(runner, tmp_path):
    result = runner.invoke(main, ["--out-dir", str(tmp_path), "mixing",
                                  "--family", "enet", "--size", "8",
                                  "--eps", "0.01", "--horizon", "2",
                                  "--dt", "0.1"])
    assert result.exit_code == 3


def test_gi_cli(runner, tmp_path):
    base = ["--out-dir", str(tmp_path)]
    _run(runner, base + ["graph", "--family", "path", "--size", "4",
                         "--out", str(tmp_path / "p.json")])
    _run(runner, base + ["graph", "--family", "star", "--size", "4",
                         "--out", str(tmp_path / "s.json")])
    _run(runner, base + ["gi", "--graph1", str(tmp_path / "p.json"),
                         "--graph2", str(tmp_path / "s.json")])
    report = json.loads((tmp_path / "gi.json").read_text())
    assert report["verdict"] == "non-isomorphic"


def test_topo_cli(runner, tmp_path):
    _run(runner, ["--out-dir", str(tmp_path), "topo", "--flavor", "ssh2d",
                  "--probe", "amcd", "--dimension", "y",
                  "--v", "0.1", "--w", "1.0"])
    report = json.loads((tmp_path / "topo.json").read_text())
    assert abs(report["value"] - 0.5) < 0.05


def test_config_file_defaults(runner, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"family": "ecube", "t_max": 5.0, "dt": 0.01}))
    _run(runner, ["--out-dir", str(tmp_path), "--config", str(cfg), "hitting"])
    report = json.loads((tmp_path / "hitting.json").read_text())
    assert report["config"]["t_max"] == 5.0


def test_config_unknown_field_exit_2(runner, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"bogus": 1}))
    result = runner.invoke(main, ["--config", str(cfg), "hitting",
                                  "--family", "ecube"])
    assert result.exit_code == 2
    assert "bogus" in result.output


def test_malformed_config_exit_2(runner, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text("{not json")
    result = runner.invoke(main, ["--config", str(cfg), "hitting",
                                  "--family", "ecube"])
    assert result.exit_code == 2
    # no partial outputs
    assert not (Path("qwalk-out") / "hitting.json").exists()


def test_reproduce_invalid_id_exit_2(runner, tmp_path):
    result = runner.invoke(main, ["--out-dir", str(tmp_path), "reproduce", "9Z"])
    assert result.exit_code == 2
    assert "valid ids" in result.output


def test_reproduce_bundle_deterministic(runner, tmp_path):
    d1, d2 = tmp_path / "r1", tmp_path / "r2"
    _run(runner, ["--seed", "11", "--out-dir", str(d1), "reproduce", "3D"])
    _run(runner, ["--seed", "11", "--out-dir", str(d2), "reproduce", "3D"])
    f1 = sorted(p.relative_to(d1) for p in d1.rglob("*") if p.is_file())
    f2 = sorted(p.relative_to(d2) for p in d2.rglob("*") if p.is_file())
    assert f1 == f2
    for rel in f1:
        assert (d1 / rel).read_bytes() == (d2 / rel).read_bytes()
    summary = json.loads((d1 / "fig3D" / "summary.json").read_text())
    assert summary["all_pass"]
