import csv
import json

import pytest

from hapseh.cli import main
from hapseh.config import load_config
from hapseh.experiments import OUTPUT_DIR_ENV, read_csv, run_sweep
from hapseh.config import ExperimentConfig

FAST_METHOD = """
[method]
n_d_a = 41
n_tau = 19
ql_episodes = 100
"""


def _cfg(tmp_path, text, name="cfg.toml"):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_sweep_default_rows(tmp_path):
    assert main(["sweep", "-o", str(tmp_path), "-j", "1"]) == 0
    raw = (tmp_path / "sweep.csv").read_bytes()
    assert b"\r\n" not in raw
    rows = read_csv(tmp_path / "sweep.csv")
    assert len(rows) == 153
    assert list(rows[0])[:7] == ["sweep_value", "model", "harvested_energy_J", "p_eh_W",
                                 "p_r_W", "snr", "rate_bps"]
    assert [r["model"] for r in rows[:3]] == ["linear", "nonlinear", "no-eh"]
    assert load_config(tmp_path / "resolved_config.toml") == ExperimentConfig()


def test_csv_round_trip_is_bitwise(tmp_path):
    cfg = ExperimentConfig()
    rows = run_sweep(cfg, workers=1)
    main(["sweep", "-o", str(tmp_path), "-j", "1"])
    back = read_csv(tmp_path / "sweep.csv")
    for r, b in zip(rows, back):
        assert b["rate_bps"] == r["rate_bps"]
        assert b["p_r_W"] == r["p_r_W"]


def test_parallel_sweep_same_order(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    main(["sweep", "-o", str(a), "-j", "1"])
    main(["sweep", "-o", str(b), "-j", "3"])
    assert (a / "sweep.csv").read_bytes() == (b / "sweep.csv").read_bytes()


def test_baseline_columns(tmp_path):
    c = _cfg(tmp_path, "[sweep]\nvariable = 'd_ap2_km'\nstart = 14\nstop = 19\nmodels = ['linear']\n")
    assert main(["sweep", "-c", c, "-o", str(tmp_path), "--baseline-da-km", "10"]) == 0
    rows = read_csv(tmp_path / "sweep.csv")
    assert len(rows) == 6
    assert all(r["d_a_m"] == 10e3 for r in rows)
    assert all(r["rate_opt_bps"] >= r["rate_bps"] for r in rows)


def test_budget_and_mission(tmp_path):
    c = _cfg(tmp_path, "[power]\np_req_dbm = 20\nflight_times_h = [1, 24]\n")
    assert main(["budget", "-c", c, "-o", str(tmp_path), "-j", "1"]) == 0
    assert main(["mission", "-c", c, "-o", str(tmp_path), "-j", "1"]) == 0
    with open(tmp_path / "budget.csv") as fh:
        header = next(csv.reader(fh))
    assert "p_a_W" in header and "e_total_J_24h" in header
    rows = read_csv(tmp_path / "mission.csv")
    lin = [r for r in rows if r["model"] == "linear"]
    assert all(r["e_total_J_24h"] == pytest.approx(24 * r["e_total_J_1h"]) for r in lin)


def test_position_json(tmp_path):
    assert main(["position", "-o", str(tmp_path)]) == 0
    out = json.loads((tmp_path / "position.json").read_text())
    assert out["linear"]["d_a_star_m"] == pytest.approx(448.4981108630089, abs=1e-6)
    assert out["linear"]["grid_d_a_m"] == 448.0
    assert out["nonlinear"]["d_a_star_m"] == 0.0
    assert out["warnings"]


@pytest.mark.parametrize("cmd", ["idfa", "qlearn", "exhaustive"])
def test_optimize_outputs(tmp_path, cmd):
    c = _cfg(tmp_path, FAST_METHOD)
    assert main([cmd, "-c", c, "-o", str(tmp_path), "--seed", "2"]) == 0
    summary = json.loads((tmp_path / f"{cmd}_result.json").read_text())
    assert summary["method"] == cmd
    assert summary["metadata"]["grid"]["d_a_points"]
    rows = read_csv(tmp_path / f"{cmd}_trace.csv")
    assert rows and list(rows[0]) == ["index", "objective"]
    if cmd == "idfa":
        obj = [r["objective"] for r in rows]
        assert obj == sorted(obj)


def test_reference_pairs_exhaustive(tmp_path):
    c = _cfg(tmp_path, "[method]\ngrid = 'pairs'\n")
    assert main(["exhaustive", "-c", c, "-o", str(tmp_path)]) == 0
    s = json.loads((tmp_path / "exhaustive_result.json").read_text())
    assert (s["d_a_star_m"], s["tau_star"]) == (8000.0, 0.1)


def test_env_output_dir(tmp_path, monkeypatch):
    monkeypatch.setenv(OUTPUT_DIR_ENV, str(tmp_path / "env"))
    assert main(["position"]) == 0
    assert (tmp_path / "env" / "position.json").exists()


def test_json_format(tmp_path):
    c = _cfg(tmp_path, "[output]\nformat = 'json'\n[sweep]\nstop = 2\n")
    assert main(["sweep", "-c", c, "-o", str(tmp_path), "-j", "1"]) == 0
    assert len(json.loads((tmp_path / "sweep.json").read_text())) == 9


@pytest.mark.parametrize("text", [
    "[scenario]\ntau = 1.2\n", "[scenario]\nbogus = 1\n", "not toml = = =\n",
])
def test_config_errors_exit_2(tmp_path, text, capsys):
    c = _cfg(tmp_path, text)
    assert main(["sweep", "-c", c, "-o", str(tmp_path)]) == 2
    assert "config error" in capsys.readouterr().err


def test_budget_without_requirement_exits_2(tmp_path):
    assert main(["budget", "-o", str(tmp_path)]) == 2
    assert main(["mission", "-o", str(tmp_path)]) == 2


def test_numeric_error_exits_3(tmp_path):
    c = _cfg(tmp_path, "[sweep]\nvariable = 'd1_km'\nstart = 4.5\nstop = 5\nstep = 0.5\n"
                       "[scenario]\nf_ghz = 2.45\n")
    # first hop longer than the span is a geometry violation at evaluation time
    c2 = _cfg(tmp_path, "[sweep]\nvariable = 'd1_km'\nstart = 30\nstop = 30\n", "bad.toml")
    assert main(["sweep", "-c", c, "-o", str(tmp_path), "-j", "1"]) == 0
    assert main(["sweep", "-c", c2, "-o", str(tmp_path), "-j", "1"]) == 3
