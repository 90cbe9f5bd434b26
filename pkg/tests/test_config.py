import math

import pytest

from hapseh.config import (ExperimentConfig, config_from_dict, dump_config, dumps_config,
                           load_config, parse_config)
from hapseh.errors import ConfigError


def test_empty_file_gives_defaults(tmp_path):
    p = tmp_path / "empty.toml"
    p.write_text("")
    cfg = load_config(p)
    assert cfg == ExperimentConfig()
    sc = cfg.build_scenario()
    assert sc.geometry.d_ap1 == 22e3 and sc.time_switch.tau == 0.1
    assert sc.radio.p_t == pytest.approx(1.0)
    assert sc.geometry.d_a == pytest.approx(448.498110863, abs=1e-6)


def test_tau_out_of_range_cites_constraint():
    with pytest.raises(ConfigError, match=r"27b"):
        parse_config("[scenario]\ntau = 1.2\n")


def test_inverted_altitudes_cite_constraint():
    with pytest.raises(ConfigError, match=r"27d"):
        parse_config("[scenario]\nd_ap1_km = 18\nd_ap2_km = 22\n")


def test_unknown_key_and_section():
    with pytest.raises(ConfigError, match="unknown key"):
        parse_config("[scenario]\np_t_watts = 1\n")
    with pytest.raises(ConfigError, match="unknown section"):
        parse_config("[plot]\ncolor = 'red'\n")


def test_parse_error_reports_position():
    with pytest.raises(ConfigError) as exc:
        parse_config("[scenario]\ntau = = 0.2\n")
    assert "line 2" in str(exc.value) and "column" in str(exc.value)


@pytest.mark.parametrize("text,field", [
    ("[scenario]\ntau = 'high'\n", "scenario.tau"),
    ("[sweep]\nvariable = 'colour'\n", "sweep.variable"),
    ("[sweep]\nmodels = ['linear', 'magic']\n", "sweep.models"),
    ("[sweep]\nstep = 0\n", "sweep"),
    ("[method]\nname = 'annealing'\n", "method.name"),
    ("[method]\nseed = 1.5\n", "method.seed"),
    ("[output]\nformat = 'xlsx'\n", "output.format"),
    ("[power]\nflight_times_h = [-1]\n", "power.flight_times_h"),
    ("[sweep]\npositioning = true\n", "sweep.baseline_d_a_km"),
    ("[scenario]\nd_a_km = 25\n", "scenario"),
])
def test_field_named_in_error(text, field):
    with pytest.raises(ConfigError) as exc:
        parse_config(text)
    assert exc.value.field == field


def test_round_trip(tmp_path):
    cfg = parse_config("""
[scenario]
d_a_km = 10
p_t_dbm = 27.5
form = "printed"
[sweep]
variable = "f_ghz"
start = 1
stop = 10
step = 0.5
models = ["linear"]
[power]
p_req_dbm = -5
flight_times_h = [1, 12.5, 24]
[method]
name = "qlearn"
seed = 11
""")
    p = dump_config(cfg, tmp_path / "resolved.toml")
    again = load_config(p)
    assert again == cfg
    assert dumps_config(again) == dumps_config(cfg)


def test_sweep_values():
    cfg = config_from_dict({"sweep": {"start": 0, "stop": 50, "step": 1}})
    v = cfg.sweep.values()
    assert len(v) == 51 and v[0] == 0 and v[-1] == 50


def test_nonfinite_rejected():
    with pytest.raises(ConfigError):
        config_from_dict({"scenario": {"p_t_dbm": math.inf}})


def test_missing_file(tmp_path):
    with pytest.raises(ConfigError, match="cannot read"):
        load_config(tmp_path / "nope.toml")
