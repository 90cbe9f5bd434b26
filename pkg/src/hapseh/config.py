"""Experiment configuration: TOML in, validated dataclasses out.

Keys carry their unit as a suffix (``p_t_dbm``, ``f_ghz``, ``d_ap1_km``).
Absent keys take the reference-scenario defaults; unknown sections or keys
are rejected. ``dump_config`` writes the fully resolved configuration so a
run can be reproduced from its own output directory.
"""
from __future__ import annotations

import dataclasses
import math
import sys
from dataclasses import dataclass, field, fields
from pathlib import Path

import tomli_w

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .errors import ConfigError, GeometryError, InvalidArgumentError
from .geometry import ScenarioGeometry
from .link import ALL_MODELS, EH_MODELS, FORMS, NonlinearEhCircuit, RadioParams, Scenario, TimeSwitch
from .positioning import optimal_da_linear
from .units import db_to_linear, dbm_to_watts

SWEEP_VARIABLES = (
    "p_t_dbm", "d_ap1_km", "d_ap2_km", "d_z_km", "d_a_km", "d1_km", "f_ghz",
    "g_t_dbi", "g_r_dbi", "tau", "eta", "bandwidth_mhz", "noise_figure_db",
)
METHODS = ("idfa", "qlearn", "exhaustive")


@dataclass
class ScenarioSection:
    d_ap1_km: float = 22.0
    d_ap2_km: float = 18.0
    d_z_km: float = 20.0
    # None places the regular platform at the linear-model optimum
    d_a_km: float | None = None
    p_t_dbm: float = 30.0
    p_t_min_dbm: float | None = None
    g_t_dbi: float = 43.2
    g_r_dbi: float = 40.0
    f_ghz: float = 2.45
    eta: float = 0.95
    tau: float = 0.1
    block_period_s: float = 1.0
    bandwidth_mhz: float = 800.0
    temperature_k: float = 300.0
    noise_figure_db: float = 7.0
    form: str = "composed"


@dataclass
class CircuitSection:
    m_sat_mw: float = 24.0
    sigma_per_w: float = 150.0
    rho_mw: float = 14.0


@dataclass
class SweepSection:
    variable: str = "p_t_dbm"
    start: float = 0.0
    stop: float = 50.0
    step: float = 1.0
    models: list = field(default_factory=lambda: list(ALL_MODELS))
    fair_power: bool = False
    positioning: bool = False
    baseline_d_a_km: float | None = None

    def values(self) -> list[float]:
        n = int(math.floor((self.stop - self.start) / self.step + 1e-9))
        return [self.start + k * self.step for k in range(n + 1)]


@dataclass
class PowerSection:
    p_req_dbm: float | None = None
    flight_times_h: list = field(default_factory=list)


@dataclass
class MethodSection:
    name: str = "idfa"
    model: str = "linear"
    seed: int = 0
    grid: str = "default"  # "default" or "pairs"
    n_d_a: int = 201
    n_tau: int = 99
    idfa_n_max: int = 50
    idfa_epsilon_bps: float = 1.0
    ql_learning_rate: float = 0.1
    ql_discount: float = 0.9
    ql_eps_initial: float = 1.0
    ql_eps_decay: float = 0.995
    ql_eps_floor: float = 0.05
    ql_episodes: int = 2000
    ql_steps_per_episode: int = 50
    random_draws: int = 10
    position_step_m: float = 1.0


@dataclass
class OutputSection:
    dir: str | None = None
    format: str = "csv"


@dataclass
class ExperimentConfig:
    scenario: ScenarioSection = field(default_factory=ScenarioSection)
    circuit: CircuitSection = field(default_factory=CircuitSection)
    sweep: SweepSection = field(default_factory=SweepSection)
    power: PowerSection = field(default_factory=PowerSection)
    method: MethodSection = field(default_factory=MethodSection)
    output: OutputSection = field(default_factory=OutputSection)

    def to_dict(self) -> dict:
        out = {}
        for f in fields(self):
            sec = {k: v for k, v in dataclasses.asdict(getattr(self, f.name)).items()
                   if v is not None}
            out[f.name] = sec
        return out

    def build_scenario(self, **overrides) -> Scenario:
        """Scenario in SI units; ``overrides`` replace section keys by name."""
        return scenario_from_section(dataclasses.replace(self.scenario, **overrides),
                                     self.circuit)


_SECTION_TYPES = {
    "scenario": ScenarioSection, "circuit": CircuitSection, "sweep": SweepSection,
    "power": PowerSection, "method": MethodSection, "output": OutputSection,
}


def _coerce(section: str, key: str, value, default):
    name = f"{section}.{key}"
    if isinstance(default, bool):
        if not isinstance(value, bool):
            raise ConfigError(f"expected a boolean, got {value!r}", name)
        return value
    if isinstance(default, int) and not isinstance(default, bool):
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigError(f"expected an integer, got {value!r}", name)
        return value
    if isinstance(default, list):
        if not isinstance(value, list):
            raise ConfigError(f"expected a list, got {value!r}", name)
        return list(value)
    if isinstance(default, str):
        if not isinstance(value, str):
            raise ConfigError(f"expected a string, got {value!r}", name)
        return value
    # float or optional float/str
    if isinstance(value, bool):
        raise ConfigError(f"expected a number, got {value!r}", name)
    if isinstance(value, (int, float)):
        if not math.isfinite(value):
            raise ConfigError(f"must be finite, got {value!r}", name)
        return float(value)
    if isinstance(value, str) and default is None and key == "dir":
        return value
    raise ConfigError(f"expected a number, got {value!r}", name)


def _section_from_dict(name: str, raw: dict):
    cls = _SECTION_TYPES[name]
    if not isinstance(raw, dict):
        raise ConfigError("must be a table", name)
    defaults = cls()
    known = {f.name for f in fields(cls)}
    unknown = sorted(set(raw) - known)
    if unknown:
        raise ConfigError(f"unknown key(s) {unknown}; valid keys: {sorted(known)}", name)
    kwargs = {k: _coerce(name, k, v, getattr(defaults, k)) for k, v in raw.items()}
    return cls(**kwargs)


def config_from_dict(raw: dict) -> ExperimentConfig:
    unknown = sorted(set(raw) - set(_SECTION_TYPES))
    if unknown:
        raise ConfigError(f"unknown section(s) {unknown}; valid: {sorted(_SECTION_TYPES)}")
    cfg = ExperimentConfig(**{name: _section_from_dict(name, raw.get(name, {}))
                              for name in _SECTION_TYPES})
    validate_config(cfg)
    return cfg


def scenario_from_section(s: ScenarioSection, c: CircuitSection) -> Scenario:
    geom = ScenarioGeometry.from_km(s.d_ap1_km, s.d_ap2_km, s.d_z_km,
                                    0.0 if s.d_a_km is None else s.d_a_km)
    p_t = dbm_to_watts(s.p_t_dbm)
    p_min = 0.0 if s.p_t_min_dbm is None else dbm_to_watts(s.p_t_min_dbm)
    radio = RadioParams(p_t=p_t, g_t=db_to_linear(s.g_t_dbi), g_r=db_to_linear(s.g_r_dbi),
                        f=s.f_ghz * 1e9, eta=s.eta, bandwidth=s.bandwidth_mhz * 1e6,
                        temperature=s.temperature_k,
                        noise_figure=db_to_linear(s.noise_figure_db), p_t_min=p_min)
    ts = TimeSwitch(s.tau, s.block_period_s)
    circuit = NonlinearEhCircuit(c.m_sat_mw * 1e-3, c.sigma_per_w, c.rho_mw * 1e-3)
    if s.d_a_km is None:
        geom = geom.with_offset(optimal_da_linear(geom).d_a_star)
    geom.validate()
    return Scenario(geom, radio, ts, circuit, s.form)


def validate_config(cfg: ExperimentConfig) -> None:
    """Check every section against the model constraints before any computation."""
    s = cfg.scenario
    if s.form not in FORMS:
        raise ConfigError(f"must be one of {FORMS}", "scenario.form")
    if not 0 < s.tau < 1:
        raise ConfigError(f"[27b] tau must lie in (0, 1), got {s.tau}", "scenario.tau")
    try:
        geom = ScenarioGeometry.from_km(s.d_ap1_km, s.d_ap2_km, s.d_z_km,
                                        0.0 if s.d_a_km is None else s.d_a_km)
        geom.validate()
        scenario_from_section(s, cfg.circuit)
    except GeometryError as exc:
        raise ConfigError(str(exc), "scenario") from exc
    except InvalidArgumentError as exc:
        raise ConfigError(str(exc), "scenario") from exc

    w = cfg.sweep
    if w.variable not in SWEEP_VARIABLES:
        raise ConfigError(f"unknown sweep variable {w.variable!r}; valid: {list(SWEEP_VARIABLES)}",
                          "sweep.variable")
    if not w.step > 0 or w.stop < w.start:
        raise ConfigError("need step > 0 and stop >= start", "sweep")
    bad = [m for m in w.models if m not in ALL_MODELS]
    if bad or not w.models:
        raise ConfigError(f"models must be a non-empty subset of {ALL_MODELS}", "sweep.models")
    if w.positioning and w.baseline_d_a_km is None:
        raise ConfigError("positioning comparison needs an explicit baseline offset",
                          "sweep.baseline_d_a_km")

    p = cfg.power
    if any(not isinstance(t, (int, float)) or isinstance(t, bool) or t < 0
           for t in p.flight_times_h):
        raise ConfigError("flight times must be non-negative numbers", "power.flight_times_h")

    m = cfg.method
    if m.name not in METHODS:
        raise ConfigError(f"must be one of {METHODS}", "method.name")
    if m.model not in EH_MODELS:
        raise ConfigError(f"must be one of {EH_MODELS}", "method.model")
    if m.grid not in ("default", "pairs"):
        raise ConfigError("must be 'default' or 'pairs'", "method.grid")
    if m.n_d_a < 1 or m.n_tau < 1:
        raise ConfigError("grid sizes must be >= 1", "method")
    if not m.position_step_m > 0:
        raise ConfigError("must be > 0", "method.position_step_m")

    if cfg.output.format not in ("csv", "json"):
        raise ConfigError("must be 'csv' or 'json'", "output.format")


def parse_config(text: str) -> ExperimentConfig:
    try:
        raw = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        line = getattr(exc, "lineno", None)
        col = getattr(exc, "colno", None)
        where = f" at line {line}, column {col}" if line is not None else ""
        raise ConfigError(f"parse error{where}: {exc}") from exc
    return config_from_dict(raw)


def load_config(path) -> ExperimentConfig:
    """Read, default-fill and validate a TOML experiment file."""
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read {p}: {exc}") from exc
    return parse_config(text)


def dumps_config(cfg: ExperimentConfig) -> str:
    return tomli_w.dumps(cfg.to_dict())


def dump_config(cfg: ExperimentConfig, path) -> Path:
    p = Path(path)
    p.write_text(dumps_config(cfg), encoding="utf-8", newline="\n")
    return p
