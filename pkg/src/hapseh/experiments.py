"""Sweep and optimisation drivers with deterministic CSV/JSON output."""
from __future__ import annotations

import csv
import dataclasses
import io
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from .budget import power_budget
from .config import ExperimentConfig, dump_config
from .errors import ConfigError
from .joint import (GridSpec, IdfaConfig, QLearnConfig, exhaustive_joint, idfa,
                    qlearn_train, random_selection)
from .geometry import hop_distances
from .link import LINEAR, NO_EH, NONLINEAR, channel_amplitude
from .positioning import grid_min_pathloss, optimal_da_linear, optimal_da_nonlinear
from .units import dbm_to_watts

OUTPUT_DIR_ENV = "HAPSEH_OUTPUT_DIR"

BASE_COLUMNS = ["sweep_value", "model", "harvested_energy_J", "p_eh_W", "p_r_W", "snr",
                "rate_bps", "d_a_m"]
POSITION_COLUMNS = ["d_a_opt_m", "rate_opt_bps"]
BUDGET_COLUMNS = ["p_req_W", "e_borrowed_J", "p_a_W", "e_surplus_J", "rate_budget_bps"]


def fmt(x) -> str:
    """17 significant digits, enough to round-trip any double."""
    if isinstance(x, str):
        return x
    return format(float(x), ".17g")


def mission_columns(flight_times_h) -> list[str]:
    return [f"e_total_J_{fmt(h)}h" for h in flight_times_h]


def sweep_columns(cfg: ExperimentConfig) -> list[str]:
    cols = list(BASE_COLUMNS)
    if cfg.sweep.positioning:
        cols += POSITION_COLUMNS
    if cfg.power.p_req_dbm is not None:
        cols += BUDGET_COLUMNS
    cols += mission_columns(cfg.power.flight_times_h)
    return cols


def _point_overrides(cfg: ExperimentConfig, value: float) -> dict:
    var = cfg.sweep.variable
    if var == "d1_km":
        s = cfg.scenario
        gap = s.d_ap1_km - s.d_ap2_km
        if value < gap:
            raise ConfigError(f"first hop {value} km is shorter than the altitude gap {gap} km",
                              "sweep")
        return {"d_a_km": math.sqrt(value * value - gap * gap)}
    return {var: value}


def _evaluate_point(cfg: ExperimentConfig, value: float) -> list[dict]:
    overrides = _point_overrides(cfg, value)
    if cfg.sweep.positioning:
        overrides.setdefault("d_a_km", cfg.sweep.baseline_d_a_km)
    sc = cfg.build_scenario(**overrides)
    ts = sc.time_switch
    p_req = None if cfg.power.p_req_dbm is None else dbm_to_watts(cfg.power.p_req_dbm)
    rows = []
    for model in cfg.sweep.models:
        msc = sc
        if cfg.sweep.fair_power and model != NO_EH:
            msc = sc.replace(radio=sc.radio.with_(p_t=sc.radio.p_t / ts.tau))
        b = msc.budget(model)
        row = {"sweep_value": value, "model": model,
               "harvested_energy_J": float(b["harvested_energy"]),
               "p_eh_W": float(b["eh_transmit_power"]), "p_r_W": float(b["received_power"]),
               "snr": float(b["snr"]), "rate_bps": float(b["rate"]),
               "d_a_m": sc.geometry.d_a}
        if cfg.sweep.positioning:
            if model == LINEAR:
                d_opt = optimal_da_linear(sc.geometry).d_a_star
            elif model == NONLINEAR:
                d_opt = optimal_da_nonlinear(msc).d_a_star
            else:
                d_opt = sc.geometry.d_a
            row["d_a_opt_m"] = d_opt
            row["rate_opt_bps"] = float(msc.rate(model, d_opt))
        if p_req is not None:
            row.update(_budget_fields(msc, model, b, p_req))
        for h, col in zip(cfg.power.flight_times_h, mission_columns(cfg.power.flight_times_h)):
            e = float(b["harvested_energy"])
            row[col] = 0.0 if model == NO_EH else float(e * h * 3600.0 / (ts.tau * ts.block_period))
        rows.append(row)
    return rows


def _budget_fields(sc, model, b, p_req) -> dict:
    ts, radio = sc.time_switch, sc.radio
    if model == NO_EH:
        # own power only; no rate when it cannot meet the requirement
        rate = float(b["rate"]) if radio.p_t >= p_req else math.nan
        return {"p_req_W": p_req, "e_borrowed_J": 0.0, "p_a_W": radio.p_t,
                "e_surplus_J": 0.0, "rate_budget_bps": rate}
    pb = power_budget(p_req, ts, float(b["harvested_energy"]))
    d2 = hop_distances(sc.geometry).d2
    h2_sq = channel_amplitude(radio.g_t, radio.g_r, radio.wavelength, d2) ** 2
    snr = pb.p_augmented * h2_sq / radio.noise_power
    rate = radio.bandwidth * (1 - ts.tau) * math.log2(1 + snr)
    return {"p_req_W": p_req, "e_borrowed_J": pb.e_borrowed, "p_a_W": pb.p_augmented,
            "e_surplus_J": pb.e_surplus, "rate_budget_bps": rate}


def _worker(args):
    cfg, value = args
    return _evaluate_point(cfg, value)


def run_sweep(cfg: ExperimentConfig, workers: int | None = 1) -> list[dict]:
    """One row per sweep point per model, in sweep order then model order."""
    values = cfg.sweep.values()
    if workers is None:
        workers = os.cpu_count() or 1
    if workers <= 1 or len(values) < 2:
        chunks = [_evaluate_point(cfg, v) for v in values]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_worker, [(cfg, v) for v in values]))
    return [row for chunk in chunks for row in chunk]


def rows_to_csv(rows: list[dict], columns: list[str]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([fmt(row[c]) for c in columns])
    return buf.getvalue()


def read_csv(path) -> list[dict]:
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.DictReader(fh))
    out = []
    for row in rows:
        parsed = {}
        for k, v in row.items():
            try:
                parsed[k] = float(v)
            except ValueError:
                parsed[k] = v
        out.append(parsed)
    return out


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    return obj


def dumps_json(obj) -> str:
    return json.dumps(_jsonable(obj), indent=2, sort_keys=True) + "\n"


def _write(path: Path, text: str) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    return path


def output_dir(cfg: ExperimentConfig, override=None) -> Path:
    if override is not None:
        return Path(override)
    if cfg.output.dir is not None:
        return Path(cfg.output.dir)
    return Path(os.environ.get(OUTPUT_DIR_ENV, "."))


def write_sweep(cfg: ExperimentConfig, rows: list[dict], out: Path, stem: str = "sweep") -> Path:
    cols = sweep_columns(cfg)
    if cfg.output.format == "json":
        return _write(out / f"{stem}.json", dumps_json([{c: r[c] for c in cols} for r in rows]))
    return _write(out / f"{stem}.csv", rows_to_csv(rows, cols))


def run_position(cfg: ExperimentConfig) -> dict:
    """Closed-form and oracle offsets for both EH models at the configured scenario."""
    sc = cfg.build_scenario()
    geom = sc.geometry
    lin = optimal_da_linear(geom)
    grid = grid_min_pathloss(geom, cfg.method.position_step_m)
    nl = optimal_da_nonlinear(sc)
    nl_grid = grid_min_pathloss(geom, cfg.method.position_step_m, NONLINEAR, sc)
    return {
        "geometry_m": dataclasses.asdict(geom),
        "linear": {"d_a_star_m": lin.d_a_star, "pathloss_distance_m2": lin.objective,
                   "branch": lin.branch, "second_derivative_check": lin.second_derivative_check,
                   "curvature": lin.details.get("curvature"),
                   "printed_root_m": lin.details.get("printed_root"),
                   "rate_bps": sc.rate(LINEAR, lin.d_a_star),
                   "grid_d_a_m": grid.d_a_star, "grid_step_m": cfg.method.position_step_m},
        "nonlinear": {"d_a_star_m": nl.d_a_star, "rate_bps": nl.objective,
                      "endpoint_rates_bps": list(nl.details["endpoint_rates"]),
                      "interior_excess": nl.details["interior_excess"],
                      "grid_d_a_m": nl_grid.d_a_star, "grid_rate_bps": nl_grid.objective},
    }


def method_grid(cfg: ExperimentConfig, d_z: float) -> GridSpec:
    if cfg.method.grid == "pairs":
        return GridSpec.reference_pairs()
    return GridSpec.default(d_z, cfg.method.n_d_a, cfg.method.n_tau)


def run_optimize(cfg: ExperimentConfig, method: str | None = None):
    """Run one joint optimiser; returns ``(summary dict, trace array)``."""
    m = cfg.method
    name = method or m.name
    sc = cfg.build_scenario()
    grid = method_grid(cfg, sc.geometry.d_z)
    if name == "idfa":
        res = idfa(sc, m.model, grid, IdfaConfig(m.idfa_n_max, m.idfa_epsilon_bps))
    elif name == "qlearn":
        qc = QLearnConfig(m.ql_learning_rate, m.ql_discount, m.ql_eps_initial, m.ql_eps_decay,
                          m.ql_eps_floor, m.ql_episodes, m.ql_steps_per_episode, m.seed)
        res, _ = qlearn_train(sc, m.model, grid, qc)
    elif name == "exhaustive":
        res = exhaustive_joint(sc, m.model, grid)
    else:
        raise ConfigError(f"unknown method {name!r}", "method.name")
    pairs = exhaustive_joint(sc, m.model, GridSpec.reference_pairs())
    rnd = random_selection(sc, m.model, draws=m.random_draws, seed=m.seed)
    summary = {
        "method": res.method, "model": res.model, "d_a_star_m": res.d_a_star,
        "tau_star": res.tau_star, "rate_bps": res.rate, "metadata": res.metadata,
        "reference": {
            "reference_pairs_best": {"d_a_m": pairs.d_a_star, "tau": pairs.tau_star,
                            "rate_bps": pairs.rate,
                            "improvement": res.rate / pairs.rate - 1.0},
            "random_selection": {"d_a_m": rnd.d_a_star, "tau": rnd.tau_star,
                                 "rate_bps": rnd.rate, "draws": m.random_draws,
                                 "improvement": res.rate / rnd.rate - 1.0},
        },
    }
    return summary, res.trace


def write_optimize(summary: dict, trace, out: Path, fmt_: str = "csv") -> tuple[Path, Path]:
    name = summary["method"]
    p_sum = _write(out / f"{name}_result.json", dumps_json(summary))
    rows = [{"index": k, "objective": float(v)} for k, v in enumerate(trace)]
    if fmt_ == "json":
        p_tr = _write(out / f"{name}_trace.json", dumps_json(rows))
    else:
        p_tr = _write(out / f"{name}_trace.csv", rows_to_csv(rows, ["index", "objective"]))
    return p_sum, p_tr


def write_resolved(cfg: ExperimentConfig, out: Path) -> Path:
    out.mkdir(parents=True, exist_ok=True)
    return dump_config(cfg, out / "resolved_config.toml")
