"""Energy-harvesting link budget for the two-hop platform chain.

The regular platform harvests from the mother platform during the first
``tau * T`` of each block (first hop, distance ``d1``) and spends the
harvested energy transmitting to the ground receiver during the remaining
``(1 - tau) * T`` (second hop, distance ``d2``).

Two received-power forms are available:

``"composed"`` (default)
    Obtained by chaining harvest -> transmit power -> free-space hop, so
    the linear model carries the conversion efficiency ``eta`` and the
    non-linear model's received power is ``beta**2 * delta * h2**2``.
``"printed"``
    The closed forms exactly as they are usually quoted for this system:
    the linear form omits ``eta`` and the non-linear form carries an extra
    multiplicative ``P_t`` (watts squared, dimensionally inconsistent).
    Kept for side-by-side comparison with published curves.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Literal

import numpy as np

from .errors import InvalidArgumentError
from .geometry import ScenarioGeometry, hop_lengths
from .units import db_to_linear, noise_power, wavelength

LINEAR = "linear"
NONLINEAR = "nonlinear"
NO_EH = "no-eh"
EH_MODELS = (LINEAR, NONLINEAR)
ALL_MODELS = (LINEAR, NONLINEAR, NO_EH)
FORMS = ("composed", "printed")

Model = Literal["linear", "nonlinear"]
Form = Literal["composed", "printed"]


@dataclass(frozen=True)
class RadioParams:
    """Transmitter/receiver parameters in linear SI units."""

    p_t: float = 1.0
    g_t: float = field(default_factory=lambda: db_to_linear(43.2))
    g_r: float = field(default_factory=lambda: db_to_linear(40.0))
    f: float = 2.45e9
    eta: float = 0.95
    bandwidth: float = 800e6
    temperature: float = 300.0
    noise_figure: float = field(default_factory=lambda: db_to_linear(7.0))
    p_t_min: float = 0.0

    def __post_init__(self):
        if not (np.isfinite(self.p_t) and self.p_t >= self.p_t_min >= 0):
            raise InvalidArgumentError(
                f"[27f] need p_t >= p_t_min >= 0, got p_t={self.p_t}, p_t_min={self.p_t_min}"
            )
        if not 0.0 <= self.eta <= 1.0:
            raise InvalidArgumentError(f"eta must lie in [0, 1], got {self.eta}")
        for name in ("g_t", "g_r", "f", "bandwidth", "temperature", "noise_figure"):
            v = getattr(self, name)
            if not (np.isfinite(v) and v > 0):
                raise InvalidArgumentError(f"{name} must be finite and > 0, got {v}")

    @property
    def wavelength(self) -> float:
        return wavelength(self.f)

    @property
    def noise_power(self) -> float:
        return noise_power(self.bandwidth, self.temperature, self.noise_figure)

    def with_(self, **changes) -> "RadioParams":
        return replace(self, **changes)


@dataclass(frozen=True)
class NonlinearEhCircuit:
    """Logistic rectifier constants.

    The defaults (24 mW saturation, 150 /W steepness, 14 mW threshold) are
    typical literature values for a commercial rectifier, not measured
    constants of any particular platform; override them for real studies.
    """

    m_sat: float = 0.024
    sigma: float = 150.0
    rho: float = 0.014

    def __post_init__(self):
        for name in ("m_sat", "sigma", "rho"):
            v = getattr(self, name)
            if not (np.isfinite(v) and v > 0):
                raise InvalidArgumentError(f"{name} must be finite and > 0, got {v}")


@dataclass(frozen=True)
class TimeSwitch:
    tau: float = 0.1
    block_period: float = 1.0

    def __post_init__(self):
        if not 0.0 < self.tau < 1.0:
            raise InvalidArgumentError(f"[27b] tau must lie in (0, 1), got {self.tau}")
        if not (np.isfinite(self.block_period) and self.block_period > 0):
            raise InvalidArgumentError(f"block_period must be > 0, got {self.block_period}")

    @property
    def beta_sq(self) -> float:
        return self.tau / (1.0 - self.tau)


@dataclass(frozen=True)
class EhOutcome:
    model: str
    harvested_energy: float
    eh_transmit_power: float
    received_power: float
    snr: float
    rate: float


def channel_amplitude(g_t, g_r, lam, d):
    """Free-space amplitude gain ``sqrt(g_t g_r) * lam / (4 pi d)``."""
    d = np.asarray(d, dtype=float)
    if np.any(d <= 0):
        raise InvalidArgumentError("singular geometry: hop distance must be > 0")
    out = np.sqrt(g_t * g_r) * lam / (4.0 * np.pi * d)
    return float(out) if out.ndim == 0 else out


def harvest_linear(ts: TimeSwitch, radio: RadioParams, g1):
    """Energy (J) collected in one block by an ideal linear rectifier."""
    return ts.tau * radio.eta * radio.p_t * np.square(g1) * ts.block_period


def _logistic(x, circuit: NonlinearEhCircuit):
    x = np.asarray(x, dtype=float)
    s = circuit.sigma
    with np.errstate(over="ignore"):
        out = circuit.m_sat * -np.expm1(-s * x) / (1.0 + np.exp(-s * (x - circuit.rho)))
    return float(out) if out.ndim == 0 else out


def logistic_delta(radio: RadioParams, circuit: NonlinearEhCircuit, g1):
    """Harvested DC power (W) of the saturating rectifier fed ``P_t * g1**2``."""
    return _logistic(radio.p_t * np.square(g1), circuit)


def harvest_nonlinear(ts: TimeSwitch, delta):
    if np.any(np.asarray(delta) < 0):
        raise InvalidArgumentError("harvested power must be >= 0")
    return ts.tau * delta * ts.block_period


def eh_transmit_power(ts: TimeSwitch, harvested):
    """Average power available in the transmit slot ``(1 - tau) T``."""
    if ts.tau >= 1.0:
        raise InvalidArgumentError("tau = 1 leaves no transmit slot")
    if np.any(np.asarray(harvested) < 0):
        raise InvalidArgumentError("harvested energy must be >= 0")
    return harvested / ((1.0 - ts.tau) * ts.block_period)


def _check_model(model, allowed=EH_MODELS):
    if model not in allowed:
        raise InvalidArgumentError(f"unknown model {model!r}; expected one of {allowed}")


def _check_form(form):
    if form not in FORMS:
        raise InvalidArgumentError(f"unknown form {form!r}; expected one of {FORMS}")


def link_budget(model, geom: ScenarioGeometry, radio: RadioParams, circuit, d_a, tau,
                block_period=1.0, form: Form = "composed"):
    """Vectorised link budget over broadcastable ``d_a`` and ``tau`` arrays.

    Returns a dict with ``harvested_energy``, ``eh_transmit_power``,
    ``received_power``, ``snr`` and ``rate`` arrays. ``model`` may also be
    ``"no-eh"``, in which case the regular platform transmits ``P_t`` of its
    own over the whole block and ``tau`` is ignored.
    """
    _check_model(model, ALL_MODELS)
    _check_form(form)
    d_a = np.asarray(d_a, dtype=float)
    tau = np.asarray(tau, dtype=float)
    d1, d2 = hop_lengths(geom.d_ap1, geom.d_ap2, geom.d_z, d_a)
    lam = radio.wavelength
    gain = radio.g_t * radio.g_r
    path = (lam / (4.0 * np.pi)) ** 2
    h2_sq = gain * path / (d2 * d2)
    pn = radio.noise_power
    p_t = radio.p_t

    if model == NO_EH:
        p_r = p_t * h2_sq
        snr = p_r / pn
        shape = np.broadcast(d_a, tau).shape
        return {
            "harvested_energy": np.zeros(shape),
            "eh_transmit_power": np.full(shape, p_t),
            "received_power": np.broadcast_to(p_r, shape).copy(),
            "snr": np.broadcast_to(snr, shape).copy(),
            "rate": np.broadcast_to(radio.bandwidth * np.log2(1.0 + snr), shape).copy(),
        }

    beta_sq = tau / (1.0 - tau)
    g1_sq = gain * path / (d1 * d1)
    if model == LINEAR:
        energy = tau * radio.eta * p_t * g1_sq * block_period
        # end-to-end closed form rather than the harvest pipeline
        eff = radio.eta if form == "composed" else 1.0
        dd = d1 * d2
        p_r = eff * p_t * beta_sq * (gain / dd) ** 2 * path * path
    else:
        if circuit is None:
            raise InvalidArgumentError("non-linear model needs a NonlinearEhCircuit")
        xi = p_t * gain * path / (d1 * d1)
        delta = _logistic(xi, circuit)
        energy = tau * delta * block_period
        p_r = beta_sq * delta * h2_sq
        if form == "printed":
            p_r = p_r * p_t
    p_eh = energy / ((1.0 - tau) * block_period)
    snr = p_r / pn
    rate = radio.bandwidth * (1.0 - tau) * np.log2(1.0 + snr)
    return {
        "harvested_energy": energy,
        "eh_transmit_power": p_eh,
        "received_power": p_r,
        "snr": snr,
        "rate": rate,
    }


def _scalar(budget, key):
    return float(np.asarray(budget[key]))


def received_power(model: Model, geom: ScenarioGeometry, radio: RadioParams,
                   ts: TimeSwitch, circuit: NonlinearEhCircuit | None = None,
                   form: Form = "composed") -> float:
    """Received power (W) at the ground receiver for one EH model."""
    _check_model(model)
    if model == NONLINEAR and circuit is None:
        raise InvalidArgumentError("non-linear model needs a NonlinearEhCircuit")
    geom.validate()
    b = link_budget(model, geom, radio, circuit, geom.d_a, ts.tau, ts.block_period, form)
    return _scalar(b, "received_power")


def data_rate(model: Model, geom: ScenarioGeometry, radio: RadioParams, ts: TimeSwitch,
              circuit: NonlinearEhCircuit | None = None, form: Form = "composed") -> float:
    """Achievable rate (bit/s) over the effective bandwidth ``B (1 - tau)``."""
    _check_model(model)
    if model == NONLINEAR and circuit is None:
        raise InvalidArgumentError("non-linear model needs a NonlinearEhCircuit")
    geom.validate()
    b = link_budget(model, geom, radio, circuit, geom.d_a, ts.tau, ts.block_period, form)
    return _scalar(b, "rate")


def data_rate_no_eh(geom: ScenarioGeometry, radio: RadioParams) -> float:
    """Rate when the regular platform spends its own ``P_t`` over the whole block."""
    geom.validate()
    b = link_budget(NO_EH, geom, radio, None, geom.d_a, 0.5)
    return _scalar(b, "rate")


def evaluate(model: str, geom: ScenarioGeometry, radio: RadioParams, ts: TimeSwitch,
             circuit: NonlinearEhCircuit | None = None, form: Form = "composed") -> EhOutcome:
    geom.validate()
    b = link_budget(model, geom, radio, circuit, geom.d_a, ts.tau, ts.block_period, form)
    return EhOutcome(model=model, **{k: _scalar(b, k) for k in b})


@dataclass(frozen=True)
class Scenario:
    """Everything needed to evaluate the link at a given ``(d_a, tau)``."""

    geometry: ScenarioGeometry = field(default_factory=ScenarioGeometry)
    radio: RadioParams = field(default_factory=RadioParams)
    time_switch: TimeSwitch = field(default_factory=TimeSwitch)
    circuit: NonlinearEhCircuit = field(default_factory=NonlinearEhCircuit)
    form: str = "composed"

    def __post_init__(self):
        _check_form(self.form)

    def budget(self, model, d_a=None, tau=None):
        d_a = self.geometry.d_a if d_a is None else d_a
        tau = self.time_switch.tau if tau is None else tau
        return link_budget(model, self.geometry, self.radio, self.circuit, d_a, tau,
                           self.time_switch.block_period, self.form)

    def rate(self, model, d_a=None, tau=None):
        """Rate (bit/s), broadcasting over ``d_a`` and ``tau``."""
        out = self.budget(model, d_a, tau)["rate"]
        return float(out) if np.ndim(out) == 0 else out

    def evaluate(self, model) -> EhOutcome:
        return evaluate(model, self.geometry, self.radio, self.time_switch,
                        self.circuit, self.form)

    def replace(self, **changes) -> "Scenario":
        return replace(self, **changes)
