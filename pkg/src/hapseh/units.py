"""Unit conversions and physical constants.

Everything downstream of this module works in linear SI units (watts,
meters, hertz, kelvin). Decibel quantities only appear at the
configuration boundary.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError


@dataclass(frozen=True)
class PhysicalConstants:
    speed_of_light: float = 2.99792458e8  # m/s, exact
    boltzmann: float = 1.380649e-23  # J/K, exact since 2019 SI


CONSTANTS = PhysicalConstants()
SPEED_OF_LIGHT = CONSTANTS.speed_of_light
BOLTZMANN = CONSTANTS.boltzmann


def _finite(x, name):
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise InvalidArgumentError(f"{name} must be finite, got {x!r}")
    return arr


def _positive(x, name):
    arr = _finite(x, name)
    if np.any(arr <= 0):
        raise InvalidArgumentError(f"{name} must be > 0, got {x!r}")
    return arr


def _scalar_or_array(arr):
    return float(arr) if arr.ndim == 0 else arr


def db_to_linear(x):
    """Convert a decibel ratio to a linear power ratio, ``10**(x/10)``."""
    arr = _finite(x, "x")
    return _scalar_or_array(10.0 ** (arr / 10.0))


def linear_to_db(x):
    arr = _positive(x, "x")
    return _scalar_or_array(10.0 * np.log10(arr))


def dbm_to_watts(x):
    """Convert dBm to watts, ``10**((x - 30)/10)``."""
    arr = _finite(x, "x")
    return _scalar_or_array(10.0 ** ((arr - 30.0) / 10.0))


def watts_to_dbm(x):
    arr = _positive(x, "x")
    return _scalar_or_array(10.0 * np.log10(arr) + 30.0)


def wavelength(f):
    """Free-space wavelength in meters for a carrier frequency in hertz."""
    arr = _positive(f, "f")
    return _scalar_or_array(SPEED_OF_LIGHT / arr)


def noise_power(bandwidth, temperature, noise_figure):
    """Thermal noise power ``k * T * B * F`` in watts.

    ``noise_figure`` is a linear factor, not dB.
    """
    b = _positive(bandwidth, "bandwidth")
    t = _positive(temperature, "temperature")
    nf = _positive(noise_figure, "noise_figure")
    return _scalar_or_array(BOLTZMANN * t * b * nf)
