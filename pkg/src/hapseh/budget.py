"""Inventory energy borrowing and flight-mission harvest totals.

When the energy harvested in a block cannot sustain the required transmit
power over the transmit slot, the regular platform tops it up from its own
battery. The smallest top-up that meets the requirement is

    E_a = max((1 - tau) T P_req - E_eh, 0)

and the resulting transmit power is ``(E_a + E_eh) / ((1 - tau) T)``,
which equals ``max(P_req, E_eh / ((1 - tau) T))``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError
from .link import TimeSwitch


@dataclass(frozen=True)
class PowerBudget:
    p_req: float
    e_harvested: float
    e_borrowed: float
    p_augmented: float
    e_surplus: float
    e_mission_total: float | None = None
    flight_time: float | None = None


def _slot(ts: TimeSwitch) -> float:
    if ts.tau >= 1.0:
        raise InvalidArgumentError("tau = 1 leaves no transmit slot")
    return (1.0 - ts.tau) * ts.block_period


def borrow_energy(p_req, ts: TimeSwitch, e_harvested):
    """Minimum inventory energy (J) that lifts the transmit power to ``p_req``."""
    if np.any(np.asarray(p_req) < 0) or np.any(np.asarray(e_harvested) < 0):
        raise InvalidArgumentError("p_req and e_harvested must be >= 0")
    return np.maximum(_slot(ts) * p_req - e_harvested, 0.0)


def augmented_power(e_borrowed, e_harvested, ts: TimeSwitch):
    """Transmit power (W) from harvested plus borrowed energy."""
    if np.any(np.asarray(e_borrowed) < 0) or np.any(np.asarray(e_harvested) < 0):
        raise InvalidArgumentError("energies must be >= 0")
    return (e_borrowed + e_harvested) / _slot(ts)


def mission_harvest(e_harvested_per_block, ts: TimeSwitch, flight_time):
    """Energy (J) collected over ``flight_time`` seconds.

    The per-block harvest is spread over the harvest slot ``tau T`` and the
    whole flight is counted at that rate.
    """
    if ts.tau <= 0:
        raise InvalidArgumentError("tau = 0 means nothing is harvested per slot")
    if np.any(np.asarray(flight_time) < 0):
        raise InvalidArgumentError("flight_time must be >= 0")
    return e_harvested_per_block * flight_time / (ts.tau * ts.block_period)


def power_budget(p_req: float, ts: TimeSwitch, e_harvested: float,
                 flight_time: float | None = None) -> PowerBudget:
    e_a = float(borrow_energy(p_req, ts, e_harvested))
    p_a = float(augmented_power(e_a, e_harvested, ts))
    surplus = max(e_harvested - _slot(ts) * p_req, 0.0)
    total = None
    if flight_time is not None:
        total = float(mission_harvest(e_harvested, ts, flight_time))
    return PowerBudget(p_req, e_harvested, e_a, p_a, surplus, total, flight_time)
