"""Collinear two-tier deployment geometry.

The mother platform, the regular platform and the ground receiver lie in
one vertical plane. Altitudes are fixed; the only free placement variable
is the horizontal offset ``d_a`` between the two platforms.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from typing import NamedTuple

import numpy as np

from .errors import GeometryError

#: Smallest admissible offset when the strict ``d_a > 0`` constraint is enforced.
MIN_OFFSET = 1.0


@dataclass(frozen=True)
class ScenarioGeometry:
    """Platform altitudes and horizontal spans, all in meters.

    Attributes
    ----------
    d_ap1 : float
        Altitude of the mother platform.
    d_ap2 : float
        Altitude of the regular platform.
    d_z : float
        Horizontal span from the mother platform to the ground receiver.
    d_a : float
        Horizontal offset of the regular platform from the mother platform.
        The endpoints 0 and ``d_z`` are admitted.
    """

    d_ap1: float = 22e3
    d_ap2: float = 18e3
    d_z: float = 20e3
    d_a: float = 0.0

    def validate(self, strict_offset: bool = False) -> "ScenarioGeometry":
        """Raise :class:`GeometryError` naming the first violated constraint."""
        vals = (self.d_ap1, self.d_ap2, self.d_z, self.d_a)
        if not all(np.isfinite(v) for v in vals):
            raise GeometryError("finite", f"non-finite geometry {vals}")
        if not self.d_ap2 > 0:
            raise GeometryError("27d", f"d_ap2 must be > 0, got {self.d_ap2}")
        if not self.d_ap1 > self.d_ap2:
            raise GeometryError(
                "27d", f"mother altitude d_ap1={self.d_ap1} must exceed d_ap2={self.d_ap2}"
            )
        if not self.d_ap1 > self.d_z:
            raise GeometryError(
                "27e", f"d_ap1={self.d_ap1} must exceed horizontal span d_z={self.d_z}"
            )
        if self.d_z < 0:
            raise GeometryError("27c", f"d_z must be >= 0, got {self.d_z}")
        lo = MIN_OFFSET if strict_offset else 0.0
        if not lo <= self.d_a <= self.d_z:
            raise GeometryError(
                "27c", f"offset d_a={self.d_a} must lie in [{lo}, d_z={self.d_z}]"
            )
        return self

    def with_offset(self, d_a: float) -> "ScenarioGeometry":
        return replace(self, d_a=float(d_a))

    @classmethod
    def from_km(cls, d_ap1: float, d_ap2: float, d_z: float, d_a: float = 0.0):
        return cls(d_ap1 * 1e3, d_ap2 * 1e3, d_z * 1e3, d_a * 1e3)

    @property
    def altitude_gap(self) -> float:
        return self.d_ap1 - self.d_ap2

    def offset_for_first_hop(self, d1: float) -> float:
        """Offset ``d_a`` that produces a first-hop length ``d1``."""
        gap = self.altitude_gap
        if d1 < gap:
            raise GeometryError(
                "27c", f"first hop {d1} m is shorter than the altitude gap {gap} m"
            )
        return float(np.sqrt(d1 * d1 - gap * gap))


class HopDistances(NamedTuple):
    d1: float
    d2: float


def hop_lengths(d_ap1, d_ap2, d_z, d_a):
    """Vectorised hop lengths; no validation."""
    d_a = np.asarray(d_a, dtype=float)
    d1 = np.hypot(d_ap1 - d_ap2, d_a)
    d2 = np.hypot(d_ap2, d_z - d_a)
    return d1, d2


def hop_distances(geom: ScenarioGeometry, validate: bool = True) -> HopDistances:
    """Mother-to-regular (``d1``) and regular-to-receiver (``d2``) distances."""
    if validate:
        geom.validate()
    d1, d2 = hop_lengths(geom.d_ap1, geom.d_ap2, geom.d_z, geom.d_a)
    return HopDistances(float(d1), float(d2))


def equivalent_pathloss_distance(geom: ScenarioGeometry, validate: bool = True) -> float:
    """Product ``d1 * d2`` that governs the end-to-end linear-model path loss."""
    d1, d2 = hop_distances(geom, validate=validate)
    return d1 * d2


def squared_pathloss_distance(d_ap1, d_ap2, d_z, d_a):
    """``D**2 = (gap**2 + d_a**2) * (d_ap2**2 + (d_z - d_a)**2)``, vectorised."""
    d_a = np.asarray(d_a, dtype=float)
    lam1 = d_ap2 * d_ap2
    lam2 = (d_ap1 - d_ap2) ** 2
    return (lam2 + d_a * d_a) * (lam1 + (d_z - d_a) ** 2)
