"""Optimal horizontal offset of the regular platform.

Linear model
    The rate depends on the offset only through ``D = d1 * d2``, so the
    optimum minimises ``D**2``, a quartic in ``d_a``. Its stationary points
    are the roots of ``4 x^3 + 3 L3 x^2 + 2 L4 x + L5``.
Non-linear model
    ``d1`` and ``d2`` enter separately; minimising each alone gives the
    candidates ``d_a = 0`` and ``d_a = d_z``, which are compared on rate.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .cubic import cubic_value, real_roots
from .errors import DegenerateGeometryWarning, InteriorOptimumWarning, InvalidArgumentError
from .geometry import ScenarioGeometry, squared_pathloss_distance
from .link import LINEAR, NONLINEAR, Scenario

#: Relative margin by which an interior grid point must beat the endpoints
#: before the non-linear endpoint rule is flagged.
INTERIOR_MARGIN = 1e-3


@dataclass(frozen=True)
class CubicCoefficients:
    lambda1: float
    lambda2: float
    lambda3: float
    lambda4: float
    lambda5: float
    lambda6: float
    a: float
    b: float
    c: float
    d: float
    eps1: float
    eps2: float
    eps3: float

    @property
    def coefficients(self) -> tuple[float, float, float, float]:
        return (self.a, self.b, self.c, self.d)

    def residual_scale(self, d_z: float) -> float:
        """Loose global scale ``max|coef| * d_z**3``."""
        return max(abs(v) for v in self.coefficients) * max(d_z, 1.0) ** 3

    def term_scale(self, x: float) -> float:
        """Largest single-term magnitude of the cubic at ``x``."""
        return max(abs(self.a * x ** 3), abs(self.b * x * x), abs(self.c * x), abs(self.d))


@dataclass(frozen=True)
class PositioningResult:
    d_a_star: float
    objective: float
    method: str
    second_derivative_check: bool
    branch: str | None = None
    details: dict = field(default_factory=dict, compare=False)


def cubic_coefficients(geom: ScenarioGeometry, printed_a: float = 3.0) -> CubicCoefficients:
    """Composite lengths and the stationarity cubic of ``D**2``.

    ``a..d`` are the coefficients of the derivative of ``D**2`` (leading
    coefficient 4). ``eps1..eps3`` are the closed-form intermediates as
    they are commonly printed, i.e. with ``a = printed_a`` and a squared
    ``b`` in ``eps1``; they are kept only for cross-checking.
    """
    lam1 = geom.d_ap2 ** 2
    lam2 = (geom.d_ap1 - geom.d_ap2) ** 2
    lam3 = -2.0 * geom.d_z
    lam4 = lam1 + lam2 + geom.d_z ** 2
    lam5 = lam2 * lam3
    lam6 = lam1 * lam2 + lam2 * geom.d_z ** 2
    pa = printed_a
    pb, pc, pd = pa * lam3, 2.0 * lam4, lam5
    eps1 = -pb ** 2 / (27 * pa ** 3) + pb * pc / (6 * pa ** 2) - pd / (2 * pa)
    eps2 = pc / (3 * pa) - pb ** 2 / (9 * pa ** 2)
    eps3 = pb / (3 * pa)
    return CubicCoefficients(lam1, lam2, lam3, lam4, lam5, lam6,
                             4.0, 3.0 * lam3, 2.0 * lam4, lam5, eps1, eps2, eps3)


def printed_cardano_root(coeffs: CubicCoefficients) -> float:
    """Two-cube-root closed form evaluated literally; NaN if it needs complex arithmetic."""
    e1, e2 = coeffs.eps1, coeffs.eps2
    disc = e1 * e1 + e2 ** 3
    if disc < 0:
        return math.nan
    s = math.sqrt(disc)
    return float(np.cbrt(e1 + s) + np.cbrt(e1 - s) - coeffs.eps3)


def pathloss_curvature(coeffs: CubicCoefficients, d_a: float) -> float:
    """Second derivative of ``D**2``: ``12 x^2 + 6 L3 x + 2 L4``."""
    return 12 * d_a * d_a + 6 * coeffs.lambda3 * d_a + 2 * coeffs.lambda4


def _d2(geom, x):
    return float(squared_pathloss_distance(geom.d_ap1, geom.d_ap2, geom.d_z, x))


def local_min_certificate(geom: ScenarioGeometry, d_a: float, step: float = 1.0) -> bool:
    """Discrete curvature check ``D^2(d_a +- step) >= D^2(d_a)``."""
    here = _d2(geom, d_a)
    return _d2(geom, d_a - step) >= here and _d2(geom, d_a + step) >= here


def optimal_da_linear(geom: ScenarioGeometry) -> PositioningResult:
    """Offset minimising ``D = d1 d2`` (and so maximising the linear-model rate).

    Roots of the stationarity cubic are taken from the literal closed form
    and from the depressed-cubic solver; candidates in ``[0, d_z]`` that pass
    the residual test compete on ``D**2``. ``branch`` records which
    evaluation produced the returned root.
    """
    geom.with_offset(0.0).validate()
    co = cubic_coefficients(geom)
    a, b, c, d = co.coefficients

    candidates = []
    printed = printed_cardano_root(co)
    if math.isfinite(printed):
        candidates.append((printed, "printed"))
    candidates.extend((r, "direct") for r in real_roots(a, b, c, d))

    admissible = []
    for x, branch in candidates:
        if not 0.0 <= x <= geom.d_z:
            # tiny excursions from rounding at the endpoints
            if -1e-9 * max(geom.d_z, 1.0) <= x < 0:
                x = 0.0
            elif geom.d_z < x <= geom.d_z * (1 + 1e-12):
                x = geom.d_z
            else:
                continue
        if abs(cubic_value(a, b, c, d, x)) <= 1e-6 * co.term_scale(x):
            admissible.append((_d2(geom, x), x, branch))

    details = {"printed_root": printed,
               "curvature": None, "candidates": [(x, br) for x, br in candidates]}
    if not admissible:
        warnings.warn(
            f"no stationary point of D^2 in [0, {geom.d_z}]; comparing endpoints",
            DegenerateGeometryWarning, stacklevel=2)
        ends = [(_d2(geom, x), x, "endpoint") for x in (0.0, geom.d_z)]
        d2_best, x_best, branch = min(ends)
        return PositioningResult(x_best, math.sqrt(d2_best), "endpoint",
                                 local_min_certificate(geom, x_best), branch, details)

    # smallest D^2, ties to the smaller offset, then prefer the printed branch
    d2_best, x_best, branch = min(admissible, key=lambda t: (t[0], t[1], t[2] != "printed"))
    details["curvature"] = pathloss_curvature(co, x_best)
    return PositioningResult(x_best, math.sqrt(d2_best), "cardano",
                             local_min_certificate(geom, x_best), branch, details)


def _grid_points(d_z: float, step: float) -> np.ndarray:
    if not step > 0:
        raise InvalidArgumentError(f"grid step must be > 0, got {step}")
    n = int(math.floor(d_z / step + 1e-9))
    pts = np.arange(n + 1, dtype=float) * step
    if d_z - pts[-1] > 1e-9 * max(d_z, 1.0):
        pts = np.append(pts, d_z)
    else:
        pts[-1] = min(pts[-1], d_z)
    return pts


def grid_min_pathloss(geom: ScenarioGeometry, step: float, model: str = LINEAR,
                      scenario: Scenario | None = None) -> PositioningResult:
    """Exhaustive scan of ``d_a`` in ``{0, step, 2 step, ..., d_z}``.

    For ``model="linear"`` the objective is ``D`` (minimised); for
    ``model="nonlinear"`` it is the non-linear rate of ``scenario``
    (maximised). Ties go to the smaller offset.
    """
    geom.with_offset(0.0).validate()
    pts = _grid_points(geom.d_z, step)
    if model == LINEAR:
        vals = squared_pathloss_distance(geom.d_ap1, geom.d_ap2, geom.d_z, pts)
        i = int(np.argmin(vals))
        return PositioningResult(float(pts[i]), float(np.sqrt(vals[i])), "grid-oracle",
                                 local_min_certificate(geom, float(pts[i])),
                                 details={"n_points": pts.size})
    if model == NONLINEAR:
        if scenario is None:
            raise InvalidArgumentError("non-linear grid scan needs a scenario")
        sc = scenario.replace(geometry=geom)
        vals = sc.rate(NONLINEAR, pts)
        i = int(np.argmax(vals))
        return PositioningResult(float(pts[i]), float(vals[i]), "grid-oracle", False,
                                 details={"n_points": pts.size})
    raise InvalidArgumentError(f"unknown model {model!r}")


def optimal_da_nonlinear(scenario: Scenario, interior_points: int = 101) -> PositioningResult:
    """Better of the two endpoint candidates ``{0, d_z}`` on non-linear rate.

    Ties go to ``d_a = 0``. A coarse interior grid is also scanned; if any
    interior point beats both endpoints by more than 0.1 % an
    :class:`InteriorOptimumWarning` is issued and the finding is kept in
    ``details``.
    """
    geom = scenario.geometry
    geom.with_offset(0.0).validate()
    ends = np.array([0.0, geom.d_z])
    r_ends = scenario.rate(NONLINEAR, ends)
    k = 0 if r_ends[0] >= r_ends[1] else 1
    best = float(r_ends[k])

    grid = np.linspace(0.0, geom.d_z, interior_points)
    r_grid = scenario.rate(NONLINEAR, grid)
    j = int(np.argmax(r_grid))
    excess = (r_grid[j] - best) / best if best > 0 else 0.0
    details = {"endpoint_rates": (float(r_ends[0]), float(r_ends[1])),
               "grid_best_d_a": float(grid[j]), "grid_best_rate": float(r_grid[j]),
               "interior_excess": float(excess)}
    if excess > INTERIOR_MARGIN:
        warnings.warn(
            f"interior offset {grid[j]:.1f} m beats the endpoint rule by {100 * excess:.3f}%",
            InteriorOptimumWarning, stacklevel=2)
    return PositioningResult(float(ends[k]), best, "endpoint", False,
                             branch="d1" if k == 0 else "d2", details=details)
