import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hapseh import ScenarioGeometry, reference_scenario
from hapseh.errors import (DegenerateGeometryWarning, GeometryError, InteriorOptimumWarning,
                           InvalidArgumentError)
from hapseh.geometry import squared_pathloss_distance
from hapseh.positioning import (cubic_coefficients, grid_min_pathloss, local_min_certificate,
                                optimal_da_linear, optimal_da_nonlinear, pathloss_curvature,
                                printed_cardano_root)

D_A_STAR_REF = 448.498110863008925  # stationary point at the reference geometry
NL_RATE_AT_0 = 4748661201.52294731
NL_RATE_AT_DZ = 2243829507.41355363


def test_lambda_definitions(geom):
    co = cubic_coefficients(geom)
    assert co.lambda1 == 18e3 ** 2
    assert co.lambda2 == 4e3 ** 2
    assert co.lambda3 == -40e3
    assert co.lambda4 == co.lambda1 + co.lambda2 + 20e3 ** 2
    assert co.lambda5 == co.lambda2 * co.lambda3
    assert co.lambda6 == co.lambda1 * co.lambda2 + co.lambda2 * 20e3 ** 2
    assert co.coefficients == (4.0, 3 * co.lambda3, 2 * co.lambda4, co.lambda5)


def test_expanded_form(geom, rng):
    co = cubic_coefficients(geom)
    for x in rng.uniform(0, 20e3, 20):
        expanded = (co.lambda2 + x * x) * (co.lambda1 + (20e3 - x) ** 2)
        assert squared_pathloss_distance(22e3, 18e3, 20e3, x) == pytest.approx(expanded, rel=1e-9)


def test_finite_difference_derivative(geom, rng):
    co = cubic_coefficients(geom)
    a, b, c, d = co.coefficients
    for x in rng.uniform(500, 19.5e3, 20):
        h = 1e-2
        fd = (squared_pathloss_distance(22e3, 18e3, 20e3, x + h)
              - squared_pathloss_distance(22e3, 18e3, 20e3, x - h)) / (2 * h)
        exact = a * x ** 3 + b * x ** 2 + c * x + d
        assert fd == pytest.approx(exact, rel=1e-6)


def test_reference_optimum(geom):
    res = optimal_da_linear(geom)
    assert res.d_a_star == pytest.approx(D_A_STAR_REF, abs=1e-6)
    assert res.method == "cardano"
    assert res.second_derivative_check
    assert res.details["curvature"] > 0
    assert res.objective == pytest.approx(math.sqrt(
        squared_pathloss_distance(22e3, 18e3, 20e3, res.d_a_star)))
    co = cubic_coefficients(geom)
    a, b, c, d = co.coefficients
    x = res.d_a_star
    assert abs(a * x ** 3 + b * x ** 2 + c * x + d) <= 1e-9 * co.residual_scale(geom.d_z)


def test_printed_closed_form_is_off_domain(geom):
    # the literal intermediates land outside [0, d_z] here, so the direct root is used
    root = printed_cardano_root(cubic_coefficients(geom))
    assert not 0 <= root <= geom.d_z
    assert optimal_da_linear(geom).branch == "direct"


def test_grid_oracle_reference(geom):
    res = grid_min_pathloss(geom, 1.0)
    assert res.d_a_star == 448.0
    assert res.method == "grid-oracle"


def test_equal_altitude_gap_small_gives_zero_offset():
    # a tiny vertical gap drives the stationary point to the endpoint
    g = ScenarioGeometry(18.001e3, 18e3, 17e3)
    res = optimal_da_linear(g)
    assert res.d_a_star == pytest.approx(grid_min_pathloss(g, 1.0).d_a_star, abs=1.0)


geoms = st.tuples(st.floats(15e3, 25e3), st.floats(15e3, 25e3), st.floats(5e3, 30e3))


@settings(max_examples=200, deadline=None)
@given(geoms)
def test_oracle_agreement_and_certificate(p):
    ap1, ap2, dz = max(p[:2]), min(p[:2]), p[2]
    if ap1 - ap2 < 10 or ap1 <= dz:
        return
    g = ScenarioGeometry(ap1, ap2, dz)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", DegenerateGeometryWarning)
        res = optimal_da_linear(g)
    assert 0 <= res.d_a_star <= dz
    assert abs(res.d_a_star - grid_min_pathloss(g, 1.0).d_a_star) <= 1.0
    assert local_min_certificate(g, res.d_a_star)


def test_curvature_positive_at_optimum(geom):
    co = cubic_coefficients(geom)
    assert pathloss_curvature(co, optimal_da_linear(geom).d_a_star) > 0


def test_invalid_geometry_rejected():
    with pytest.raises(GeometryError):
        optimal_da_linear(ScenarioGeometry(18e3, 22e3, 10e3))
    with pytest.raises(InvalidArgumentError):
        grid_min_pathloss(ScenarioGeometry(), 0.0)


def test_nonlinear_endpoint_rule(ref):
    with pytest.warns(InteriorOptimumWarning):
        res = optimal_da_nonlinear(ref)
    r0, rz = res.details["endpoint_rates"]
    assert r0 == pytest.approx(NL_RATE_AT_0, rel=1e-12)
    assert rz == pytest.approx(NL_RATE_AT_DZ, rel=1e-12)
    assert res.d_a_star == 0.0 and res.branch == "d1"
    assert res.objective == max(r0, rz)


def test_nonlinear_rule_picks_better_endpoint():
    sc = reference_scenario()
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", InteriorOptimumWarning)
        res = optimal_da_nonlinear(sc)
    r0, rz = res.details["endpoint_rates"]
    assert res.d_a_star == (0.0 if r0 >= rz else sc.geometry.d_z)


def test_nonlinear_grid_scan(ref):
    res = grid_min_pathloss(ref.geometry, 10.0, "nonlinear", ref)
    assert res.objective >= ref.rate("nonlinear", 0.0)
    with pytest.raises(InvalidArgumentError):
        grid_min_pathloss(ref.geometry, 10.0, "nonlinear")
