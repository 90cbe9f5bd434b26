import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from hapseh.errors import GeometryError
from hapseh.geometry import (ScenarioGeometry, equivalent_pathloss_distance, hop_distances,
                             hop_lengths, squared_pathloss_distance)

D_AT_8KM = 193494185.959165192  # 30-digit reference


def test_reference_hops():
    g = ScenarioGeometry(d_a=8e3)
    d1, d2 = hop_distances(g)
    assert d1 == pytest.approx(math.hypot(4e3, 8e3), rel=1e-15)
    assert d2 == pytest.approx(math.hypot(18e3, 12e3), rel=1e-15)
    assert equivalent_pathloss_distance(g) == pytest.approx(D_AT_8KM, rel=1e-14)


def test_from_km():
    assert ScenarioGeometry.from_km(22, 18, 20, 8) == ScenarioGeometry(22e3, 18e3, 20e3, 8e3)


@pytest.mark.parametrize("kwargs,tag", [
    (dict(d_ap1=18e3, d_ap2=22e3), "27d"),
    (dict(d_ap2=0.0), "27d"),
    (dict(d_ap1=19e3, d_z=20e3, d_ap2=10e3), "27e"),
    (dict(d_a=-1.0), "27c"),
    (dict(d_a=20001.0), "27c"),
])
def test_constraint_tags(kwargs, tag):
    with pytest.raises(GeometryError) as exc:
        ScenarioGeometry(**kwargs).validate()
    assert exc.value.constraint == tag
    assert f"[{tag}]" in str(exc.value)


def test_strict_offset():
    ScenarioGeometry(d_a=0.0).validate()
    with pytest.raises(GeometryError):
        ScenarioGeometry(d_a=0.5).validate(strict_offset=True)


def test_nonfinite_rejected():
    with pytest.raises(GeometryError):
        ScenarioGeometry(d_a=math.nan).validate()


def test_offset_for_first_hop():
    g = ScenarioGeometry()
    assert g.offset_for_first_hop(5e3) == pytest.approx(3e3)
    assert hop_distances(g.with_offset(g.offset_for_first_hop(5e3))).d1 == pytest.approx(5e3)


geoms = st.tuples(st.floats(15e3, 25e3), st.floats(0.05, 0.95), st.floats(0.2, 0.99),
                  st.floats(0, 1))


@given(geoms)
def test_squared_distance_matches_product(p):
    ap1, frac2, fracz, fa = p
    ap2, dz = ap1 * frac2, ap1 * fracz
    g = ScenarioGeometry(ap1, ap2, dz, fa * dz)
    d1, d2 = hop_distances(g)
    assert squared_pathloss_distance(ap1, ap2, dz, g.d_a) == pytest.approx((d1 * d2) ** 2, rel=1e-12)
    assert d1 >= ap1 - ap2 and d2 >= ap2


def test_hop_lengths_vectorised():
    x = np.linspace(0, 20e3, 7)
    d1, d2 = hop_lengths(22e3, 18e3, 20e3, x)
    assert d1.shape == d2.shape == (7,)
    np.testing.assert_allclose(d1, np.hypot(4e3, x))
