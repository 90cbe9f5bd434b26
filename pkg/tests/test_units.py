import numpy as np
import pytest
from hypothesis import given, strategies as st

from hapseh.errors import InvalidArgumentError
from hapseh.units import (BOLTZMANN, SPEED_OF_LIGHT, db_to_linear, dbm_to_watts, linear_to_db,
                          noise_power, wavelength, watts_to_dbm)

# frozen with 30-digit arithmetic
G_T_43_2 = 20892.961308540394831
P_REQ_M5 = 3.16227766016837933e-4
LAMBDA_245 = 0.122364268571428571
NOISE_REF = 1.66071276700862365e-11


def test_exact_constants():
    assert SPEED_OF_LIGHT == 299792458.0
    assert BOLTZMANN == 1.380649e-23


def test_frozen_conversions():
    assert db_to_linear(43.2) == pytest.approx(G_T_43_2, rel=1e-14)
    assert dbm_to_watts(-5.0) == pytest.approx(P_REQ_M5, rel=1e-14)
    assert dbm_to_watts(30.0) == pytest.approx(1.0, rel=1e-15)
    assert wavelength(2.45e9) == pytest.approx(LAMBDA_245, rel=1e-15)
    assert noise_power(800e6, 300.0, db_to_linear(7.0)) == pytest.approx(NOISE_REF, rel=1e-13)


@given(st.floats(-200, 200, allow_nan=False))
def test_db_round_trip(x):
    assert linear_to_db(db_to_linear(x)) == pytest.approx(x, abs=1e-9)
    assert watts_to_dbm(dbm_to_watts(x)) == pytest.approx(x, abs=1e-9)


def test_array_inputs_keep_shape():
    out = dbm_to_watts(np.array([[0.0, 10.0], [20.0, 30.0]]))
    assert out.shape == (2, 2)
    np.testing.assert_allclose(out, [[1e-3, 1e-2], [1e-1, 1.0]], rtol=1e-15)


@pytest.mark.parametrize("fn,arg", [
    (db_to_linear, np.nan), (dbm_to_watts, np.inf), (linear_to_db, 0.0),
    (linear_to_db, -1.0), (watts_to_dbm, 0.0), (wavelength, 0.0), (wavelength, -2.4e9),
])
def test_domain_errors(fn, arg):
    with pytest.raises(InvalidArgumentError):
        fn(arg)


def test_noise_power_rejects_nonpositive():
    with pytest.raises(InvalidArgumentError):
        noise_power(0.0, 300.0, 1.0)
    with pytest.raises(InvalidArgumentError):
        noise_power(1e6, 300.0, 0.0)
