import numpy as np
import pytest

from hapseh import ScenarioGeometry, reference_scenario


@pytest.fixture
def ref():
    """Reference scenario with the regular platform at the linear optimum."""
    return reference_scenario()


@pytest.fixture
def geom():
    return ScenarioGeometry()


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
