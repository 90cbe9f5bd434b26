"""Two-tier high-altitude platform energy-harvesting link: models and optimisers."""
from .budget import PowerBudget, augmented_power, borrow_energy, mission_harvest, power_budget
from .config import ExperimentConfig, load_config
from .errors import (ConfigError, DegenerateGeometryWarning, GeometryError,
                     InteriorOptimumWarning, InvalidArgumentError)
from .geometry import HopDistances, ScenarioGeometry, equivalent_pathloss_distance, hop_distances
from .joint import (GridSpec, IdfaConfig, OptimizationResult, QLearnConfig, exhaustive_joint,
                    idfa, qlearn_train, random_selection)
from .link import (EhOutcome, NonlinearEhCircuit, RadioParams, Scenario, TimeSwitch,
                   channel_amplitude, data_rate, data_rate_no_eh, eh_transmit_power,
                   harvest_linear, harvest_nonlinear, logistic_delta, received_power)
from .positioning import (PositioningResult, grid_min_pathloss, optimal_da_linear,
                          optimal_da_nonlinear)
from .units import db_to_linear, dbm_to_watts, noise_power, wavelength

__version__ = "0.1.0"


def reference_scenario(**changes) -> Scenario:
    """Reference parameter set with the regular platform at the linear-model optimum."""
    return ExperimentConfig().build_scenario(**changes)
