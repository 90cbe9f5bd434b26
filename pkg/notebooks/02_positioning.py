"""
Where to park the regular platform
==================================

With the linear rectifier the rate only depends on the product of the
two hop lengths, so the best horizontal offset is a root of a cubic. The
non-linear rectifier is compared at the two ends of the span instead.
"""

# %%
import warnings

import numpy as np

from hapseh import ScenarioGeometry, reference_scenario
from hapseh.positioning import (cubic_coefficients, grid_min_pathloss, optimal_da_linear,
                                optimal_da_nonlinear, printed_cardano_root)

g = ScenarioGeometry()
res = optimal_da_linear(g)
print(f"closed form: d_a* = {res.d_a_star:.3f} m via {res.branch} branch")
print(f"1 m grid   : d_a* = {grid_min_pathloss(g, 1.0).d_a_star:.0f} m")

# %%
# The literal closed-form intermediates land outside [0, d_z] for this
# geometry; the depressed-cubic root is the one that survives.
print("literal closed form root:", printed_cardano_root(cubic_coefficients(g)))

# %%
# Moving the regular platform down shifts the optimum away from the mother.
for ap2 in np.arange(14e3, 20e3, 1e3):
    gg = ScenarioGeometry(d_ap2=ap2)
    print(f"d_ap2 = {ap2 / 1e3:4.0f} km  d_a* = {optimal_da_linear(gg).d_a_star:8.1f} m")

# %%
# Non-linear model: endpoint rule plus the interior scan kept for inspection.
sc = reference_scenario()
with warnings.catch_warnings(record=True) as w:
    warnings.simplefilter("always")
    nl = optimal_da_nonlinear(sc)
print("endpoint choice:", nl.d_a_star, "m, rates", nl.details["endpoint_rates"])
print("best interior point:", nl.details["grid_best_d_a"], "m, excess",
      f"{100 * nl.details['interior_excess']:.3f}%")
for warning in w:
    print("warning:", warning.message)
