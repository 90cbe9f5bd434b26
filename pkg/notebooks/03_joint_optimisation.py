"""
Joint offset and harvesting factor
==================================

Three searches over the same (d_a, tau) grid: coordinate ascent, tabular
Q-learning and the exhaustive reference. The best of the nine hand-picked
pairs is the unoptimised baseline.
"""

# %%
import time

from hapseh import (GridSpec, QLearnConfig, exhaustive_joint, idfa, qlearn_train,
                    random_selection, reference_scenario)

sc = reference_scenario()
grid = GridSpec.default(sc.geometry.d_z)
print("grid shape:", grid.shape)

# %%
for model in ("linear", "nonlinear"):
    t0 = time.perf_counter()
    ex = exhaustive_joint(sc, model, grid)
    co = idfa(sc, model, grid)
    ql, table = qlearn_train(sc, model, grid, QLearnConfig(seed=0))
    t1 = exhaustive_joint(sc, model, GridSpec.reference_pairs())
    rnd = random_selection(sc, model)
    print(f"[{model}] {time.perf_counter() - t0:.2f} s")
    for name, r in (("exhaustive", ex), ("idfa", co), ("qlearn", ql), ("pairs", t1),
                    ("random", rnd)):
        print(f"  {name:10s} d_a = {r.d_a_star:8.1f} m  tau = {r.tau_star:.3f}  "
              f"rate = {r.rate / 1e9:.4f} Gbit/s")

# %%
# Q-learning trace: mean reward per episode climbs as exploration decays.
tr = ql.trace
n = len(tr) // 10
print("first 10% mean:", tr[:n].mean() / 1e9, " last 10% mean:", tr[-n:].mean() / 1e9)
print("cells visited:", ql.metadata["cells_visited"], "of", grid.size)
