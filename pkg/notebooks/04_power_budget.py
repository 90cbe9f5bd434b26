"""
Borrowing from the battery and mission totals
=============================================

When the harvested energy cannot sustain a required transmit power the
regular platform tops it up from its own store. Above a threshold P_t the
harvest alone is enough and the surplus can be banked.
"""

# %%
import numpy as np

from hapseh import augmented_power, borrow_energy, mission_harvest, reference_scenario
from hapseh.units import dbm_to_watts

sc = reference_scenario()
ts = sc.time_switch

# %%
for p_req_dbm in (-5, 20):
    p_req = dbm_to_watts(p_req_dbm)
    print(f"P_req = {p_req_dbm} dBm")
    for p in range(0, 51, 10):
        s = sc.replace(radio=sc.radio.with_(p_t=dbm_to_watts(p)))
        for model in ("linear", "nonlinear"):
            e = float(s.budget(model)["harvested_energy"])
            e_a = borrow_energy(p_req, ts, e)
            p_a = augmented_power(e_a, e, ts)
            print(f"  P_t {p:2d} dBm {model:9s} borrowed {float(e_a):.3e} J  P_a {float(p_a):.3e} W")

# %%
# Energy over a flight, counting every block at the per-slot harvest rate.
for h in (1, 6, 12, 24):
    tot = [mission_harvest(float(sc.budget(m)["harvested_energy"]), ts, h * 3600.0)
           for m in ("linear", "nonlinear")]
    print(f"{h:3d} h  linear {tot[0]:9.2f} J  nonlinear {tot[1]:9.2f} J")
