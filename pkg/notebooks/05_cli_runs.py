"""
Driving the experiments from a config file
==========================================

Every result series is one ``hapseh`` invocation. This script writes a
small config, runs a few subcommands in-process and reads the results.
"""

# %%
import json
import tempfile
from pathlib import Path

from hapseh.cli import main
from hapseh.experiments import read_csv

work = Path(tempfile.mkdtemp())
cfg = work / "offset_sweep.toml"
cfg.write_text("""
[sweep]
variable = "d_ap2_km"
start = 14
stop = 19
step = 1
models = ["linear"]
""")

# %%
main(["sweep", "-c", str(cfg), "-o", str(work / "offset_sweep"), "--baseline-da-km", "10"])
for row in read_csv(work / "offset_sweep" / "sweep.csv"):
    gain = row["rate_opt_bps"] / row["rate_bps"] - 1
    print(f"d_ap2 {row['sweep_value']:4.0f} km  optimal {row['d_a_opt_m']:7.1f} m  gain {100 * gain:5.1f}%")

# %%
main(["position", "-o", str(work / "pos")])
print(json.dumps(json.loads((work / "pos" / "position.json").read_text())["linear"], indent=1))
print(sorted(p.name for p in work.rglob("*") if p.is_file()))
