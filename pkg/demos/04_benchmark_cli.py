"""The benchmark CLI end to end: config file in, CSV artifacts out.

Run:  python demos/04_benchmark_cli.py
"""

import subprocess
import sys
import tempfile
from pathlib import Path

CONFIG = """\
[data]
family = "gaussian"
rho = 0.9
m = 6
n_train = 400
n_test = 20
seed = 11

[true_model]
name = "gam_three"

[predictive]
kind = "oracle_basis_lm"

[run]
k = 250
oracle_k = 5000

[[methods]]
name = "independence"

[[methods]]
name = "gaussian"

[[methods]]
name = "ctree"

[[methods]]
name = "ppr_fixed_separate"
"""

workdir = Path(tempfile.mkdtemp(prefix="shapcond_demo_"))
config_path = workdir / "experiment.toml"
config_path.write_text(CONFIG)
out_dir = workdir / "results"

print(f"running: shapcond run --config {config_path} --output {out_dir}\n")
proc = subprocess.run(
    [sys.executable, "-m", "shapcond.cli", "run",
     "--config", str(config_path), "--output", str(out_dir)],
    text=True, capture_output=True)
print(proc.stdout)
if proc.returncode != 0:
    print(proc.stderr, file=sys.stderr)
    raise SystemExit(proc.returncode)

print("summary.csv:")
print((out_dir / "summary.csv").read_text())
print(f"artifacts in {out_dir}")
