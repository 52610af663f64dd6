"""
Driving experiments from the command line
=========================================

``vfe run`` reads an INI config, simulates, transforms and optionally
certifies, then writes a CSV time series and a plain-text summary.  The
same calls are made here through ``vfe.cli.main`` inside a scratch
directory; the shell equivalent is shown in each comment.
"""

import os
import shutil
import tempfile
from pathlib import Path


from vfe.cli import main
from vfe.io import read_timeseries

configs = Path(__file__).parent / "configs"
work = Path(tempfile.mkdtemp(prefix="vfe_demo_"))
os.chdir(work)
shutil.copy(configs / "circle_r1.cfg", work)
shutil.copy(configs / "sphere_certify.cfg", work)

# vfe run --config circle_r1.cfg
code = main(["run", "--config", "circle_r1.cfg"])
table = read_timeseries("circle_r1.csv")
print(f"exit {code}; {table.shape[0]} rows; kappa in [{table[:, 2].min():.12f}, {table[:, 2].max():.12f}]")

# vfe run --config sphere_certify.cfg
code = main(["run", "--config", "sphere_certify.cfg"])
print(f"exit {code}")
print(Path("sphere_certify.summary.txt").read_text())

# vfe generate --name torus_knot --out knot.csv --N 256
main(["generate", "--name", "torus_knot", "--out", "knot.csv", "--N", "256"])
print(Path("knot.csv").read_text().splitlines()[0])

# vfe verify geometry
code = main(["verify", "geometry"])
print(f"exit {code}")

# A typo in the suite name is a usage error (exit code 1).
print("exit", main(["verify", "geometri"]))
print(f"\nfiles left in {work}: {sorted(p.name for p in work.iterdir())}")
