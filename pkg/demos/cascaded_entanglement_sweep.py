"""Steady-state EPR entanglement of the two cascaded atoms vs drive.

Evaluates the degree of entanglement at the vibrational frequency along an
ascending drive sweep (Omega = 1000 in cavity-linewidth units, the value
that best reproduces the canonical curve shape): the degree plunges below
one as the sweep reaches the bistable knee, the jump lands on a dynamically
unstable stretch of the bright branch (flagged, no value), and once the
branch restabilizes the entanglement is gone and keeps fading with drive.
Writes the sweep CSV plus an SVG with the gap marked.
"""

import os

import numpy as np

from cavmotion import PhysParams, amplitude_sweep, bistable_window
from cavmotion.cli import fmt
from cavmotion.svgplot import render_plot

params = PhysParams(chi=1.0, Omega=1000.0, Gamma=1e-3, gamma=1.0, Delta1=1e4, Delta2=1e4)

knee = np.sqrt(bistable_window(params, params.Delta1)[1] / params.gamma)
grid = np.unique(np.concatenate([
    np.geomspace(knee / 100, knee * 100, 49),
    np.linspace(0.97 * knee, 1.005 * knee, 41),
]))
rows = amplitude_sweep(params, grid, params.Omega)

finite = [r for r in rows if np.isfinite(r.e_degree)]
below = [r for r in finite if r.e_degree < 1.0]
jump = next(r for r in rows if r.jumped)
print(f"bistable knee at drive {knee:.4g}; jump recorded at {jump.drive:.4g}")
print(f"EPR regime (E < 1): {len(below)} points, "
      f"drives [{below[0].drive:.4g}, {below[-1].drive:.4g}], "
      f"min E = {min(r.e_degree for r in below):.4g}")
print(f"high-drive end: E = {finite[-1].e_degree:.4g} at drive {finite[-1].drive:.4g}")

lines = ["drive,e_degree,intensity1,stable"]
for r in rows:
    lines.append(",".join([fmt(r.drive),
                           fmt(r.e_degree) if np.isfinite(r.e_degree) else "nan",
                           fmt(r.intensity1), str(r.stable).lower()]))
csv_text = "\n".join(lines) + "\n"

os.makedirs("demo_output", exist_ok=True)
with open("demo_output/cascaded_entanglement.csv", "w") as fh:
    fh.write(csv_text)
with open("demo_output/cascaded_entanglement.svg", "w") as fh:
    fh.write(render_plot(csv_text, "drive", ["e_degree"],
                         title="degree of entanglement vs drive"))
print("wrote demo_output/cascaded_entanglement.{csv,svg}")
