"""Where do states end up under repeated distillation?

Every point of the Bloch ball flows to an attractor: the magic state, one
of the other corner states, or the maximally mixed state.  On a plane of
constant fidelity the basins form a three-lobed pattern, and off-axis
states can converge even slightly below the on-axis threshold.
"""
import math
from collections import Counter

from magicforge import (basin_grid, off_axis_threshold, on_axis_threshold)

print("Basin census on the F = 0.886 plane (well above threshold):")
pts = basin_grid(0.886, n_r=40, n_theta=60)
census = Counter(p.classification.label for p in pts if p.in_ball)
for label, count in census.most_common():
    print(f"  {label:18s} {count:5d} cells")

print("\nSame census just below the on-axis threshold, F = 0.8270:")
pts = basin_grid(0.8270, n_r=40, n_theta=60)
census = Counter(p.classification.label for p in pts if p.in_ball)
for label, count in census.most_common():
    print(f"  {label:18s} {count:5d} cells")
magic_cells = [p for p in pts if p.classification.label == "MagicT0"]
lobe = [p for p in magic_cells if p.r < 0.7]
print(f"  magic lobes live at r in [{min(p.r for p in lobe):.2f}, "
      f"{max(p.r for p in lobe):.2f}] around theta = 0, 2pi/3, 4pi/3")

print("\nThresholds:")
thr_axis = on_axis_threshold()
print(f"  on the magic axis:              {thr_axis:.6f}")
thr0 = off_axis_threshold(0.0)
print(f"  at the angle of maximal gain:   {thr0:.6f}  (off-axis helps)")
thr_anti = off_axis_threshold(math.pi / 3)
print(f"  at the angle of minimal gain:   {thr_anti:.6f}  (no advantage)")
