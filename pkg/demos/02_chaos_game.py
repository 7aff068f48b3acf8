"""
The chaos game
==============

Random iteration of the maps draws the attractor point by point. The
picture is written as a PNG next to this script.
"""

import os

import numpy as np

from polyflake import RenderConfig, build_flake, build_ngon, generate, preset, rasterize
from polyflake.dimension import box_count_estimate, flake_dimension
from polyflake.render import save_png

out = os.path.join(os.path.dirname(os.path.abspath(__file__)), "output")
os.makedirs(out, exist_ok=True)

# nine maps toward the vertices of a regular 9-gon
system = build_ngon(9, 3)
print(system.label, "probabilities:", np.round(system.probabilities, 4))

# 20 throwaway steps, then 100000 points; the seed fixes the picture
cloud = generate(system, 100_000, seed=1)
print(len(cloud), "points, farthest from origin:", np.hypot(*cloud.points.T).max())
save_png(rasterize(cloud, RenderConfig(width=800, height=800)), os.path.join(out, "ngon_9_3.png"))

# the same seed gives the same bytes
assert generate(system, 1000, seed=1).to_bytes() == generate(system, 1000, seed=1).to_bytes()

# box counting on a large cloud lands close to the Moran value
spec = preset("sierpinski-pentagon")
big = generate(build_flake(spec), 1_000_000, seed=2)
print("box count:", round(box_count_estimate(big).value, 3), " Moran:", round(flake_dimension(spec).value, 3))

# the Cantor set: two maps of ratio 1/3 on a vertical segment
cantor = generate(build_flake(preset("cantor")), 20_000, seed=3)
y = cantor.points[:, 1]
print("points in the removed middle third:", int(np.sum(np.abs(y) < 1 / 3 - 1e-9)))
