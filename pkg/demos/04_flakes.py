"""
n-flakes: adding a map toward the center
========================================

A center map fills the hole in the middle. Even n use the L0 ratio with no
rotation; odd n need the rotation gamma so the middle copy touches its
neighbours.
"""

import math
import os

from polyflake import CenterMapSpec, RenderConfig, build_flake, generate, rasterize
from polyflake.dimension import asymptote_check, flake_dimension
from polyflake.exact import iterate, osculation_check
from polyflake.ifs import FlakeSpec
from polyflake.render import render_polygons, save_png

out = os.path.join(os.path.dirname(os.path.abspath(__file__)), "output")
os.makedirs(out, exist_ok=True)

hexaflake = FlakeSpec(6, center=CenterMapSpec("L", 0))
print(hexaflake.label(), "center ratio", hexaflake.center_ratio(), "dim", flake_dimension(hexaflake).value)

# seven maps with rotation gamma
seven = FlakeSpec(7, center=CenterMapSpec("L", 1, "gamma"))
print(seven.label(), "gamma =", seven.center_angle(), "dim", round(flake_dimension(seven).value, 4))
rep = osculation_check(seven)
print("  center touches", rep.center_touching, "copies; intersecting:", rep.intersecting)
save_png(render_polygons(iterate(seven, 4)), os.path.join(out, "flake_7_gamma_depth4.png"))

# without the rotation the middle copy of the pentaflake floats free
penta = FlakeSpec(5, center=CenterMapSpec("L", 1))
print(penta.label(), "center gap", round(osculation_check(penta).center_gap, 4))

# a hexagon whose seven pieces tile it exactly: dimension 2
plane = FlakeSpec(6, center=CenterMapSpec("L", 2, "half"))
print(plane.label(), "dim", flake_dimension(plane).value, "area sum", sum(s.scale ** 2 for s in build_flake(plane).maps))
save_png(rasterize(generate(build_flake(plane), 200_000, seed=4), RenderConfig(width=800, height=800)),
         os.path.join(out, "hexagon_plane_filling.png"))

# more vertices push the dimension toward 2
for n, d in asymptote_check("flake", [6, 10, 20, 50, 100, 1000]):
    print(f"n = {n:4d}: {d:.4f}")

# the center map family M pairs with a half-step rotation of pi/n
m7 = FlakeSpec(7, center=CenterMapSpec("M", 1, "half"))
print(m7.label(), "rotation", m7.center_angle() / math.pi, "pi, dim", round(flake_dimension(m7).value, 4))
