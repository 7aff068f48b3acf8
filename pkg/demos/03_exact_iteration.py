"""
Exact iteration of the initial star
===================================

Instead of random points, apply every map to the whole initial figure a few
times. Four levels are usually enough to see the limit shape.
"""

import os

from polyflake import RenderConfig, initial_polygon, iterate, osculation_check, render_polygons
from polyflake.ifs import FlakeSpec
from polyflake.render import polygons_to_svg, save_png

out = os.path.join(os.path.dirname(os.path.abspath(__file__)), "output")
os.makedirs(out, exist_ok=True)

# the pentagram visits every second vertex
print(initial_polygon(FlakeSpec(5, 2)).round(3))

# copies multiply by the number of maps at each level
for depth in range(5):
    print(depth, len(iterate(FlakeSpec(5, 2), depth)))

save_png(render_polygons(iterate(FlakeSpec(5, 2), 4)), os.path.join(out, "pentagram_depth4.png"))
with open(os.path.join(out, "pentagram_depth2.svg"), "w") as fh:
    fh.write(polygons_to_svg(iterate(FlakeSpec(5, 2), 2), RenderConfig(format="svg")))

# {9/3} is three triangles; with the right ratio the copies just touch
good = osculation_check(9, 3)
bad = osculation_check(9, 2)
print("{9/3} intersecting:", good.intersecting, " touching pairs:", good.touching_pairs)
print("{9/2} intersecting:", bad.intersecting, " crossing edges:", bad.crossing_edges)
save_png(render_polygons(iterate(FlakeSpec(9, 2), 2)), os.path.join(out, "ngon_9_2_overlapping.png"))
save_png(render_polygons(iterate(FlakeSpec(9, 3), 2)), os.path.join(out, "ngon_9_3_touching.png"))

# for n divisible by 4 neighbours share two vertices
print("{8/2} shared vertices:", osculation_check(8, 2).max_shared_vertices)
