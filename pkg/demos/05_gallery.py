"""
Figure gallery
==============

Regenerates the standard pictures with fixed seeds. Point clouds use 100000
chaos-game points; polygon figures use exact iteration.
"""

import os
import sys
from fractions import Fraction

from polyflake import CenterMapSpec, RenderConfig, build_flake, generate, iterate, preset, rasterize, render_polygons
from polyflake.ifs import FlakeSpec
from polyflake.render import save_png

out = sys.argv[1] if len(sys.argv) > 1 else os.path.join(os.path.dirname(os.path.abspath(__file__)), "output", "gallery")
os.makedirs(out, exist_ok=True)
cfg = RenderConfig(width=800, height=800)


def L(l, rot="none"):
    return CenterMapSpec("L", l, rot)


def M(l, rot="half"):
    return CenterMapSpec("M", l, rot)


# (file name, spec, "cloud" or depth)
GALLERY = [
    ("ngon_9_2_self_intersecting", FlakeSpec(9, 2), 2),
    ("ngon_9_3", FlakeSpec(9, 3), 2),
    ("ngon_3_1", FlakeSpec(3, 1), "cloud"),
    ("ngon_4_2", FlakeSpec(4, 2), "cloud"),
    ("ngon_5_2", FlakeSpec(5, 2), "cloud"),
    ("ngon_6_2", FlakeSpec(6, 2), "cloud"),
    ("ngon_7_2", FlakeSpec(7, 2), "cloud"),
    ("ngon_8_3", FlakeSpec(8, 3), "cloud"),
    ("ngon_10_3", FlakeSpec(10, 3), "cloud"),
    ("ngon_11_3", FlakeSpec(11, 3), "cloud"),
    ("ngon_12_4", FlakeSpec(12, 4), "cloud"),
    ("ngon_13_4", FlakeSpec(13, 4), "cloud"),
    ("ngon_14_4", FlakeSpec(14, 4), "cloud"),
    ("ngon_15_4", FlakeSpec(15, 4), "cloud"),
    ("ngon_16_5", FlakeSpec(16, 5), "cloud"),
    ("ngon_24_7", FlakeSpec(24, 7), "cloud"),
    ("pentagram_depth2", FlakeSpec(5, 2), 2),
    ("pentagram_depth4", FlakeSpec(5, 2), 4),
    ("hexagram_depth4", FlakeSpec(6, 2), 4),
    ("pentaflake", preset("pentaflake"), "cloud"),
    ("pentaflake_depth3", preset("pentaflake"), 3),
    ("pentaflake_rotated", FlakeSpec(5, center=L(1, "half")), "cloud"),
    ("hexaflake", preset("hexaflake"), "cloud"),
    ("hexaflake_depth3", preset("hexaflake"), 3),
    ("hexagon_plane_filling", FlakeSpec(6, center=L(2, "half")), "cloud"),
    ("flake_8_2_L2_half", FlakeSpec(8, center=L(2, "half")), "cloud"),
    ("flake_8_2_L0", FlakeSpec(8, center=L(0)), "cloud"),
    ("flake_7_2_M1", FlakeSpec(7, center=M(1)), "cloud"),
    ("flake_7_2_L1_gamma", FlakeSpec(7, center=L(1, "gamma")), "cloud"),
    ("flake_7_2_L1_gamma_depth4", FlakeSpec(7, center=L(1, "gamma")), 4),
    ("spokes_7_M1", FlakeSpec(7, Fraction(7, 2), 2, M(1)), 3),
    ("spokes_9_M1", FlakeSpec(9, Fraction(9, 2), 3, M(1)), 3),
    ("diameters_6_L0", FlakeSpec(6, 3, 2, L(0)), 3),
    ("cantor", preset("cantor"), "cloud"),
    ("vicsek", preset("vicsek"), "cloud"),
    ("greek_cross", preset("greek-cross"), "cloud"),
]

for name, spec, mode in GALLERY:
    if mode == "cloud":
        img = rasterize(generate(build_flake(spec), 100_000, seed=1), cfg)
    else:
        img = render_polygons(iterate(spec, mode), cfg)
    save_png(img, os.path.join(out, name + ".png"))
    print(f"{name:28s} {spec.label()}")
