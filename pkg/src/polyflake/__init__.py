"""Sierpinski n-gons and n-flakes as iterated function systems."""

from .geometry import (
    CenterFamily,
    CenterMapSpec,
    GeometryError,
    Rotation,
    StarPolygonSpec,
    canonical_m,
    center_ratio_L,
    center_ratio_M,
    contraction_ratio,
    gamma,
    vertices,
)
from .ifs import PRESETS, FlakeSpec, IfsSystem, Similarity, build_flake, build_ngon, preset, to_matrix
from .dimension import DimensionResult, box_count_estimate, flake_dimension, moran_solve, ngon_dimension
from .chaos import PointCloud, generate, orbit_parallel
from .exact import PolygonSet, initial_polygon, iterate, osculation_check
from .render import RenderConfig, rasterize, render_polygons

__version__ = "0.1.0"
