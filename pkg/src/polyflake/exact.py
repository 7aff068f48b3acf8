"""
Deterministic iteration of the initial star figure.

A figure is stored as an ``(components, points, 2)`` array: an {n/m} star
with ``g = gcd(n, m)`` is ``g`` closed cycles of ``n/g + 1`` points; the
{n, n/2} figures are 2-point segments (spokes from the center for odd n,
diameters for even n). A :class:`PolygonSet` stacks one figure per copy.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
import shapely

from .geometry import StarPolygonSpec, vertices
from .ifs import FlakeSpec, IfsSystem, build_flake

__all__ = [
    "MAX_DEPTH",
    "TOUCH_TOL",
    "PolygonSet",
    "OsculationReport",
    "initial_polygon",
    "iterate",
    "osculation_check",
    "segment_relations",
    "star_outline",
]

MAX_DEPTH = 8
TOUCH_TOL = 1e-9
# overlap of filled outlines below this area counts as touching
AREA_TOL = 1e-12


def _as_spec(spec, m=None) -> FlakeSpec:
    if isinstance(spec, FlakeSpec):
        return spec
    if isinstance(spec, StarPolygonSpec):
        return FlakeSpec(spec.n, spec.m)
    return FlakeSpec(int(spec), m)


def initial_polygon(spec) -> np.ndarray:
    """The drawn figure for ``spec.m_draw`` as an ``(components, points, 2)`` array.

    >>> initial_polygon(StarPolygonSpec(5, 2)).shape
    (1, 6, 2)
    """
    star = spec.star if isinstance(spec, FlakeSpec) else spec
    n, m = star.n, star.m
    v = vertices(n)
    if star.is_spoke:
        if n % 2:
            return np.stack([np.stack([np.zeros(2), v[k]]) for k in range(n)])
        return np.stack([np.stack([v[k], v[k + n // 2]]) for k in range(n // 2)])
    m = int(m)
    g = math.gcd(n, m)
    steps = n // g
    cycles = [[(c + i * m) % n for i in range(steps + 1)] for c in range(g)]
    return v[np.array(cycles)]


def star_outline(star: StarPolygonSpec) -> Optional[np.ndarray]:
    """Boundary of the filled {n/m} star as a simple ``(2n, 2)`` polygon.

    Outer vertices alternate with the inner crossing points at radius
    ``cos(m pi/n) / cos((m-1) pi/n)``. ``None`` for zero-area figures
    (segments, spokes, diameters).
    """
    n = star.n
    if star.is_spoke or n < 3:
        return None
    m = int(star.m)
    r_in = math.cos(m * math.pi / n) / math.cos((m - 1) * math.pi / n)
    theta = 2.0 * np.pi * np.arange(2 * n) / (2 * n)
    r = np.where(np.arange(2 * n) % 2 == 0, 1.0, r_in)
    return np.column_stack([r * np.sin(theta), r * np.cos(theta)])


@dataclass(frozen=True, eq=False)
class PolygonSet:
    """All copies of the initial figure after ``depth`` iterations.

    ``coords`` has shape ``(copies, components, points, 2)``; ``scales``
    holds each copy's accumulated contraction.
    """

    coords: np.ndarray
    scales: np.ndarray
    depth: int
    closed: bool = True
    label: str = ""

    def __len__(self):
        return self.coords.shape[0]

    @property
    def polygons(self) -> list:
        """Per copy, a list of polylines (each a list of ``(x, y)``)."""
        return [[[tuple(p) for p in comp] for comp in copy] for copy in self.coords.tolist()]

    def to_json(self) -> str:
        return json.dumps(
            {"label": self.label, "depth": self.depth, "closed": self.closed, "polygons": self.coords.tolist()},
            separators=(",", ":"),
        )

    @classmethod
    def from_json(cls, text: str) -> "PolygonSet":
        d = json.loads(text)
        coords = np.asarray(d["polygons"], dtype=float)
        if coords.size == 0:
            coords = coords.reshape(0, 0, 0, 2)
        return cls(coords, np.full(len(coords), np.nan), int(d["depth"]), bool(d.get("closed", True)), d.get("label", ""))


def iterate(spec, depth: int, system: Optional[IfsSystem] = None) -> PolygonSet:
    """Apply every map to every copy, ``depth`` times, starting from the initial figure.

    Copies are ordered map-major: copy ``i * N**(d-1) + j`` is map ``i``
    applied to copy ``j`` of the previous level.
    """
    spec = _as_spec(spec)
    if depth < 0:
        raise ValueError(f"depth must be >= 0, got {depth}")
    if depth > MAX_DEPTH:
        raise ValueError(f"depth {depth} exceeds the guard of {MAX_DEPTH}")
    system = build_flake(spec) if system is None else system
    a, t = system.coefficients()
    ratios = np.asarray(system.ratios)
    coords = initial_polygon(spec)[None]
    scales = np.ones(1)
    for _ in range(depth):
        coords = np.einsum("nij,ckpj->nckpi", a, coords) + t[:, None, None, None, :]
        coords = coords.reshape(-1, *coords.shape[2:])
        scales = (ratios[:, None] * scales[None, :]).ravel()
    return PolygonSet(coords, scales, depth, closed=not spec.star.is_spoke, label=spec.label())


def _edges(figure: np.ndarray) -> np.ndarray:
    """``(..., components, points, 2)`` -> ``(..., edges, 2, 2)``."""
    seg = np.stack([figure[..., :-1, :], figure[..., 1:, :]], axis=-2)
    return seg.reshape(*figure.shape[:-3], -1, 2, 2)


def _point_segment_distance(p, a, b):
    ab = b - a
    denom = np.einsum("...i,...i->...", ab, ab)
    u = np.clip(np.einsum("...i,...i->...", p - a, ab) / np.where(denom > 0, denom, 1.0), 0.0, 1.0)
    d = p - (a + u[..., None] * ab)
    return np.sqrt(np.einsum("...i,...i->...", d, d))


def _side(a, b, p):
    """Signed distance of ``p`` from the line through ``a, b`` (positive on the left)."""
    ab = b - a
    cross = ab[..., 0] * (p[..., 1] - a[..., 1]) - ab[..., 1] * (p[..., 0] - a[..., 0])
    return cross / np.hypot(ab[..., 0], ab[..., 1])


def segment_relations(s1: np.ndarray, s2: np.ndarray, tol: float = TOUCH_TOL):
    """Pairwise relation of two edge lists ``(E1, 2, 2)`` and ``(E2, 2, 2)``.

    Returns ``(crossing, distance)`` arrays of shape ``(E1, E2)``. A crossing
    is a proper one: each segment's endpoints lie strictly on opposite sides
    of the other's line, farther than ``tol``. Touching at an endpoint,
    T-junctions and collinear overlap are not crossings.
    """
    a0, a1 = s1[:, None, 0], s1[:, None, 1]
    b0, b1 = s2[None, :, 0], s2[None, :, 1]
    d1, d2 = _side(a0, a1, b0), _side(a0, a1, b1)
    d3, d4 = _side(b0, b1, a0), _side(b0, b1, a1)
    crossing = (
        (np.abs(d1) > tol) & (np.abs(d2) > tol) & (np.sign(d1) != np.sign(d2))
        & (np.abs(d3) > tol) & (np.abs(d4) > tol) & (np.sign(d3) != np.sign(d4))
    )
    dist = np.minimum.reduce([
        _point_segment_distance(b0, a0, a1),
        _point_segment_distance(b1, a0, a1),
        _point_segment_distance(a0, b0, b1),
        _point_segment_distance(a1, b0, b1),
    ])
    # segments that straddle each other (within tol) meet
    straddle = (d1 * d2 <= 0) & (d3 * d4 <= 0)
    dist = np.where(crossing | straddle, 0.0, dist)
    return crossing, dist


@dataclass(frozen=True)
class OsculationReport:
    intersecting: bool
    touching_pairs: int
    crossing_edges: int
    # copy pairs whose filled outlines overlap with positive area
    overlapping_pairs: int
    # largest number of vertices any two copies have in common
    max_shared_vertices: int
    # smallest distance between the center copy and a vertex copy (None without a center map)
    center_gap: Optional[float]
    # center-copy pairs that touch
    center_touching: int

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def osculation_check(spec, m=None, tol: float = TOUCH_TOL) -> OsculationReport:
    """Look for interior crossings between the depth-1 copies of the figure.

    Two copies intersect when an edge of one properly crosses an edge of the
    other, or when their filled star outlines overlap with positive area
    (copies can overlap along collinear edges without any proper crossing).
    ``spec`` is a :class:`FlakeSpec`, a :class:`StarPolygonSpec`, or ``n``
    with ``m`` given separately.
    """
    spec = _as_spec(spec, m)
    system = build_flake(spec)
    level = iterate(spec, 1, system)
    edges = _edges(level.coords)
    verts = level.coords.reshape(len(level), -1, 2)
    centers = np.array([s(np.zeros(2)) for s in system.maps])
    radii = level.scales
    n_copies = len(level)
    center_idx = n_copies - 1 if system.has_center else None
    outline = star_outline(spec.star)
    regions = None
    if outline is not None:
        regions = [shapely.Polygon(s(outline)) for s in system.maps]

    touching = crossings = center_touch = overlaps = 0
    max_shared = 0
    center_gap = math.inf if center_idx is not None else None
    for i in range(n_copies):
        for j in range(i + 1, n_copies):
            gap_bound = np.hypot(*(centers[i] - centers[j])) - radii[i] - radii[j]
            if gap_bound > tol:
                if center_idx in (i, j):
                    center_gap = min(center_gap, _copy_distance(edges[i], edges[j], tol))
                continue
            cross, dist = segment_relations(edges[i], edges[j], tol)
            crossings += int(cross.sum())
            if regions is not None and regions[i].intersection(regions[j]).area > AREA_TOL:
                overlaps += 1
            gap = float(dist.min())
            if gap <= tol:
                touching += 1
                if center_idx in (i, j):
                    center_touch += 1
            if center_idx in (i, j):
                center_gap = min(center_gap, gap)
            dv = np.linalg.norm(verts[i][:, None, :] - verts[j][None, :, :], axis=-1)
            shared = _unique_points(verts[i][np.any(dv <= tol, axis=1)], tol)
            max_shared = max(max_shared, shared)
    return OsculationReport(
        intersecting=crossings > 0 or overlaps > 0,
        touching_pairs=touching,
        crossing_edges=crossings,
        overlapping_pairs=overlaps,
        max_shared_vertices=max_shared,
        center_gap=center_gap,
        center_touching=center_touch,
    )


def _copy_distance(e1, e2, tol):
    return float(segment_relations(e1, e2, tol)[1].min())


def _unique_points(pts: np.ndarray, tol: float) -> int:
    kept = []
    for p in pts:
        if all(np.hypot(*(p - q)) > tol for q in kept):
            kept.append(p)
    return len(kept)
