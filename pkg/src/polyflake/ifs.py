"""
Iterated function systems built from star polygons.

A system is an ordered tuple of :class:`Similarity` maps (vertex maps first,
then an optional center map) plus chaos-game selection probabilities.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .geometry import (
    CenterFamily,
    CenterMapSpec,
    GeometryError,
    Rotation,
    StarPolygonSpec,
    _first_canonical,
    center_ratio_L_from_ratio,
    center_ratio_M_from_ratio,
    contraction_ratio,
    gamma_from_ratio,
    is_canonical,
    vertices,
)

__all__ = [
    "Similarity",
    "IfsSystem",
    "FlakeSpec",
    "PRESETS",
    "apply",
    "build_ngon",
    "build_flake",
    "preset",
    "floored_probabilities",
    "matrix_rows",
    "to_matrix",
    "parse_matrix",
    "from_matrix",
    "ccw_order",
]

# no map may be picked with probability below max/(25 N)
PROBABILITY_FLOOR_DIVISOR = 25


@dataclass(frozen=True)
class Similarity:
    """x -> v + scale * R(rotation) (x - v), with fixed point v."""

    scale: float
    rotation: float = 0.0
    fixed_point: tuple = (0.0, 0.0)

    def __post_init__(self):
        if not self.scale > 0:
            raise GeometryError(f"similarity scale must be positive, got {self.scale}")
        object.__setattr__(self, "scale", float(self.scale))
        object.__setattr__(self, "rotation", float(self.rotation))
        object.__setattr__(self, "fixed_point", (float(self.fixed_point[0]), float(self.fixed_point[1])))

    @property
    def linear(self) -> np.ndarray:
        c, s = math.cos(self.rotation), math.sin(self.rotation)
        return self.scale * np.array([[c, -s], [s, c]])

    @property
    def translation(self) -> np.ndarray:
        v = np.asarray(self.fixed_point)
        return v - self.linear @ v

    @property
    def det(self) -> float:
        return self.scale * self.scale

    def __call__(self, points):
        """Apply to a point or an ``(..., 2)`` array of points."""
        p = np.asarray(points, dtype=float)
        return p @ self.linear.T + self.translation


def apply(sim: Similarity, p, is_center: bool = False, center_rotation: float = 0.0) -> np.ndarray:
    """Map one point the way the reference random walk does.

    Center maps first rotate ``p`` about the origin by ``center_rotation``;
    then ``x <- A p + (I - A) v`` with ``A`` the map's linear part and ``v``
    its fixed point.
    """
    p = np.asarray(p, dtype=float)
    if is_center:
        c, s = math.cos(center_rotation), math.sin(center_rotation)
        p = np.array([[c, -s], [s, c]]) @ p
    a = sim.linear
    v = np.asarray(sim.fixed_point)
    return a @ p + (np.eye(2) - a) @ v


def floored_probabilities(dets: Sequence[float]) -> np.ndarray:
    d = np.abs(np.asarray(dets, dtype=float))
    d = np.maximum(d, d.max() / (PROBABILITY_FLOOR_DIVISOR * len(d)))
    return d / d.sum()


@dataclass(frozen=True)
class IfsSystem:
    """An ordered list of contracting similarities.

    When ``has_center`` is set the last map is the center map; its rotation
    is exposed as :attr:`center_rotation`.
    """

    maps: tuple
    probabilities: tuple = None
    has_center: bool = False
    label: str = ""
    uniform: bool = False

    def __post_init__(self):
        maps = tuple(self.maps)
        object.__setattr__(self, "maps", maps)
        if len(maps) < 2:
            raise GeometryError("an IFS needs at least 2 maps")
        for i, s in enumerate(maps):
            if not s.scale < 1.0:
                raise GeometryError(f"map {i} is not contractive (scale={s.scale})")
        if self.probabilities is None:
            if self.uniform:
                probs = np.full(len(maps), 1.0 / len(maps))
            else:
                probs = floored_probabilities([s.det for s in maps])
        else:
            probs = np.asarray(self.probabilities, dtype=float)
            if probs.shape != (len(maps),) or np.any(probs < 0):
                raise ValueError("probabilities must be one non-negative weight per map")
            probs = probs / probs.sum()
        object.__setattr__(self, "probabilities", tuple(float(p) for p in probs))

    def __len__(self):
        return len(self.maps)

    @property
    def ratios(self) -> list:
        return [s.scale for s in self.maps]

    @property
    def center_rotation(self) -> float:
        return self.maps[-1].rotation if self.has_center else 0.0

    def coefficients(self):
        """Stacked linear parts ``(N, 2, 2)`` and translations ``(N, 2)``."""
        a = np.stack([s.linear for s in self.maps])
        t = np.stack([s.translation for s in self.maps])
        return a, t

    def digest(self) -> str:
        """sha256 of the full-precision map table and probabilities."""
        h = hashlib.sha256()
        h.update(matrix_rows(self).astype("<f8").tobytes())
        h.update(np.asarray(self.probabilities, dtype="<f8").tobytes())
        return h.hexdigest()

    def permuted(self, order: Sequence[int]) -> "IfsSystem":
        """Same maps in a different order (the center flag is dropped unless it stays last)."""
        order = list(order)
        if sorted(order) != list(range(len(self.maps))):
            raise ValueError(f"order must be a permutation of 0..{len(self.maps) - 1}")
        keep = self.has_center and order[-1] == len(self.maps) - 1
        return IfsSystem(
            tuple(self.maps[i] for i in order),
            tuple(self.probabilities[i] for i in order),
            has_center=keep,
            label=self.label,
        )


@dataclass(frozen=True)
class FlakeSpec:
    """Parameters of a Sierpinski n-gon or n-flake.

    ``m_draw`` shapes the drawn initial figure only; ``m_ratio`` feeds the
    contraction ratio. ``ratio`` overrides P(n, m_ratio) outright (Cantor set,
    Vicsek fractal).
    """

    n: int
    m_draw: Fraction = None
    m_ratio: int = None
    center: Optional[CenterMapSpec] = None
    ratio: Optional[float] = None
    name: str = ""

    def __post_init__(self):
        n = int(self.n)
        m_ratio = self.m_ratio
        if m_ratio is None:
            if self.m_draw is not None and Fraction(self.m_draw).denominator == 1:
                m_ratio = int(self.m_draw)
            else:
                m_ratio = _first_canonical(n)
        m_draw = m_ratio if self.m_draw is None else self.m_draw
        star = StarPolygonSpec(n, m_draw)
        if not 1 <= m_ratio <= n / 2:
            raise GeometryError(f"m_ratio must satisfy 1 <= m <= n/2, got {m_ratio}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "m_draw", star.m)
        object.__setattr__(self, "m_ratio", int(m_ratio))
        if self.ratio is not None and not 0 < self.ratio < 1:
            raise GeometryError(f"ratio override must lie in (0, 1), got {self.ratio}")
        if self.center is not None:
            self.center.validate(n)

    @property
    def star(self) -> StarPolygonSpec:
        return StarPolygonSpec(self.n, self.m_draw)

    @property
    def vertex_ratio(self) -> float:
        if self.ratio is not None:
            return float(self.ratio)
        return contraction_ratio(self.n, self.m_ratio)

    @property
    def canonical(self) -> bool:
        """Advisory flag: False when m_ratio is outside [n/4, n/4 + 1]."""
        return self.ratio is not None or is_canonical(self.n, self.m_ratio)

    def center_ratio(self) -> Optional[float]:
        if self.center is None:
            return None
        p = self.vertex_ratio
        if self.center.family is CenterFamily.L:
            return center_ratio_L_from_ratio(self.n, p, self.center.l)
        return center_ratio_M_from_ratio(self.n, p, self.center.l)

    def center_angle(self) -> Optional[float]:
        """Resolved rotation of the center map in radians."""
        if self.center is None:
            return None
        rot = self.center.rotation
        if rot is Rotation.NONE:
            return 0.0
        if rot is Rotation.HALF_STEP:
            return math.pi / self.n
        if rot is Rotation.GAMMA:
            return gamma_from_ratio(self.n, self.vertex_ratio, self.center.l)
        return float(rot)

    def label(self) -> str:
        s = f"F{self.star}"
        if self.m_ratio != self.m_draw:
            s += f"(P from m={self.m_ratio})"
        if self.ratio is not None:
            s += f"(P={self.ratio:.6g})"
        if self.center is not None:
            s += self.center.label(self.n)
        return s


def build_ngon(n: int, m: int, ratio: Optional[float] = None, uniform: bool = False) -> IfsSystem:
    """n maps contracting by P(n, m) toward the vertices, vertex k first."""
    p = contraction_ratio(n, m) if ratio is None else float(ratio)
    maps = tuple(Similarity(p, 0.0, tuple(v)) for v in vertices(n))
    return IfsSystem(maps, has_center=False, label=f"F{{{n}/{m}}}", uniform=uniform)


def build_flake(spec: FlakeSpec, uniform: bool = False) -> IfsSystem:
    p = spec.vertex_ratio
    maps = [Similarity(p, 0.0, tuple(v)) for v in vertices(spec.n)]
    if spec.center is not None:
        maps.append(Similarity(spec.center_ratio(), spec.center_angle(), (0.0, 0.0)))
    return IfsSystem(tuple(maps), has_center=spec.center is not None, label=spec.label(), uniform=uniform)


def _L(l, rotation=Rotation.NONE):
    return CenterMapSpec(CenterFamily.L, l, rotation)


PRESETS = {
    "cantor": FlakeSpec(2, 1, 1, ratio=1 / 3, name="cantor"),
    "sierpinski-triangle": FlakeSpec(3, 1, 1, name="sierpinski-triangle"),
    "greek-cross": FlakeSpec(4, 2, 2, name="greek-cross"),
    "vicsek": FlakeSpec(4, 2, 2, center=_L(0), ratio=1 / 3, name="vicsek"),
    "sierpinski-pentagon": FlakeSpec(5, 2, 2, name="sierpinski-pentagon"),
    "pentaflake": FlakeSpec(5, 2, 2, center=_L(1), name="pentaflake"),
    "sierpinski-hexagon": FlakeSpec(6, 2, 2, name="sierpinski-hexagon"),
    "hexaflake": FlakeSpec(6, 2, 2, center=_L(0), name="hexaflake"),
}


def preset(name: str) -> FlakeSpec:
    try:
        return PRESETS[name]
    except KeyError:
        raise KeyError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}") from None


def ccw_order(n: int, start: int = 0) -> list:
    """Vertex indices walked counterclockwise from ``start``.

    Vertex k is at angle 2 pi k/n measured clockwise from the top, so the
    counterclockwise walk is ``start, start-1, ...``. ``ccw_order(9, 3)`` is
    the row order of the published {9/2} and {9/3} tables.
    """
    return [(start - i) % n for i in range(n)]


def matrix_rows(system: IfsSystem) -> np.ndarray:
    """``(2N, 3)`` array; rows 2i, 2i+1 hold the linear part and fixed point of map i."""
    rows = []
    for s in system.maps:
        a = s.linear
        rows.append([a[0, 0], a[0, 1], s.fixed_point[0]])
        rows.append([a[1, 0], a[1, 1], s.fixed_point[1]])
    return np.array(rows)


def _fmt(x: float, decimals: int) -> str:
    s = f"{x:.{decimals}f}"
    if "." in s:
        s = s.rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def to_matrix(system: IfsSystem, order: Optional[Sequence[int]] = None, decimals: int = 7) -> str:
    """Whitespace-separated coefficient table, one text line per row.

    Values are printed with ``decimals`` places and trailing zeros removed.
    """
    if order is not None:
        system = system.permuted(order)
    return "\n".join(" ".join(_fmt(x, decimals) for x in row) for row in matrix_rows(system)) + "\n"


def parse_matrix(text: str) -> np.ndarray:
    rows = [line.split() for line in text.splitlines() if line.strip() and not line.lstrip().startswith("#")]
    arr = np.array([[float(t) for t in r] for r in rows]) if rows else np.zeros((0, 3))
    if arr.ndim != 2 or arr.shape[1] != 3 or arr.shape[0] % 2:
        raise ValueError("bad input size: expected 2N rows of 3 columns")
    return arr


def from_matrix(data, center_last: bool = False) -> IfsSystem:
    """Rebuild a system from a coefficient table (text or ``(2N, 3)`` array).

    Each 2x2 block must be a scaled rotation.
    """
    arr = parse_matrix(data) if isinstance(data, str) else np.asarray(data, dtype=float)
    maps = []
    for i in range(arr.shape[0] // 2):
        a = arr[2 * i:2 * i + 2, :2]
        scale = math.sqrt(abs(np.linalg.det(a)))
        rot = math.atan2(a[1, 0], a[0, 0])
        maps.append(Similarity(scale, rot, (arr[2 * i, 2], arr[2 * i + 1, 2])))
    return IfsSystem(tuple(maps), has_center=center_last)
