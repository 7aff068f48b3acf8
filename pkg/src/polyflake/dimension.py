"""
Hausdorff dimension of self-similar sets.

The similarity dimension is the root ``s`` of ``sum(c_i ** s) == 1``. For
non-overlapping systems it equals the Hausdorff dimension; box counting on a
chaos-game cloud gives an independent estimate.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .geometry import (
    CenterFamily,
    CenterMapSpec,
    GeometryError,
    Rotation,
    _first_canonical,
    canonical_m,
    contraction_ratio,
)
from .ifs import FlakeSpec, IfsSystem, build_flake

__all__ = [
    "Method",
    "DimensionResult",
    "moran_solve",
    "ngon_dimension",
    "flake_dimension",
    "system_dimension",
    "box_count",
    "box_count_estimate",
    "asymptote_check",
    "DEFAULT_BOX_LEVELS",
]

BISECTION_BRACKET = (0.0, 64.0)
BISECTION_ITERATIONS = 200
# box sides 2 / 2**j for these j, on the square [-1, 1]^2
DEFAULT_BOX_LEVELS = tuple(range(4, 10))


class Method(str, enum.Enum):
    CLOSED_FORM = "closed-form"
    BISECTION = "bisection"
    BOX_COUNT = "box-count"


@dataclass(frozen=True)
class DimensionResult:
    value: float
    method: Method
    residual: float
    # True when the maps are known to overlap: the value is then only the
    # similarity dimension, an upper bound on the Hausdorff dimension
    upper_bound: bool = False

    @property
    def description(self) -> str:
        return "similarity dimension (upper bound)" if self.upper_bound else "Hausdorff dimension"

    def __float__(self):
        return self.value

    def as_dict(self) -> dict:
        return {
            "dimension": self.value,
            "method": self.method.value,
            "residual": self.residual,
            "kind": self.description,
        }


def _moran_residual(ratios: np.ndarray, s: float) -> float:
    return abs(float(np.sum(ratios ** s)) - 1.0)


def moran_solve(ratios: Sequence[float]) -> DimensionResult:
    """Solve ``sum(c ** s) == 1`` for ``s >= 0``.

    Equal ratios use ``-ln N / ln c``; otherwise bisection on [0, 64], with
    the upper end doubled while the sum there still exceeds 1. The left side
    is strictly decreasing in ``s`` so the root is unique.
    """
    c = np.asarray(list(ratios), dtype=float)
    if c.size == 0:
        raise ValueError("need at least one ratio")
    if np.any(c <= 0) or np.any(c >= 1):
        raise GeometryError(f"all ratios must lie in (0, 1), got {c.tolist()}")
    if c.size == 1:
        return DimensionResult(0.0, Method.CLOSED_FORM, _moran_residual(c, 0.0))
    if np.all(c == c[0]):
        s = -math.log(c.size) / math.log(c[0])
        return DimensionResult(s, Method.CLOSED_FORM, _moran_residual(c, s))

    lo, hi = BISECTION_BRACKET
    # ratios close to 1 push the root past 64; widen until the sum drops to 1
    while np.sum(c ** hi) > 1.0:
        lo, hi = hi, 2.0 * hi
    for _ in range(BISECTION_ITERATIONS):
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            break
        if np.sum(c ** mid) > 1.0:
            lo = mid
        else:
            hi = mid
    # pick whichever bracket end balances the sum better
    s = lo if _moran_residual(c, lo) <= _moran_residual(c, hi) else hi
    return DimensionResult(s, Method.BISECTION, _moran_residual(c, s))


def ngon_dimension(n: int, m: int) -> DimensionResult:
    """``-ln n / ln P(n, m)`` for the Sierpinski n-gon."""
    p = contraction_ratio(n, m)
    if p >= 1.0:
        raise GeometryError(f"P({n},{m}) = {p} is not a contraction")
    s = -math.log(n) / math.log(p)
    c = canonical_m(n)
    overlapping = m not in c if isinstance(c, tuple) else m != c
    return DimensionResult(s, Method.CLOSED_FORM, abs(n * p ** s - 1.0), upper_bound=overlapping)


def system_dimension(system: IfsSystem, upper_bound: bool = False) -> DimensionResult:
    r = moran_solve(system.ratios)
    return DimensionResult(r.value, r.method, r.residual, upper_bound)


def flake_dimension(spec: FlakeSpec) -> DimensionResult:
    """Moran root over the n vertex ratios plus the center ratio."""
    return system_dimension(build_flake(spec), upper_bound=not spec.canonical)


def box_count(points, levels: Iterable[int] = DEFAULT_BOX_LEVELS):
    """Occupied-box counts on dyadic grids anchored at (-1, -1) with side 2.

    Returns ``(sizes, counts)`` where ``sizes[j] = 2 / 2**levels[j]``.
    """
    pts = np.asarray(points, dtype=float)
    levels = list(levels)
    # cells are clipped so points on the +1 edge fall in the last cell
    u = (pts + 1.0) / 2.0
    sizes, counts = [], []
    for j in levels:
        k = 1 << j
        idx = np.clip(np.floor(u * k).astype(np.int64), 0, k - 1)
        counts.append(np.unique(idx[:, 0] * k + idx[:, 1]).size)
        sizes.append(2.0 / k)
    return np.array(sizes), np.array(counts)


def box_count_estimate(cloud, levels: Sequence[int] = DEFAULT_BOX_LEVELS, min_points: int = 100_000) -> DimensionResult:
    """Least-squares slope of log(count) against log(1/size).

    ``cloud`` is a :class:`~polyflake.chaos.PointCloud` or an ``(k, 2)`` array.
    The residual field holds the RMS deviation of the log-log fit.
    """
    pts = np.asarray(getattr(cloud, "points", cloud), dtype=float)
    levels = sorted(set(int(j) for j in levels))
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise ValueError("expected an (k, 2) array of points")
    if pts.shape[0] < min_points:
        raise ValueError(f"box counting needs at least {min_points} points, got {pts.shape[0]}")
    if len(levels) < 4 or levels[-1] - levels[0] < 2:
        raise ValueError("need at least 4 grid levels spanning at least 2 octaves")
    if np.all(pts == pts[0]):
        raise ValueError("degenerate cloud: all points coincide")
    sizes, counts = box_count(pts, levels)
    x = np.log(1.0 / sizes)
    y = np.log(counts)
    slope, intercept = np.polyfit(x, y, 1)
    rms = float(np.sqrt(np.mean((y - (slope * x + intercept)) ** 2)))
    return DimensionResult(float(slope), Method.BOX_COUNT, rms)


class Asymptote(str, enum.Enum):
    NGON_TO_ONE = "ngon"
    FLAKE_TO_TWO = "flake"


def _big_ngon_dimension(n: float) -> float:
    # canonical m grows like n/4; the float form keeps n = 1e308 usable
    m = n / 4.0 if n > 2 ** 53 else _first_canonical(int(n))
    t = math.pi / n
    p = math.sin(t) / (2.0 * math.cos((m - 1) * t) * math.sin(m * t))
    return -math.log(n) / math.log(p)


def _default_flake(n: int) -> FlakeSpec:
    if n % 2 == 0:
        center = CenterMapSpec(CenterFamily.L, 0, Rotation.NONE)
    else:
        center = CenterMapSpec(CenterFamily.L, 1, Rotation.GAMMA)
    return FlakeSpec(n, center=center)


def asymptote_check(kind, n_values: Sequence) -> list:
    """Table of ``(n, dimension)`` along an increasing sequence of n.

    ``"ngon"`` uses canonical Sierpinski n-gons (limit 1); ``"flake"`` uses
    the standard n-flake, [L0, 0] for even n and [L1, gamma] for odd n (limit 2).
    Values of n beyond 2**53 are accepted for n-gons only.
    """
    kind = Asymptote(kind)
    n_values = list(n_values)
    if any(b <= a for a, b in zip(n_values, n_values[1:])):
        raise ValueError("n_values must be strictly increasing")
    rows = []
    for n in n_values:
        if kind is Asymptote.NGON_TO_ONE:
            if n > 2 ** 53:
                rows.append((n, _big_ngon_dimension(float(n))))
            else:
                rows.append((n, ngon_dimension(int(n), _first_canonical(int(n))).value))
        else:
            rows.append((n, flake_dimension(_default_flake(int(n))).value))
    return rows
