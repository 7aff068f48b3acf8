"""
Closed-form star-polygon geometry.

Vertices of an {n/m} star polygon sit on the unit circle at
``(sin(2*pi*k/n), cos(2*pi*k/n))`` so vertex 0 is the top point ``(0, 1)``.
Everything here is a pure function of integers ``n, m, l``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import numpy as np

__all__ = [
    "GeometryError",
    "StarPolygonSpec",
    "CenterFamily",
    "Rotation",
    "CenterMapSpec",
    "vertices",
    "contraction_ratio",
    "canonical_m",
    "is_canonical",
    "center_ratio_M",
    "center_ratio_L",
    "center_ratio_L_from_ratio",
    "center_ratio_M_from_ratio",
    "gamma",
    "gamma_from_ratio",
]


class GeometryError(ValueError):
    """Invalid star-polygon or center-map parameters."""


def _as_fraction(m) -> Fraction:
    if isinstance(m, Fraction):
        return m
    if isinstance(m, float):
        # only halves are meaningful; limit_denominator keeps 3.5 exact
        return Fraction(m).limit_denominator(2)
    return Fraction(m)


@dataclass(frozen=True)
class StarPolygonSpec:
    """The pair {n/m}.

    ``m`` is kept as a :class:`~fractions.Fraction` so that the spoke
    polygon {2i+1, i+1/2} (``m == n/2`` for odd ``n``) is represented
    exactly.
    """

    n: int
    m: Fraction = Fraction(1)

    def __post_init__(self):
        m = _as_fraction(self.m)
        object.__setattr__(self, "m", m)
        if int(self.n) != self.n or self.n < 2:
            raise GeometryError(f"n must be an integer >= 2, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))
        if m.denominator == 1:
            if not 1 <= m <= Fraction(self.n, 2):
                raise GeometryError(f"m must satisfy 1 <= m <= n/2, got {{{self.n}/{m}}}")
        elif m != Fraction(self.n, 2):
            raise GeometryError(f"a non-integer m is only allowed as m = n/2, got {{{self.n}/{m}}}")

    @property
    def is_spoke(self) -> bool:
        """True for the {n, n/2} figure: segments from the center to each vertex."""
        return self.m == Fraction(self.n, 2)

    def __str__(self):
        m = self.m
        ms = str(m.numerator) if m.denominator == 1 else f"{float(m):g}"
        return f"{{{self.n}/{ms}}}"


class CenterFamily(str, enum.Enum):
    L = "L"
    M = "M"


class Rotation(str, enum.Enum):
    NONE = "none"
    HALF_STEP = "half"
    GAMMA = "gamma"


RotationLike = Union[Rotation, float]


@dataclass(frozen=True)
class CenterMapSpec:
    """Descriptor of the extra contraction toward the circle's center.

    ``rotation`` is either a :class:`Rotation` policy or an explicit angle in
    radians.
    """

    family: CenterFamily
    l: int
    rotation: RotationLike = Rotation.NONE

    def __post_init__(self):
        object.__setattr__(self, "family", CenterFamily(self.family))
        rot = self.rotation
        if isinstance(rot, str):
            rot = Rotation(rot)
        elif not isinstance(rot, Rotation):
            rot = float(rot)
        object.__setattr__(self, "rotation", rot)
        if self.l < 0:
            raise GeometryError(f"center index l must be >= 0, got {self.l}")

    def validate(self, n: int) -> None:
        _check_l(n, self.l)

    def label(self, n: int) -> str:
        rot = self.rotation
        if rot is Rotation.NONE:
            r = "0"
        elif rot is Rotation.HALF_STEP:
            r = f"pi/{n}"
        elif rot is Rotation.GAMMA:
            r = "gamma"
        else:
            r = f"{rot:.6g}"
        return f"[{self.family.value}{self.l},{r}]"


def vertices(spec) -> np.ndarray:
    """Vertices of the star polygon as an ``(n, 2)`` array.

    Accepts a :class:`StarPolygonSpec` or a bare vertex count.
    """
    n = spec.n if isinstance(spec, StarPolygonSpec) else int(spec)
    if n < 2:
        raise GeometryError(f"n must be >= 2, got {n}")
    theta = 2.0 * np.pi * np.arange(n) / n
    return np.column_stack([np.sin(theta), np.cos(theta)])


def contraction_ratio(n: int, m: int) -> float:
    """Scale factor P(n, m) that makes copies of {n/m} meet at the secant crossings.

    ``P = sin(pi/n) / (2 cos((m-1) pi/n) sin(m pi/n))``
    """
    if n < 2:
        raise GeometryError(f"n must be >= 2, got {n}")
    if not 1 <= m <= n / 2:
        raise GeometryError(f"m must satisfy 1 <= m <= n/2, got n={n}, m={m}")
    t = math.pi / n
    return math.sin(t) / (2.0 * math.cos((m - 1) * t) * math.sin(m * t))


def canonical_m(n: int):
    """The integer m in ``[n/4, n/4 + 1]``.

    Returns an ``int`` normally and a pair ``(n//4, n//4 + 1)`` when ``4 | n``
    (both give the same ratio). For ``n = 2, 3`` the interval holds only
    ``m = 1``.
    """
    if n < 2:
        raise GeometryError(f"n must be >= 2, got {n}")
    if n % 4 == 0:
        return (n // 4, n // 4 + 1)
    return max(1, -(-n // 4))


def _first_canonical(n: int) -> int:
    c = canonical_m(n)
    return c[0] if isinstance(c, tuple) else c


def is_canonical(n: int, m) -> bool:
    """Whether copies of {n/m} scaled by P(n, m) avoid self-intersection."""
    m = _as_fraction(m)
    if m.denominator != 1:
        return False
    c = canonical_m(n)
    return int(m) in c if isinstance(c, tuple) else int(m) == c


def _check_l(n: int, l: int) -> None:
    if not 0 <= l <= n:
        raise GeometryError(f"center index l must satisfy 0 <= l <= n, got l={l}, n={n}")
    if (l - n) % 2:
        kind = "even" if n % 2 == 0 else "odd"
        raise GeometryError(f"l must be {kind} for n={n}, got l={l}")


def center_ratio_M_from_ratio(n: int, p: float, l: int) -> float:
    _check_l(n, l)
    return (1.0 - p - p * math.cos(l * math.pi / n)) / math.cos(math.pi / n)


def center_ratio_L_from_ratio(n: int, p: float, l: int) -> float:
    _check_l(n, l)
    # clamp tiny negative round-off before the square root
    return math.sqrt(max(0.0, 2.0 * p * (p - 1.0) * (1.0 + math.cos(l * math.pi / n)) + 1.0))


def gamma_from_ratio(n: int, p: float, l: int) -> float:
    _check_l(n, l)
    if l == 0:
        # L^0 lies on OO^1, so no rotation is needed even when the center copy is degenerate
        return 0.0
    t = l * math.pi / n
    num = p * math.sin(t)
    den = 1.0 - p - p * math.cos(t)
    if num == 0.0 and den == 0.0:
        raise GeometryError(f"rotation angle undefined for n={n}, l={l}, P={p}")
    if num == 0.0:
        return 0.0
    return math.atan2(num, den)


def center_ratio_M(n: int, m: int, l: int) -> float:
    """Center-map ratio OM^l/OA, paired with a rotation of pi/n.

    ``(1 - P - P cos(l pi/n)) / cos(pi/n)``; ``l`` has the parity of ``n``.
    """
    return center_ratio_M_from_ratio(n, contraction_ratio(n, m), l)


def center_ratio_L(n: int, m: int, l: int) -> float:
    """Center-map ratio OL^l/OA = sqrt(2P(P-1)(1 + cos(l pi/n)) + 1)."""
    return center_ratio_L_from_ratio(n, contraction_ratio(n, m), l)


def gamma(n: int, m: int, l: int) -> float:
    """Rotation angle of the center copy whose vertex lands on L^l.

    Quadrant-aware ``atan2(P sin(l pi/n), 1 - P - P cos(l pi/n))``.
    """
    return gamma_from_ratio(n, contraction_ratio(n, m), l)
