"""
Chaos-game sampling of IFS attractors.

The walk starts at the origin, picks map ``i`` with the floored
determinant-weighted probabilities of the system, and throws away the first
20 iterates. Uniform variates come from numpy's PCG64 bit generator, so a
``(system, k, seed)`` triple reproduces the same cloud on any platform.
"""

from __future__ import annotations

import io
import os
import struct
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .ifs import IfsSystem

__all__ = ["BURN_IN", "PointCloud", "generate", "orbit_parallel", "select_maps"]

BURN_IN = 20
_BIN_HEADER = struct.Struct("<Q")


@dataclass(frozen=True, eq=False)
class PointCloud:
    points: np.ndarray
    seed: Union[int, tuple] = 0
    system_hash: str = ""

    def __len__(self):
        return len(self.points)

    # -- CSV: one "x,y" line per point, 9 significant digits
    def to_csv(self) -> str:
        buf = io.StringIO()
        for x, y in self.points.tolist():
            buf.write(f"{x:.9g},{y:.9g}\n")
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str, **kw) -> "PointCloud":
        rows = [line.split(",") for line in text.splitlines() if line.strip()]
        pts = np.array(rows, dtype=float).reshape(-1, 2)
        return cls(pts, **kw)

    # -- binary: little-endian uint64 count followed by float64 (x, y) pairs
    def to_bytes(self) -> bytes:
        pts = np.ascontiguousarray(self.points, dtype="<f8")
        return _BIN_HEADER.pack(len(pts)) + pts.tobytes()

    @classmethod
    def from_bytes(cls, data: bytes, **kw) -> "PointCloud":
        (count,) = _BIN_HEADER.unpack_from(data)
        body = data[_BIN_HEADER.size:]
        if len(body) != 16 * count:
            raise ValueError(f"binary cloud truncated: header says {count} points, body holds {len(body) / 16:g}")
        pts = np.frombuffer(body, dtype="<f8").reshape(count, 2).astype(float)
        return cls(pts, **kw)

    def save(self, path, fmt: str = None) -> None:
        fmt = (fmt or os.path.splitext(str(path))[1].lstrip(".")).lower()
        if fmt == "csv":
            with open(path, "w") as fh:
                fh.write(self.to_csv())
        elif fmt in ("bin", "binary"):
            with open(path, "wb") as fh:
                fh.write(self.to_bytes())
        else:
            raise ValueError(f"unknown point-cloud format {fmt!r}")

    @classmethod
    def load(cls, path, fmt: str = None) -> "PointCloud":
        fmt = (fmt or os.path.splitext(str(path))[1].lstrip(".")).lower()
        if fmt == "csv":
            with open(path) as fh:
                return cls.from_csv(fh.read())
        if fmt in ("bin", "binary"):
            with open(path, "rb") as fh:
                return cls.from_bytes(fh.read())
        raise ValueError(f"unknown point-cloud format {fmt!r}")


def select_maps(probabilities: Sequence[float], u: np.ndarray) -> np.ndarray:
    """Map indices for uniform variates ``u``.

    Mirrors ``sum(prob < rand)`` over ``prob = [0, p1, p1+p2, ...]``.
    """
    prob = np.concatenate([[0.0], np.cumsum(probabilities)[:-1]])
    return np.maximum(np.searchsorted(prob, u, side="left") - 1, 0)


def _orbit(system: IfsSystem, k: int, seed: int) -> np.ndarray:
    rng = np.random.Generator(np.random.PCG64(seed))
    total = k + BURN_IN
    choice = select_maps(system.probabilities, rng.random(total)).tolist()
    a, t = system.coefficients()
    coef = [(float(m[0, 0]), float(m[0, 1]), float(m[1, 0]), float(m[1, 1]), float(b[0]), float(b[1]))
            for m, b in zip(a, t)]
    xs = [0.0] * total
    ys = [0.0] * total
    x = y = 0.0
    # sequential by nature: each point depends on the previous one
    for j, i in enumerate(choice):
        a00, a01, a10, a11, b0, b1 = coef[i]
        x, y = a00 * x + a01 * y + b0, a10 * x + a11 * y + b1
        xs[j] = x
        ys[j] = y
    return np.column_stack([xs[BURN_IN:], ys[BURN_IN:]])


def generate(system: IfsSystem, k: int, seed: int = 0) -> PointCloud:
    """``k`` points on the attractor of ``system`` after a 20-step burn-in."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    return PointCloud(_orbit(system, int(k), int(seed)), int(seed), system.digest())


def orbit_parallel(system: IfsSystem, k: int, seeds: Sequence[int], max_workers: int = 1) -> PointCloud:
    """Union of independent orbits, ``k / len(seeds)`` points each, in seed order.

    With ``max_workers > 1`` orbits run in separate processes.
    """
    seeds = [int(s) for s in seeds]
    if not seeds:
        raise ValueError("need at least one seed")
    if k % len(seeds):
        raise ValueError(f"k={k} is not divisible among {len(seeds)} seeds")
    per = k // len(seeds)
    if len(seeds) == 1:
        return generate(system, per, seeds[0])
    if max_workers > 1:
        with ProcessPoolExecutor(max_workers=max_workers) as ex:
            parts = list(ex.map(_orbit, [system] * len(seeds), [per] * len(seeds), seeds))
    else:
        parts = [_orbit(system, per, s) for s in seeds]
    return PointCloud(np.concatenate(parts), tuple(seeds), system.digest())
