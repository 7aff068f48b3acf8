"""
Raster and vector output for point clouds and polygon sets.

Both renderers use the same viewport: the square ``[-1 - margin, 1 + margin]``
on both axes, scaled uniformly into the image and centered.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from typing import Union

import numpy as np
from PIL import Image, ImageColor, ImageDraw

__all__ = [
    "RenderConfig",
    "rasterize",
    "render_polygons",
    "to_pixels",
    "png_bytes",
    "save_png",
    "cloud_to_svg",
    "polygons_to_svg",
]

FORMATS = ("png", "svg", "csv", "bin", "json", "matrix")
Color = Union[str, tuple]


@dataclass(frozen=True)
class RenderConfig:
    width: int = 1000
    height: int = 1000
    margin: float = 0.05
    point_size: int = 1
    line_width: int = 1
    background: Color = "white"
    foreground: Color = "black"
    format: str = "png"

    def __post_init__(self):
        if self.width < 16 or self.height < 16:
            raise ValueError(f"image must be at least 16x16 pixels, got {self.width}x{self.height}")
        if self.margin < 0:
            raise ValueError("margin must be non-negative")
        if self.point_size < 1 or self.line_width < 1:
            raise ValueError("point_size and line_width must be >= 1")
        if self.format.lower() not in FORMATS:
            raise ValueError(f"unknown format {self.format!r}")

    @property
    def scale(self) -> float:
        """Pixels per world unit."""
        return min(self.width, self.height) / (2.0 * (1.0 + self.margin))

    def rgb(self, which: str) -> tuple:
        c = getattr(self, which)
        return ImageColor.getrgb(c) if isinstance(c, str) else tuple(int(v) for v in c)


def to_pixels(points, config: RenderConfig) -> np.ndarray:
    """World coordinates to continuous pixel coordinates ``(col, row)``; y points up."""
    p = np.asarray(points, dtype=float)
    col = config.width / 2.0 + p[..., 0] * config.scale
    row = config.height / 2.0 - p[..., 1] * config.scale
    return np.stack([col, row], axis=-1)


def _blank(config: RenderConfig) -> np.ndarray:
    img = np.empty((config.height, config.width, 3), dtype=np.uint8)
    img[:] = config.rgb("background")
    return img


def rasterize(cloud, config: RenderConfig = RenderConfig()) -> np.ndarray:
    """Plot each point as a ``point_size`` square dot; returns an ``(H, W, 3)`` uint8 array."""
    pts = np.asarray(getattr(cloud, "points", cloud), dtype=float).reshape(-1, 2)
    if len(pts) == 0:
        raise ValueError("cannot rasterize an empty cloud")
    img = _blank(config)
    px = np.floor(to_pixels(pts, config)).astype(np.int64)
    fg = config.rgb("foreground")
    lo = -((config.point_size - 1) // 2)
    for dc in range(lo, lo + config.point_size):
        for dr in range(lo, lo + config.point_size):
            c = px[:, 0] + dc
            r = px[:, 1] + dr
            ok = (c >= 0) & (c < config.width) & (r >= 0) & (r < config.height)
            img[r[ok], c[ok]] = fg
    return img


def render_polygons(polygons, config: RenderConfig = RenderConfig()) -> np.ndarray:
    """Stroke every polyline of a :class:`~polyflake.exact.PolygonSet`."""
    coords = np.asarray(getattr(polygons, "coords", polygons), dtype=float)
    if coords.size == 0:
        raise ValueError("cannot render an empty polygon set")
    im = Image.new("RGB", (config.width, config.height), config.rgb("background"))
    draw = ImageDraw.Draw(im)
    fg = config.rgb("foreground")
    px = to_pixels(coords.reshape(-1, coords.shape[-2], 2), config)
    for line in px:
        draw.line([tuple(p) for p in line.tolist()], fill=fg, width=config.line_width)
    return np.asarray(im)


def png_bytes(img: np.ndarray) -> bytes:
    buf = io.BytesIO()
    Image.fromarray(img, "RGB").save(buf, format="PNG")
    return buf.getvalue()


def save_png(img: np.ndarray, path) -> None:
    with open(path, "wb") as fh:
        fh.write(png_bytes(img))


def _svg_header(config: RenderConfig) -> str:
    bg = "#%02x%02x%02x" % config.rgb("background")
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{config.width}" height="{config.height}" '
        f'viewBox="0 0 {config.width} {config.height}">\n'
        f'<rect width="100%" height="100%" fill="{bg}"/>\n'
    )


def polygons_to_svg(polygons, config: RenderConfig = RenderConfig()) -> str:
    """One ``<path>`` per copy; closed components end with ``Z``."""
    coords = np.asarray(getattr(polygons, "coords", polygons), dtype=float)
    closed = getattr(polygons, "closed", True)
    fg = "#%02x%02x%02x" % config.rgb("foreground")
    out = [_svg_header(config), f'<g fill="none" stroke="{fg}" stroke-width="{config.line_width}">\n']
    for copy in to_pixels(coords, config):
        parts = []
        for comp in copy:
            pts = comp[:-1] if closed else comp
            d = "M" + " L".join(f"{x:.3f},{y:.3f}" for x, y in pts.tolist())
            parts.append(d + (" Z" if closed else ""))
        out.append(f'<path d="{" ".join(parts)}"/>\n')
    out.append("</g>\n</svg>\n")
    return "".join(out)


def cloud_to_svg(cloud, config: RenderConfig = RenderConfig()) -> str:
    """Points as ``point_size`` squares; meant for modest clouds."""
    pts = np.asarray(getattr(cloud, "points", cloud), dtype=float).reshape(-1, 2)
    fg = "#%02x%02x%02x" % config.rgb("foreground")
    s = config.point_size
    px = np.floor(to_pixels(pts, config)).astype(np.int64)
    out = [_svg_header(config), f'<g fill="{fg}">\n']
    out.extend(f'<rect x="{c}" y="{r}" width="{s}" height="{s}"/>\n' for c, r in px.tolist())
    out.append("</g>\n</svg>\n")
    return "".join(out)
