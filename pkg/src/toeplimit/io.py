"""File formats: symbol JSON, region JSON, CSV points, SVG figures."""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .errors import DomainError
from .geometry import Region
from .symbol import LaurentSymbol

__all__ = ["load_symbol", "dumps", "write_text", "points_csv", "svg_figure"]


def load_symbol(path) -> LaurentSymbol:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise DomainError(f"cannot read symbol file {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DomainError(f"malformed symbol JSON in {path}: {exc}") from exc
    return LaurentSymbol.from_json(data)


def dumps(obj) -> str:
    """Deterministic JSON text."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def write_text(path, text: str) -> None:
    Path(path).write_text(text)


def points_csv(points) -> str:
    p = np.asarray(points)
    if np.iscomplexobj(p):
        return "".join(f"{float(z.real)!r},{float(z.imag)!r}\n" for z in p.ravel())
    return "".join(f"{float(x)!r},{float(y)!r}\n" for x, y in np.asarray(p, dtype=float).reshape(-1, 2))


def _ring_area2(r: np.ndarray) -> float:
    x, y = r[:, 0], r[:, 1]
    return float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


def _path(r: np.ndarray) -> str:
    pts = " L ".join(f"{x:.9g},{-y:.9g}" for x, y in r)
    return f"M {pts} Z"


def svg_figure(superset: Region | None = None, polygon: Region | None = None,
               points=None, width: int = 800) -> str:
    """SVG with y pointing up: filled superset, outlined polygon, dots for points.

    Each ring is one path. Rings are normalized (outer boundaries
    counter-clockwise, holes clockwise); holes are painted in the background
    colour after the outer rings.
    """
    boxes = []
    layers = []
    for reg in (superset, polygon):
        if reg is not None and not reg.is_empty:
            boxes.append(reg.bbox())
    pts = None
    if points is not None and len(points):
        p = np.asarray(points)
        pts = np.stack([p.real, p.imag], axis=-1) if np.iscomplexobj(p) else np.asarray(p, float)
        boxes.append((pts[:, 0].min(), pts[:, 1].min(), pts[:, 0].max(), pts[:, 1].max()))
    if boxes:
        b = np.array(boxes, dtype=float)
        x0, y0, x1, y1 = b[:, 0].min(), b[:, 1].min(), b[:, 2].max(), b[:, 3].max()
    else:
        x0, y0, x1, y1 = -1.0, -1.0, 1.0, 1.0
    w, h = max(x1 - x0, 1e-12), max(y1 - y0, 1e-12)
    mx, my = 0.05 * w, 0.05 * h
    vb = (x0 - mx, -(y1 + my), w + 2 * mx, h + 2 * my)
    stroke = 0.002 * max(vb[2], vb[3])
    height = int(round(width * vb[3] / vb[2])) or 1

    def rings_svg(reg: Region, fill: str, line: str, cls: str) -> str:
        rings = reg.normalized().rings
        outer = [r for r in rings if _ring_area2(r) > 0]
        holes = [r for r in rings if _ring_area2(r) <= 0]
        out = [f'<g class="{cls}" fill-rule="nonzero" stroke="{line}" '
               f'stroke-width="{stroke:.6g}">']
        out += [f'<path fill="{fill}" d="{_path(r)}"/>' for r in outer]
        out += [f'<path fill="{"white" if fill != "none" else "none"}" d="{_path(r)}"/>'
                for r in holes]
        out.append("</g>")
        return "\n".join(out)

    if superset is not None and not superset.is_empty:
        layers.append(rings_svg(superset, "#9ecae1", "#3182bd", "superset"))
    if polygon is not None and not polygon.is_empty:
        layers.append(rings_svg(polygon, "none", "#e6550d", "polygon"))
    if pts is not None:
        rad = 0.003 * max(vb[2], vb[3])
        dots = "".join(f'<circle cx="{x:.9g}" cy="{-y:.9g}" r="{rad:.4g}"/>' for x, y in pts)
        layers.append(f'<g class="subset" fill="#31a354">{dots}</g>')
    head = (f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
            f'viewBox="{vb[0]:.9g} {vb[1]:.9g} {vb[2]:.9g} {vb[3]:.9g}">')
    return "\n".join([head, '<rect x="{:.9g}" y="{:.9g}" width="{:.9g}" height="{:.9g}" '
                      'fill="white"/>'.format(*vb)] + layers + ["</svg>"]) + "\n"
