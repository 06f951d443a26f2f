"""Planar regions on a fixed-point integer grid.

A :class:`Region` is a list of closed rings read with the nonzero winding
rule. Coordinates are stored as integers in a :class:`FixedPointFrame`, so
boolean operations are exact up to the rounding of newly created crossing
points (at most half a grid unit).
"""
from __future__ import annotations

import json
import math
from typing import Iterable, Sequence

import numpy as np

from ..errors import DegenerateInputError, FrameError, ParameterError
from ._overlay import COORD_LIMIT, overlay, ring_neighbours

__all__ = ["FixedPointFrame", "Region", "winding_number", "intersect", "union",
           "offset_outward", "area", "fatten_points", "fatten_segments", "covers"]

DEFAULT_SCALE = 1e7


class FixedPointFrame:
    """Map user coordinates to integers: i = floor((x - origin) * scale + 0.5)."""

    __slots__ = ("scale", "origin")

    def __init__(self, scale: float = DEFAULT_SCALE, origin=(0.0, 0.0)):
        scale = float(scale)
        if not (scale > 0 and math.isfinite(scale)):
            raise FrameError("frame scale must be positive and finite")
        self.scale = scale
        self.origin = (float(origin[0]), float(origin[1]))

    @classmethod
    def fit(cls, extent: float, origin=(0.0, 0.0), max_scale: float = DEFAULT_SCALE):
        """Largest scale <= max_scale keeping |x - origin| <= extent representable."""
        extent = float(extent)
        if not (extent > 0 and math.isfinite(extent)):
            return cls(max_scale, origin)
        return cls(min(max_scale, (COORD_LIMIT - 1) / extent), origin)

    @property
    def unit(self) -> float:
        """Length of one grid unit in user coordinates."""
        return 1.0 / self.scale

    def to_int(self, pts) -> np.ndarray:
        p = np.asarray(pts, dtype=float).reshape(-1, 2)
        q = np.floor((p - np.asarray(self.origin)) * self.scale + 0.5)
        if q.size and not (np.all(np.isfinite(q)) and np.abs(q).max() < COORD_LIMIT):
            raise FrameError("coordinates do not fit the fixed-point frame")
        return q.astype(np.int64)

    def to_user(self, q) -> np.ndarray:
        return np.asarray(q, dtype=float) / self.scale + np.asarray(self.origin)

    def __eq__(self, other):
        return (isinstance(other, FixedPointFrame) and self.scale == other.scale
                and self.origin == other.origin)

    def __hash__(self):
        return hash((self.scale, self.origin))

    def __repr__(self):
        return f"FixedPointFrame(scale={self.scale!r}, origin={self.origin!r})"

    def to_json(self) -> dict:
        return {"scale": self.scale, "origin": list(self.origin)}

    @classmethod
    def from_json(cls, d) -> "FixedPointFrame":
        return cls(d["scale"], tuple(d["origin"]))


def _clean_rings(rings: Sequence[np.ndarray]) -> list[np.ndarray]:
    """Drop consecutive duplicates (cyclically) and rings left with < 3 vertices."""
    rings = [np.asarray(r, dtype=np.int64).reshape(-1, 2) for r in rings]
    rings = [r for r in rings if r.shape[0]]
    if not rings:
        return []
    q = np.concatenate(rings)
    lens = np.array([r.shape[0] for r in rings])
    prv, _ = ring_neighbours(lens)
    keep = np.any(q != q[prv], axis=1)
    rid = np.repeat(np.arange(lens.size), lens)
    kept = np.bincount(rid[keep], minlength=lens.size)
    keep &= kept[rid] >= 3
    q, kept = q[keep], kept[kept >= 3]
    return np.split(q, np.cumsum(kept)[:-1]) if kept.size else []


class Region:
    """Immutable multipolygon under the nonzero fill rule."""

    __slots__ = ("_rings", "frame", "_normalized")

    def __init__(self, int_rings: Sequence[np.ndarray], frame: FixedPointFrame | None = None,
                 normalized: bool = False):
        self.frame = frame if frame is not None else FixedPointFrame()
        rings = _clean_rings(int_rings)
        for r in rings:
            r.setflags(write=False)
        self._rings = tuple(rings)
        self._normalized = normalized

    @classmethod
    def from_rings(cls, rings: Iterable, frame: FixedPointFrame | None = None) -> "Region":
        """Build from user-coordinate rings: (k, 2) real arrays or complex vectors."""
        frame = frame if frame is not None else FixedPointFrame()
        out = []
        for r in rings:
            a = np.asarray(r)
            if np.iscomplexobj(a):
                a = np.stack([a.real, a.imag], axis=-1)
            out.append(frame.to_int(a))
        return cls(out, frame)

    @classmethod
    def empty(cls, frame: FixedPointFrame | None = None) -> "Region":
        return cls([], frame, normalized=True)

    # -- views
    @property
    def int_rings(self) -> tuple[np.ndarray, ...]:
        return self._rings

    @property
    def rings(self) -> list[np.ndarray]:
        return [self.frame.to_user(r) for r in self._rings]

    @property
    def is_empty(self) -> bool:
        return not self._rings

    @property
    def vertex_count(self) -> int:
        return int(sum(r.shape[0] for r in self._rings))

    def __len__(self):
        return len(self._rings)

    def __repr__(self):
        return f"Region({len(self._rings)} rings, {self.vertex_count} vertices)"

    def bbox(self) -> tuple[float, float, float, float] | None:
        if not self._rings:
            return None
        a = np.concatenate(self._rings)
        lo = self.frame.to_user(a.min(axis=0))
        hi = self.frame.to_user(a.max(axis=0))
        return float(lo[0]), float(lo[1]), float(hi[0]), float(hi[1])

    def in_frame(self, frame: FixedPointFrame) -> "Region":
        if frame == self.frame:
            return self
        return Region([frame.to_int(self.frame.to_user(r)) for r in self._rings], frame)

    def normalized(self) -> "Region":
        """Canonical form: self-union, CCW outer rings and CW holes."""
        if self._normalized:
            return self
        return Region(overlay(self._rings, [], "union"), self.frame, normalized=True)

    def area(self) -> float:
        return area(self)

    def contains(self, points) -> np.ndarray:
        """Nonzero-rule membership of user points ((k, 2) array or complex)."""
        p = np.asarray(points)
        if np.iscomplexobj(p):
            p = np.stack([p.real, p.imag], axis=-1)
        p = np.asarray(p, dtype=float).reshape(-1, 2)
        w = np.zeros(p.shape[0], dtype=np.int64)
        for r in self.rings:
            w += _winding_many(r, p)
        return w != 0

    def signature(self) -> bytes:
        """Bytes identifying the integer rings (for exact comparisons)."""
        return b"|".join(r.tobytes() for r in self.normalized().int_rings)

    # -- serialization
    def to_json(self) -> dict:
        return {"rings": [r.tolist() for r in self.rings], "frame": self.frame.to_json()}

    @classmethod
    def from_json(cls, data) -> "Region":
        if isinstance(data, (str, bytes)):
            data = json.loads(data)
        try:
            frame = FixedPointFrame.from_json(data["frame"]) if "frame" in data else None
            rings = [np.asarray(r, dtype=float).reshape(-1, 2) for r in data["rings"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise DegenerateInputError(f"malformed region JSON: {exc}") from exc
        return cls.from_rings(rings, frame)


def _winding_many(ring: np.ndarray, p: np.ndarray, budget: int = 1 << 22) -> np.ndarray:
    """Winding number of a closed ring around each point (crossing rule).

    Points are sorted by y so each edge only meets the points inside its
    half-open y span; pairs are processed in blocks of about ``budget``.
    """
    a = np.asarray(ring, dtype=float)
    b = np.roll(a, -1, axis=0)
    out = np.zeros(p.shape[0], dtype=np.int64)
    if p.shape[0] == 0:
        return out
    keep = a[:, 1] != b[:, 1]
    a, b = a[keep], b[keep]
    order = np.argsort(p[:, 1], kind="stable")
    ys = p[order, 1]
    xs = p[order, 0]
    up = a[:, 1] < b[:, 1]
    start = np.searchsorted(ys, np.minimum(a[:, 1], b[:, 1]), "left")
    stop = np.searchsorted(ys, np.maximum(a[:, 1], b[:, 1]), "left")
    cnt = stop - start
    nz = np.flatnonzero(cnt)
    if nz.size == 0:
        return out
    cum = np.cumsum(cnt[nz])
    acc = np.zeros(p.shape[0], dtype=np.int64)
    lo = 0
    while lo < nz.size:
        base = cum[lo - 1] if lo else 0
        hi = max(int(np.searchsorted(cum, base + budget, "right")), lo + 1)
        e = nz[lo:hi]
        c = cnt[e]
        ee = np.repeat(e, c)
        off = np.arange(ee.size) - np.repeat(np.cumsum(c) - c, c)
        k = start[ee] + off
        ax, ay, bx, by = a[ee, 0], a[ee, 1], b[ee, 0], b[ee, 1]
        side = (bx - ax) * (ys[k] - ay) - (by - ay) * (xs[k] - ax)
        w = np.where(up[ee], side > 0, 0).astype(np.int64) - np.where(~up[ee], side < 0, 0)
        acc += np.bincount(k, weights=w, minlength=p.shape[0]).astype(np.int64)
        lo = hi
    out[order] = acc
    return out


def winding_number(ring, p) -> int:
    """Signed number of turns of the closed polyline ``ring`` around ``p``."""
    r = np.asarray(ring)
    if np.iscomplexobj(r):
        r = np.stack([r.real, r.imag], axis=-1)
    r = np.asarray(r, dtype=float).reshape(-1, 2)
    if r.shape[0] < 3:
        raise DegenerateInputError("ring needs at least 3 vertices")
    if np.iscomplexobj(p):
        p = (p.real, p.imag)
    q = np.asarray(p, dtype=float).reshape(1, 2)
    return int(_winding_many(r, q)[0])


def _common(a: Region, b: Region) -> tuple[Region, Region]:
    return a, b.in_frame(a.frame)


def intersect(a: Region, b: Region) -> Region:
    """Nonzero-rule intersection."""
    a, b = _common(a, b)
    if a.is_empty or b.is_empty:
        return Region.empty(a.frame)
    return Region(overlay(a.int_rings, b.int_rings, "intersection"), a.frame, normalized=True)


def union(a: Region, b: Region) -> Region:
    """Nonzero-rule union (each operand read with its own winding count)."""
    a, b = _common(a, b)
    return Region(overlay(a.int_rings, b.int_rings, "union"), a.frame, normalized=True)


def area(a: Region) -> float:
    """Area of the nonzero-winding set."""
    n = a.normalized()
    if n.is_empty:
        return 0.0
    rings = n.int_rings
    lens = np.array([r.shape[0] for r in rings])
    q = np.concatenate(rings)
    # shoelace relative to each ring's first vertex keeps products small
    q = q - np.repeat(q[np.cumsum(lens) - lens], lens, axis=0)
    _, nxt = ring_neighbours(lens)
    cr = q[:, 0] * q[nxt, 1] - q[nxt, 0] * q[:, 1]
    tot = float(np.sum(cr.astype(np.float64)))
    return max(tot, 0.0) * 0.5 / (n.frame.scale * n.frame.scale)


def covers(a: Region, b: Region, tol_area: float = 0.0) -> bool:
    """True iff area(b) - area(a ∩ b) <= tol_area."""
    if b.is_empty:
        return True
    return area(b) - area(intersect(a, b)) <= tol_area


def _capsule_sides(delta: float, cap: float) -> int:
    """Smallest even k >= 4 such that a k-gon with inradius delta fits in radius cap."""
    for k in range(4, 4097, 2):
        if delta / math.cos(math.pi / k) <= cap:
            return k
    raise ParameterError("cap too close to delta for a polygonal offset")


def _capsules(p0: np.ndarray, p1: np.ndarray, radius: float, k: int) -> np.ndarray:
    """Polygons circumscribing the radius-fattening of each segment p0 -> p1.

    Each capsule is the convex hull of two k-gons circumscribing disks of
    ``radius`` at the endpoints, with facets aligned with the segment; for
    k = 4 it is a rectangle extended by ``radius`` past both endpoints.
    Returns an array of shape (E, k, 2), counter-clockwise.
    """
    d = p1 - p0
    L = np.hypot(d[:, 0], d[:, 1])
    ok = L > 0
    u = np.zeros_like(d)
    u[ok] = d[ok] / L[ok, None]
    u[~ok] = (1.0, 0.0)
    th = np.arctan2(u[:, 1], u[:, 0]) + np.pi / 2  # left normal angle
    R = radius / math.cos(math.pi / k)
    j = np.arange(k // 2)
    a1 = th[:, None] - (2 * j + 1) * math.pi / k      # cap at p1, clockwise
    a0 = th[:, None] + math.pi - (2 * j + 1) * math.pi / k  # cap at p0
    c1 = p1[:, None, :] + R * np.stack([np.cos(a1), np.sin(a1)], axis=-1)
    c0 = p0[:, None, :] + R * np.stack([np.cos(a0), np.sin(a0)], axis=-1)
    poly = np.concatenate([c1, c0], axis=1)  # clockwise
    return poly[:, ::-1, :]


def fatten_segments(p0, p1, radius: float, frame: FixedPointFrame, cap: float | None = None
                    ) -> list[np.ndarray]:
    """Integer rings covering the radius-fattening of each segment.

    The rings, read with the nonzero rule, contain every point within
    ``radius`` of a segment and lie within ``cap`` of it (default
    ``radius`` times 1.01). Grid rounding is accounted for.
    """
    p0 = np.asarray(p0, dtype=float).reshape(-1, 2)
    p1 = np.asarray(p1, dtype=float).reshape(-1, 2)
    if p0.shape[0] == 0:
        return []
    if cap is None:
        cap = radius * 1.01
    u = frame.unit
    inner = radius + u           # vertex rounding can shrink the inradius by < u
    k = _capsule_sides(inner, cap - u)
    poly = _capsules(p0, p1, inner, k)
    q = frame.to_int(poly.reshape(-1, 2)).reshape(poly.shape)
    return list(q)


def offset_outward(a: Region, delta: float, cap: float | None = None) -> Region:
    """Polygon P with (a)_delta ⊆ P ⊆ (a)_cap.

    Here ``a`` is taken together with its ring curves: the fattening of
    every ring edge is included, so curves enclosing no area still get an
    offset. ``cap`` defaults to ``2 * delta``.
    """
    if cap is None:
        cap = 2.0 * delta
    if not (delta > 0) or not (cap > delta):
        raise ParameterError("offset needs 0 < delta < cap")
    if a.is_empty:
        return Region.empty(a.frame)
    fr = a.frame
    if cap - delta <= 4 * fr.unit:
        raise ParameterError("cap - delta below the grid resolution")
    p0 = np.concatenate([fr.to_user(r) for r in a.int_rings])
    p1 = np.concatenate([fr.to_user(np.roll(r, -1, axis=0)) for r in a.int_rings])
    caps = fatten_segments(p0, p1, delta, fr, cap)
    return Region(overlay(a.int_rings, caps, "union"), fr, normalized=True)


def _ngons(pts: np.ndarray, radius: float, sides: int, frame: FixedPointFrame) -> list[np.ndarray]:
    R = radius / math.cos(math.pi / sides) + frame.unit
    ang = (2 * np.arange(sides) + 1) * math.pi / sides
    off = R * np.stack([np.cos(ang), np.sin(ang)], axis=-1)
    poly = pts[:, None, :] + off[None, :, :]
    q = frame.to_int(poly.reshape(-1, 2)).reshape(poly.shape)
    return list(q)


def _zorder(p: np.ndarray) -> np.ndarray:
    """Permutation sorting points along a Z-order curve."""
    q = p - p.min(axis=0)
    s = float(q.max()) or 1.0
    g = np.minimum((q / s * 65535).astype(np.int64), 65535)

    def spread(v):
        v = (v | (v << 8)) & 0x00FF00FF
        v = (v | (v << 4)) & 0x0F0F0F0F
        v = (v | (v << 2)) & 0x33333333
        return (v | (v << 1)) & 0x55555555

    return np.argsort(spread(g[:, 0]) | (spread(g[:, 1]) << 1), kind="stable")


def _cascaded_union(rings: list, leaf: int = 32) -> list:
    """Union of many small rings, merged pairwise from spatially coherent chunks.

    Boundaries shrink at every level, so interior crossings between heavily
    overlapping rings are never formed all at once.
    """
    parts = [overlay(rings[i:i + leaf], [], "union") for i in range(0, len(rings), leaf)]
    while len(parts) > 1:
        parts = [overlay(parts[i], parts[i + 1], "union") if i + 1 < len(parts) else parts[i]
                 for i in range(0, len(parts), 2)]
    return parts[0] if parts else []


def _as_points(pts) -> np.ndarray:
    p = np.asarray(pts)
    if np.iscomplexobj(p):
        p = np.stack([p.real, p.imag], axis=-1)
    return np.asarray(p, dtype=float).reshape(-1, 2)


def fatten_points(pts, radius: float, sides: int = 20, frame: FixedPointFrame | None = None
                  ) -> Region:
    """Union of regular ``sides``-gons circumscribing radius-``radius`` disks.

    Vertices sit at distance radius / cos(pi / sides) from each point (plus
    one grid unit against rounding).
    """
    if sides < 3:
        raise ParameterError("sides must be >= 3")
    if not radius > 0:
        raise ParameterError("radius must be positive")
    frame = frame if frame is not None else FixedPointFrame()
    p = _as_points(pts)
    if p.shape[0] == 0:
        return Region.empty(frame)
    p = p[_zorder(p)]
    return Region(_cascaded_union(_ngons(p, radius, sides, frame)), frame, normalized=True)


def fattened_intersection(pts, radius: float, sides: int, other: Region) -> Region:
    """fatten_points(pts, radius, sides) ∩ other, in the frame of other."""
    p = _as_points(pts)
    if p.shape[0] == 0 or other.is_empty:
        return Region.empty(other.frame)
    x0, y0, x1, y1 = other.bbox()
    R = radius / math.cos(math.pi / sides) + 2 * other.frame.unit
    near = (p[:, 0] > x0 - R) & (p[:, 0] < x1 + R) & (p[:, 1] > y0 - R) & (p[:, 1] < y1 + R)
    p = p[near]
    if p.shape[0] == 0:
        return Region.empty(other.frame)
    p = p[_zorder(p)]
    rings = _cascaded_union(_ngons(p, radius, sides, other.frame))
    return Region(overlay(rings, other.int_rings, "intersection"), other.frame, normalized=True)
