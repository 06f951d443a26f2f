"""Boolean overlay of integer polygon sets under the nonzero fill rule.

The pipeline is: collect edges of both operands with signed multiplicities,
split them until the edge graph is planar, merge coincident edges, then
trace the result boundary (kernels in ``_clipcore``). Splitting uses snap
rounding on the integer grid so that rounded intersection points cannot
start an endless cascade of new crossings.
"""
from __future__ import annotations

import logging
from typing import Sequence

import numpy as np

from ..errors import FrameError
from ._clipcore_py import OP_DIFFERENCE, OP_INTERSECTION, OP_UNION, OP_XOR, STATUS_OK

log = logging.getLogger(__name__)

COORD_LIMIT = 1 << 29
MAX_PASSES = 16
_OFF = np.int64(COORD_LIMIT)
_SHIFT = np.int64(1 << 30)

OPS = {"intersection": OP_INTERSECTION, "union": OP_UNION,
       "difference": OP_DIFFERENCE, "xor": OP_XOR}


def _ring_edges(rings: Sequence[np.ndarray]):
    """Directed edges (x0, y0, x1, y1) of a list of closed rings."""
    pts = [np.asarray(r, dtype=np.int64).reshape(-1, 2) for r in rings]
    pts = [p for p in pts if p.shape[0] >= 2]
    if not pts:
        z = np.empty(0, dtype=np.int64)
        return z, z, z, z
    a = np.concatenate(pts)
    lens = np.array([p.shape[0] for p in pts])
    nxt = np.arange(1, a.shape[0] + 1)
    ends = np.cumsum(lens)
    nxt[ends - 1] = ends - lens
    b = a[nxt]
    return a[:, 0], a[:, 1], b[:, 0], b[:, 1]


def _check_range(*arrays):
    for a in arrays:
        if a.size and (a.min() <= -COORD_LIMIT or a.max() >= COORD_LIMIT):
            raise FrameError("integer coordinate outside the supported range |c| < 2**29")


def _merge(x0, y0, x1, y1, ca, cb, dirty):
    """Identify coincident vertices and edges, summing multiplicities.

    Returns vertex coordinates (lexicographically sorted), canonical edges
    (u < v), their summed multiplicities and dirty flags. Edges whose
    multiplicities cancel are dropped.
    """
    keys = np.concatenate([(x0 + _OFF) * _SHIFT + (y0 + _OFF), (x1 + _OFF) * _SHIFT + (y1 + _OFF)])
    uk, inv = np.unique(keys, return_inverse=True)
    n = x0.size
    a, b = inv[:n], inv[n:]
    keep = a != b
    a, b, ca, cb, dirty = a[keep], b[keep], ca[keep], cb[keep], dirty[keep]
    flip = a > b
    u = np.where(flip, b, a)
    v = np.where(flip, a, b)
    sa = np.where(flip, -ca, ca)
    sb = np.where(flip, -cb, cb)
    V = np.int64(uk.size)
    ek, einv = np.unique(u * V + v, return_inverse=True)
    m = ek.size
    sa = np.bincount(einv, weights=sa, minlength=m).astype(np.int64) if m else sa[:0]
    sb = np.bincount(einv, weights=sb, minlength=m).astype(np.int64) if m else sb[:0]
    dd = np.bincount(einv, weights=dirty.astype(np.float64), minlength=m) > 0 if m else dirty[:0]
    eu, ev = ek // V, ek % V
    nz = (sa != 0) | (sb != 0)
    vx = uk // _SHIFT - _OFF
    vy = uk % _SHIFT - _OFF
    return vx, vy, eu[nz], ev[nz], sa[nz], sb[nz], dd[nz]


def _subdivide(x0, y0, x1, y1, ca, cb, se, sx, sy):
    """Cut segments at split points, ordered along each segment.

    Returns the new segment list and a flag marking pieces of cut segments.
    """
    n = x0.size
    split = np.zeros(n, dtype=bool)
    split[se] = True
    cut = np.nonzero(split)[0]
    keep = ~split
    ids = np.concatenate([cut, cut, se])
    px = np.concatenate([x0[cut], x1[cut], sx])
    py = np.concatenate([y0[cut], y1[cut], sy])
    dx, dy = (x1 - x0)[ids], (y1 - y0)[ids]
    L2 = dx * dx + dy * dy
    t = (px - x0[ids]) * dx + (py - y0[ids]) * dy
    # endpoints first/last; rounded split points kept strictly inside
    t = np.clip(t, 0, L2)
    k = cut.size
    t[:k] = -1
    t[k:2 * k] = L2[k:2 * k] + 1
    order = np.lexsort((py, px, t, ids))
    ids, px, py = ids[order], px[order], py[order]
    i0 = np.nonzero(ids[1:] == ids[:-1])[0]
    i1 = i0 + 1
    src = ids[i0]
    m = int(keep.sum())
    return (np.concatenate([x0[keep], px[i0]]), np.concatenate([y0[keep], py[i0]]),
            np.concatenate([x1[keep], px[i1]]), np.concatenate([y1[keep], py[i1]]),
            np.concatenate([ca[keep], ca[src]]), np.concatenate([cb[keep], cb[src]]),
            np.concatenate([np.zeros(m, dtype=bool), np.ones(src.size, dtype=bool)]))


def overlay(a_rings: Sequence[np.ndarray], b_rings: Sequence[np.ndarray], op: str,
            kernels=None) -> list[np.ndarray]:
    """Boolean ``op`` of two integer ring sets, each read with the nonzero rule.

    Returns canonical rings: counter-clockwise outer boundaries and clockwise
    holes, each starting at its lexicographically smallest vertex, sorted.
    """
    if kernels is None:
        from ._backend import kernels
    code = OPS[op]
    ax0, ay0, ax1, ay1 = _ring_edges(a_rings)
    bx0, by0, bx1, by1 = _ring_edges(b_rings)
    x0 = np.concatenate([ax0, bx0]); y0 = np.concatenate([ay0, by0])
    x1 = np.concatenate([ax1, bx1]); y1 = np.concatenate([ay1, by1])
    _check_range(x0, y0)
    na, nb = ax0.size, bx0.size
    ca = np.concatenate([np.ones(na, np.int64), np.zeros(nb, np.int64)])
    cb = np.concatenate([np.zeros(na, np.int64), np.ones(nb, np.int64)])
    dirty = np.ones(na + nb, dtype=bool)
    status = STATUS_OK
    for _ in range(MAX_PASSES):
        vx, vy, eu, ev, ca, cb, dirty = _merge(x0, y0, x1, y1, ca, cb, dirty)
        if eu.size == 0:
            return []
        x0, y0, x1, y1 = vx[eu], vy[eu], vx[ev], vy[ev]
        se, sx, sy = kernels.find_splits(x0, y0, x1, y1, dirty)
        if se.size == 0:
            break
        # snap rounding: every segment meeting the pixel of a new split point,
        # and every dirty segment meeting the pixel of a vertex, is routed
        # through that pixel's centre
        hot = np.unique((sx + _OFF) * _SHIFT + (sy + _OFF))
        h1 = kernels.snap_hits(x0, y0, x1, y1, np.ones(x0.size, dtype=bool),
                               hot // _SHIFT - _OFF, hot % _SHIFT - _OFF)
        h2 = kernels.snap_hits(x0, y0, x1, y1, dirty, vx, vy)
        se = np.concatenate([se, h1[0], h2[0]])
        sx = np.concatenate([sx, h1[1], h2[1]])
        sy = np.concatenate([sy, h1[2], h2[2]])
        x0, y0, x1, y1, ca, cb, dirty = _subdivide(x0, y0, x1, y1, ca, cb, se, sx, sy)
    else:
        log.warning("overlay: edge graph still not planar after %d passes", MAX_PASSES)
    off, verts, status = kernels.build_rings(vx, vy, eu, ev, ca, cb, code)
    if status != STATUS_OK:
        log.warning("overlay: inconsistent winding numbers in arrangement")
    return _canonical_rings(vx[verts], vy[verts], off)


def ring_neighbours(lens: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Previous and next vertex indices for rings stored back to back."""
    n = int(lens.sum())
    ends = np.cumsum(lens)
    starts = ends - lens
    prv = np.arange(-1, n - 1)
    nxt = np.arange(1, n + 1)
    prv[starts] = ends - 1
    nxt[ends - 1] = starts
    return prv, nxt


def _canonical_rings(x, y, off) -> list[np.ndarray]:
    """Remove collinear vertices, rotate to the smallest vertex, sort rings."""
    rid = np.repeat(np.arange(off.size - 1), np.diff(off))
    nr = off.size - 1
    while True:
        lens = np.bincount(rid, minlength=nr)
        live = lens[rid] >= 3
        if not live.all():
            x, y, rid = x[live], y[live], rid[live]
            lens = np.bincount(rid, minlength=nr)
        if rid.size == 0:
            return []
        prv, nxt = ring_neighbours(lens[lens > 0])
        ux, uy = x - x[prv], y - y[prv]
        wx, wy = x[nxt] - x, y[nxt] - y
        drop = (ux * wy - uy * wx == 0) & (ux * wx + uy * wy > 0)
        if not drop.any():
            break
        x, y, rid = x[~drop], y[~drop], rid[~drop]
    lens = lens[lens > 0]
    starts = np.cumsum(lens) - lens
    # first lexicographically smallest vertex of each ring
    order = np.lexsort((y, x, rid))
    first = order[starts]
    shift = np.repeat(first - starts, lens)
    base = np.repeat(starts, lens)
    L = np.repeat(lens, lens)
    src = base + (np.arange(x.size) - base + shift) % L
    pts = np.stack([x[src], y[src]], axis=1)
    x0, y0 = pts[starts, 0], pts[starts, 1]
    rings = np.split(pts, starts[1:])
    ro = np.lexsort((lens, y0, x0))
    k = np.stack([x0[ro], y0[ro], lens[ro]], axis=1)
    if np.any(np.all(k[1:] == k[:-1], axis=1)):
        # equal start and length: fall back to comparing the full rings
        rings.sort(key=lambda r: (int(r[0, 0]), int(r[0, 1]), r.shape[0], r.tobytes()))
        return rings
    return [rings[j] for j in ro]
