"""Pure-Python overlay kernels.

This module mirrors ``_clipcore.pyx`` operation for operation so that both
backends produce identical output. All coordinates are integers with
absolute value below 2**29, which keeps every orientation determinant
below 2**62.
"""
from __future__ import annotations

import math
from functools import cmp_to_key

import numpy as np

OP_INTERSECTION = 0
OP_UNION = 1
OP_DIFFERENCE = 2
OP_XOR = 3

STATUS_OK = 0
STATUS_INCONSISTENT = 1


def find_splits(x0, y0, x1, y1, dirty):
    """Points where segments must be split to make the arrangement planar.

    Only pairs with at least one dirty segment are examined. Returns arrays
    (segment index, x, y); proper crossings are rounded to the nearest
    integer point, touching and overlapping configurations split at the
    endpoint lying inside the other segment.
    """
    X0, Y0, X1, Y1 = x0.tolist(), y0.tolist(), x1.tolist(), y1.tolist()
    D = dirty.tolist()
    n = len(X0)
    xmin = [min(X0[i], X1[i]) for i in range(n)]
    xmax = [max(X0[i], X1[i]) for i in range(n)]
    ymin = [min(Y0[i], Y1[i]) for i in range(n)]
    ymax = [max(Y0[i], Y1[i]) for i in range(n)]
    order = sorted(range(n), key=lambda i: (xmin[i], i))
    out_e: list[int] = []
    out_x: list[int] = []
    out_y: list[int] = []
    active: list[int] = []
    for i in order:
        xi = xmin[i]
        active = [j for j in active if xmax[j] >= xi]
        lo, hi, di = ymin[i], ymax[i], D[i]
        for j in active:
            if ymax[j] < lo or ymin[j] > hi:
                continue
            if not (di or D[j]):
                continue
            if i < j:
                _pair(i, j, X0, Y0, X1, Y1, out_e, out_x, out_y)
            else:
                _pair(j, i, X0, Y0, X1, Y1, out_e, out_x, out_y)
        active.append(i)
    return (np.array(out_e, dtype=np.int64), np.array(out_x, dtype=np.int64),
            np.array(out_y, dtype=np.int64))


def _side(dx, dy, px, py, x, y, ex, ey):
    # sign of the corner (x + ex*eps, y + ey*eps) relative to the line p + t d
    s = dx * (y - py) - dy * (x - px)
    if s == 0:
        s = dx * ey - dy * ex
    return (s > 0) - (s < 0)


def _meets_pixel(px, py, qx, qy, cx, cy):
    """Does segment p-q meet the half-open pixel of (cx, cy)?

    Doubled coordinates keep the pixel corners integral; the open top and
    right sides are pulled in by an infinitesimal, resolved symbolically.
    The caller guarantees the x and y ranges overlap the pixel.
    """
    px, py, qx, qy = 2 * px, 2 * py, 2 * qx, 2 * qy
    lx, hx, ly, hy = 2 * cx - 1, 2 * cx + 1, 2 * cy - 1, 2 * cy + 1
    dx, dy = qx - px, qy - py
    s = (_side(dx, dy, px, py, lx, ly, 0, 0), _side(dx, dy, px, py, hx, ly, -1, 0),
         _side(dx, dy, px, py, lx, hy, 0, -1), _side(dx, dy, px, py, hx, hy, -1, -1))
    return not (min(s) > 0 or max(s) < 0)


def snap_hits(x0, y0, x1, y1, mask, hx, hy):
    """Hot pixels met by segments.

    A hot pixel is the half-open unit square [hx - 1/2, hx + 1/2) x
    [hy - 1/2, hy + 1/2), matching round-half-up of crossing points. Only segments with ``mask`` set are examined; a segment's own
    endpoints are skipped. Returns (segment index, hx, hy) for every hit.
    """
    X0, Y0, X1, Y1 = x0.tolist(), y0.tolist(), x1.tolist(), y1.tolist()
    M = mask.tolist()
    HX, HY = hx.tolist(), hy.tolist()
    segs = sorted((min(X0[i], X1[i]), i) for i in range(len(X0)) if M[i])
    hots = sorted(range(len(HX)), key=lambda k: (HX[k], HY[k]))
    out_e: list[int] = []
    out_x: list[int] = []
    out_y: list[int] = []
    active: list[int] = []
    s = 0
    for k in hots:
        cx, cy = HX[k], HY[k]
        while s < len(segs) and segs[s][0] <= cx:
            active.append(segs[s][1])
            s += 1
        active = [i for i in active if max(X0[i], X1[i]) >= cx]
        for i in active:
            px, py, qx, qy = X0[i], Y0[i], X1[i], Y1[i]
            if cy < min(py, qy) or cy > max(py, qy):
                continue
            if (cx == px and cy == py) or (cx == qx and cy == qy):
                continue
            if _meets_pixel(px, py, qx, qy, cx, cy):
                out_e.append(i); out_x.append(cx); out_y.append(cy)
    return (np.array(out_e, dtype=np.int64), np.array(out_x, dtype=np.int64),
            np.array(out_y, dtype=np.int64))


def _inside(qx, qy, px, py, dx, dy):
    # q collinear with p -> p + d; strictly between the endpoints?
    t = (qx - px) * dx + (qy - py) * dy
    return 0 < t < dx * dx + dy * dy


def _pair(i, j, X0, Y0, X1, Y1, out_e, out_x, out_y):
    px, py, qx, qy = X0[i], Y0[i], X0[j], Y0[j]
    dx, dy = X1[i] - px, Y1[i] - py
    ex, ey = X1[j] - qx, Y1[j] - qy
    o1 = dx * (qy - py) - dy * (qx - px)
    o2 = dx * (Y1[j] - py) - dy * (X1[j] - px)
    if (o1 > 0 and o2 > 0) or (o1 < 0 and o2 < 0):
        return
    o3 = ex * (py - qy) - ey * (px - qx)
    o4 = ex * (Y1[i] - qy) - ey * (X1[i] - qx)
    if (o3 > 0 and o4 > 0) or (o3 < 0 and o4 < 0):
        return
    if o1 != 0 and o2 != 0 and o3 != 0 and o4 != 0:
        t = float(o3) / float(o3 - o4)
        x = math.floor(float(px) + t * float(dx) + 0.5)
        y = math.floor(float(py) + t * float(dy) + 0.5)
        out_e.append(i); out_x.append(x); out_y.append(y)
        out_e.append(j); out_x.append(x); out_y.append(y)
        return
    if o1 == 0 and _inside(qx, qy, px, py, dx, dy):
        out_e.append(i); out_x.append(qx); out_y.append(qy)
    if o2 == 0 and _inside(X1[j], Y1[j], px, py, dx, dy):
        out_e.append(i); out_x.append(X1[j]); out_y.append(Y1[j])
    if o3 == 0 and _inside(px, py, qx, qy, ex, ey):
        out_e.append(j); out_x.append(px); out_y.append(py)
    if o4 == 0 and _inside(X1[i], Y1[i], qx, qy, ex, ey):
        out_e.append(j); out_x.append(X1[i]); out_y.append(Y1[i])


def _angle_cmp(a, b):
    # a, b: (dx, dy, h). Counter-clockwise order starting at angle 0.
    ua = 0 if (a[1] > 0 or (a[1] == 0 and a[0] > 0)) else 1
    ub = 0 if (b[1] > 0 or (b[1] == 0 and b[0] > 0)) else 1
    if ua != ub:
        return ua - ub
    cr = a[0] * b[1] - a[1] * b[0]
    if cr > 0:
        return -1
    if cr < 0:
        return 1
    return a[2] - b[2]


def build_rings(vx, vy, eu, ev, ca, cb, op):
    """Trace the boundary of the boolean combination of a planar edge graph.

    ``eu < ev`` index vertices; ``ca``/``cb`` hold the signed multiplicity
    with which operands A and B traverse each edge in direction eu -> ev.
    Returns (ring offsets, flat vertex ids, status).
    """
    VX, VY = vx.tolist(), vy.tolist()
    EU, EV = eu.tolist(), ev.tolist()
    CA, CB = ca.tolist(), cb.tolist()
    V, E = len(VX), len(EU)
    H = 2 * E
    status = STATUS_OK
    orig = [0] * H
    for e in range(E):
        orig[2 * e] = EU[e]
        orig[2 * e + 1] = EV[e]

    # outgoing half-edges per vertex, sorted counter-clockwise
    start = [0] * (V + 1)
    for h in range(H):
        start[orig[h] + 1] += 1
    for v in range(V):
        start[v + 1] += start[v]
    fill = start[:V]
    fill = list(fill)
    out = [0] * H
    for h in range(H):
        o = orig[h]
        out[fill[o]] = h
        fill[o] += 1
    pos = [0] * H
    key = cmp_to_key(_angle_cmp)
    for v in range(V):
        s, t = start[v], start[v + 1]
        items = []
        for k in range(s, t):
            h = out[k]
            d = orig[h ^ 1]
            items.append((VX[d] - VX[v], VY[d] - VY[v], h))
        items.sort(key=key)
        for k in range(len(items) - 1):
            a, b = items[k], items[k + 1]
            if a[0] * b[1] - a[1] * b[0] == 0 and a[0] * b[0] + a[1] * b[1] > 0:
                status = STATUS_INCONSISTENT
        for k, it in enumerate(items):
            out[s + k] = it[2]
            pos[it[2]] = s + k

    def prev_ccw(h):
        v = orig[h]
        k = pos[h] - 1
        if k < start[v]:
            k = start[v + 1] - 1
        return out[k]

    # faces
    face = [-1] * H
    nf = 0
    for h0 in range(H):
        if face[h0] >= 0:
            continue
        h = h0
        while True:
            face[h] = nf
            h = prev_ccw(h ^ 1)
            if h == h0:
                break
        nf += 1

    # connected components, rooted at their smallest vertex
    comp = [-1] * V
    roots: list[int] = []
    for v0 in range(V):
        if comp[v0] >= 0 or start[v0] == start[v0 + 1]:
            continue
        c = len(roots)
        roots.append(v0)
        comp[v0] = c
        stack = [v0]
        while stack:
            v = stack.pop()
            for k in range(start[v], start[v + 1]):
                w = orig[out[k] ^ 1]
                if comp[w] < 0:
                    comp[w] = c
                    stack.append(w)

    # winding numbers of each component's outer face
    nc = len(roots)
    outer_wa = [0] * nc
    outer_wb = [0] * nc
    if nc > 1:
        _outer_windings(VX, VY, EU, EV, CA, CB, roots, outer_wa, outer_wb)

    # propagate windings across edges
    fstart = [0] * (nf + 1)
    for h in range(H):
        fstart[face[h] + 1] += 1
    for f in range(nf):
        fstart[f + 1] += fstart[f]
    ffill = list(fstart[:nf])
    fh = [0] * H
    for h in range(H):
        f = face[h]
        fh[ffill[f]] = h
        ffill[f] += 1
    wa = [0] * nf
    wb = [0] * nf
    seen = [False] * nf
    for c in range(nc):
        v = roots[c]
        s, t = start[v], start[v + 1]
        k = s
        while k < t:
            h = out[k]
            d = orig[h ^ 1]
            dy = VY[d] - VY[v]
            dx = VX[d] - VX[v]
            if not (dy > 0 or (dy == 0 and dx > 0)):
                break
            k += 1
        f0 = face[out[k - 1]] if k > s else face[out[t - 1]]
        wa[f0] = outer_wa[c]
        wb[f0] = outer_wb[c]
        seen[f0] = True
        queue = [f0]
        qi = 0
        while qi < len(queue):
            f = queue[qi]
            qi += 1
            for k in range(fstart[f], fstart[f + 1]):
                h = fh[k]
                e = h >> 1
                sa = CA[e] if (h & 1) == 0 else -CA[e]
                sb = CB[e] if (h & 1) == 0 else -CB[e]
                g = face[h ^ 1]
                na, nb = wa[f] - sa, wb[f] - sb
                if not seen[g]:
                    seen[g] = True
                    wa[g], wb[g] = na, nb
                    queue.append(g)
                elif wa[g] != na or wb[g] != nb:
                    status = STATUS_INCONSISTENT

    res = [False] * nf
    for f in range(nf):
        ia, ib = wa[f] != 0, wb[f] != 0
        if op == OP_INTERSECTION:
            res[f] = ia and ib
        elif op == OP_UNION:
            res[f] = ia or ib
        elif op == OP_DIFFERENCE:
            res[f] = ia and not ib
        else:
            res[f] = ia != ib

    # boundary rings, result region on the left
    used = [False] * H
    offsets = [0]
    verts: list[int] = []
    for h0 in range(H):
        if used[h0] or not res[face[h0]] or res[face[h0 ^ 1]]:
            continue
        h = h0
        while True:
            used[h] = True
            verts.append(orig[h])
            g = prev_ccw(h ^ 1)
            while res[face[g ^ 1]]:
                g = prev_ccw(g)
            h = g
            if h == h0:
                break
            if used[h]:
                status = STATUS_INCONSISTENT
                break
        offsets.append(len(verts))
    return (np.array(offsets, dtype=np.int64), np.array(verts, dtype=np.int64), status)


def _outer_windings(VX, VY, EU, EV, CA, CB, roots, outer_wa, outer_wb):
    """Winding numbers at each root vertex via a leftward horizontal ray.

    Edges are bucketed by y so each query only visits edges spanning its row.
    """
    E = len(EU)
    ylo = min(VY)
    yhi = max(VY)
    nb = max(1, min(E, 1 << 14))
    hb = (yhi - ylo) // nb + 1
    buckets: list[list[int]] = [[] for _ in range(nb)]
    for e in range(E):
        a, b = VY[EU[e]], VY[EV[e]]
        if a == b:
            continue
        lo, hi = (a, b) if a < b else (b, a)
        for k in range((lo - ylo) // hb, (hi - 1 - ylo) // hb + 1):
            buckets[k].append(e)
    for c, v in enumerate(roots):
        px, py = VX[v], VY[v]
        wa = wb = 0
        for e in buckets[(py - ylo) // hb]:
            u, w = EU[e], EV[e]
            ax, ay, bx, by = VX[u], VY[u], VX[w], VY[w]
            if ay <= py < by:
                if (bx - ax) * (py - ay) - (by - ay) * (px - ax) < 0:
                    wa -= CA[e]
                    wb -= CB[e]
            elif by <= py < ay:
                if (bx - ax) * (py - ay) - (by - ay) * (px - ax) > 0:
                    wa += CA[e]
                    wb += CB[e]
        outer_wa[c] = wa
        outer_wb[c] = wb
