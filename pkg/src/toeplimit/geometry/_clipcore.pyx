# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Compiled overlay kernels; see ``_clipcore_py`` for the reference version."""
import numpy as np
cimport numpy as cnp
from libc.math cimport floor
from libcpp.vector cimport vector
from libcpp.algorithm cimport sort as cpp_sort
from libcpp.utility cimport pair

cnp.import_array()

ctypedef long long i64

OP_INTERSECTION = 0
OP_UNION = 1
OP_DIFFERENCE = 2
OP_XOR = 3
STATUS_OK = 0
STATUS_INCONSISTENT = 1


cdef inline bint _inside(i64 qx, i64 qy, i64 px, i64 py, i64 dx, i64 dy) noexcept nogil:
    cdef i64 t = (qx - px) * dx + (qy - py) * dy
    return 0 < t and t < dx * dx + dy * dy


cdef inline void _emit(vector[i64]& oe, vector[i64]& ox, vector[i64]& oy,
                       i64 e, i64 x, i64 y) noexcept nogil:
    oe.push_back(e)
    ox.push_back(x)
    oy.push_back(y)


cdef void _pair(i64 i, i64 j, const i64* X0, const i64* Y0, const i64* X1, const i64* Y1,
                vector[i64]& oe, vector[i64]& ox, vector[i64]& oy) noexcept nogil:
    cdef i64 px = X0[i], py = Y0[i], qx = X0[j], qy = Y0[j]
    cdef i64 dx = X1[i] - px, dy = Y1[i] - py
    cdef i64 ex = X1[j] - qx, ey = Y1[j] - qy
    cdef i64 o1 = dx * (qy - py) - dy * (qx - px)
    cdef i64 o2 = dx * (Y1[j] - py) - dy * (X1[j] - px)
    cdef i64 o3, o4, x, y
    cdef double t
    if (o1 > 0 and o2 > 0) or (o1 < 0 and o2 < 0):
        return
    o3 = ex * (py - qy) - ey * (px - qx)
    o4 = ex * (Y1[i] - qy) - ey * (X1[i] - qx)
    if (o3 > 0 and o4 > 0) or (o3 < 0 and o4 < 0):
        return
    if o1 != 0 and o2 != 0 and o3 != 0 and o4 != 0:
        t = (<double>o3) / (<double>(o3 - o4))
        x = <i64>floor(<double>px + t * <double>dx + 0.5)
        y = <i64>floor(<double>py + t * <double>dy + 0.5)
        _emit(oe, ox, oy, i, x, y)
        _emit(oe, ox, oy, j, x, y)
        return
    if o1 == 0 and _inside(qx, qy, px, py, dx, dy):
        _emit(oe, ox, oy, i, qx, qy)
    if o2 == 0 and _inside(X1[j], Y1[j], px, py, dx, dy):
        _emit(oe, ox, oy, i, X1[j], Y1[j])
    if o3 == 0 and _inside(px, py, qx, qy, ex, ey):
        _emit(oe, ox, oy, j, px, py)
    if o4 == 0 and _inside(X1[i], Y1[i], qx, qy, ex, ey):
        _emit(oe, ox, oy, j, X1[i], Y1[i])


def find_splits(x0, y0, x1, y1, dirty):
    cdef cnp.ndarray[i64, ndim=1, mode="c"] ax0 = np.ascontiguousarray(x0, dtype=np.int64)
    cdef cnp.ndarray[i64, ndim=1, mode="c"] ay0 = np.ascontiguousarray(y0, dtype=np.int64)
    cdef cnp.ndarray[i64, ndim=1, mode="c"] ax1 = np.ascontiguousarray(x1, dtype=np.int64)
    cdef cnp.ndarray[i64, ndim=1, mode="c"] ay1 = np.ascontiguousarray(y1, dtype=np.int64)
    cdef cnp.ndarray[cnp.uint8_t, ndim=1, mode="c"] dd = np.ascontiguousarray(dirty, dtype=np.uint8)
    cdef Py_ssize_t n = ax0.shape[0]
    cdef const i64* X0 = &ax0[0] if n else NULL
    cdef const i64* Y0 = &ay0[0] if n else NULL
    cdef const i64* X1 = &ax1[0] if n else NULL
    cdef const i64* Y1 = &ay1[0] if n else NULL
    cdef const cnp.uint8_t* D = &dd[0] if n else NULL
    cdef vector[i64] xmin, xmax, ymin, ymax
    cdef vector[pair[i64, i64]] keyed
    cdef vector[i64] active
    cdef vector[i64] oe, ox, oy
    cdef Py_ssize_t k, a, w
    cdef i64 i, j, xi, lo, hi
    cdef bint di
    with nogil:
        xmin.resize(n); xmax.resize(n); ymin.resize(n); ymax.resize(n)
        keyed.resize(n)
        for k in range(n):
            xmin[k] = X0[k] if X0[k] < X1[k] else X1[k]
            xmax[k] = X1[k] if X0[k] < X1[k] else X0[k]
            ymin[k] = Y0[k] if Y0[k] < Y1[k] else Y1[k]
            ymax[k] = Y1[k] if Y0[k] < Y1[k] else Y0[k]
            keyed[k] = pair[i64, i64](xmin[k], k)
        cpp_sort(keyed.begin(), keyed.end())
        for k in range(n):
            i = keyed[k].second
            xi = xmin[i]
            w = 0
            for a in range(<Py_ssize_t>active.size()):
                if xmax[active[a]] >= xi:
                    active[w] = active[a]
                    w += 1
            active.resize(w)
            lo = ymin[i]
            hi = ymax[i]
            di = D[i] != 0
            for a in range(w):
                j = active[a]
                if ymax[j] < lo or ymin[j] > hi:
                    continue
                if not (di or D[j] != 0):
                    continue
                if i < j:
                    _pair(i, j, X0, Y0, X1, Y1, oe, ox, oy)
                else:
                    _pair(j, i, X0, Y0, X1, Y1, oe, ox, oy)
            active.push_back(i)
    m = oe.size()
    re = np.empty(m, dtype=np.int64)
    rx = np.empty(m, dtype=np.int64)
    ry = np.empty(m, dtype=np.int64)
    cdef i64[::1] vre = re, vrx = rx, vry = ry
    for k in range(<Py_ssize_t>m):
        vre[k] = oe[k]
        vrx[k] = ox[k]
        vry[k] = oy[k]
    return re, rx, ry


cdef inline int _side(i64 dx, i64 dy, i64 px, i64 py, i64 x, i64 y,
                      i64 ex, i64 ey) noexcept nogil:
    cdef i64 s = dx * (y - py) - dy * (x - px)
    if s == 0:
        s = dx * ey - dy * ex
    return (s > 0) - (s < 0)


cdef inline bint _meets_pixel(i64 px, i64 py, i64 qx, i64 qy, i64 cx, i64 cy) noexcept nogil:
    # half-open pixel in doubled coordinates, open sides pulled in symbolically
    cdef i64 lx = 2 * cx - 1, hx = 2 * cx + 1, ly = 2 * cy - 1, hy = 2 * cy + 1
    cdef i64 dx = 2 * (qx - px), dy = 2 * (qy - py)
    px = 2 * px
    py = 2 * py
    cdef int s0 = _side(dx, dy, px, py, lx, ly, 0, 0)
    cdef int s1 = _side(dx, dy, px, py, hx, ly, -1, 0)
    cdef int s2 = _side(dx, dy, px, py, lx, hy, 0, -1)
    cdef int s3 = _side(dx, dy, px, py, hx, hy, -1, -1)
    if s0 > 0 and s1 > 0 and s2 > 0 and s3 > 0:
        return False
    if s0 < 0 and s1 < 0 and s2 < 0 and s3 < 0:
        return False
    return True


def snap_hits(x0, y0, x1, y1, mask, hx, hy):
    cdef cnp.ndarray[i64, ndim=1, mode="c"] ax0 = np.ascontiguousarray(x0, dtype=np.int64)
    cdef cnp.ndarray[i64, ndim=1, mode="c"] ay0 = np.ascontiguousarray(y0, dtype=np.int64)
    cdef cnp.ndarray[i64, ndim=1, mode="c"] ax1 = np.ascontiguousarray(x1, dtype=np.int64)
    cdef cnp.ndarray[i64, ndim=1, mode="c"] ay1 = np.ascontiguousarray(y1, dtype=np.int64)
    cdef cnp.ndarray[cnp.uint8_t, ndim=1, mode="c"] mm = np.ascontiguousarray(mask, dtype=np.uint8)
    cdef cnp.ndarray[i64, ndim=1, mode="c"] ahx = np.ascontiguousarray(hx, dtype=np.int64)
    cdef cnp.ndarray[i64, ndim=1, mode="c"] ahy = np.ascontiguousarray(hy, dtype=np.int64)
    cdef Py_ssize_t n = ax0.shape[0], nh = ahx.shape[0]
    cdef const i64* X0 = &ax0[0] if n else NULL
    cdef const i64* Y0 = &ay0[0] if n else NULL
    cdef const i64* X1 = &ax1[0] if n else NULL
    cdef const i64* Y1 = &ay1[0] if n else NULL
    cdef const cnp.uint8_t* M = &mm[0] if n else NULL
    cdef const i64* HX = &ahx[0] if nh else NULL
    cdef const i64* HY = &ahy[0] if nh else NULL
    cdef vector[pair[i64, i64]] segs
    cdef vector[pair[pair[i64, i64], i64]] hots
    cdef vector[i64] active, oe, ox, oy
    cdef Py_ssize_t k, a, w, s = 0
    cdef i64 i, cx, cy, px, py, qx, qy
    with nogil:
        for k in range(n):
            if M[k]:
                segs.push_back(pair[i64, i64](X0[k] if X0[k] < X1[k] else X1[k], k))
        cpp_sort(segs.begin(), segs.end())
        hots.resize(nh)
        for k in range(nh):
            hots[k] = pair[pair[i64, i64], i64](pair[i64, i64](HX[k], HY[k]), k)
        cpp_sort(hots.begin(), hots.end())
        for k in range(nh):
            cx = hots[k].first.first
            cy = hots[k].first.second
            while s < <Py_ssize_t>segs.size() and segs[s].first <= cx:
                active.push_back(segs[s].second)
                s += 1
            w = 0
            for a in range(<Py_ssize_t>active.size()):
                i = active[a]
                if (X1[i] if X0[i] < X1[i] else X0[i]) >= cx:
                    active[w] = i
                    w += 1
            active.resize(w)
            for a in range(w):
                i = active[a]
                px = X0[i]; py = Y0[i]; qx = X1[i]; qy = Y1[i]
                if cy < (py if py < qy else qy) or cy > (qy if py < qy else py):
                    continue
                if (cx == px and cy == py) or (cx == qx and cy == qy):
                    continue
                if _meets_pixel(px, py, qx, qy, cx, cy):
                    _emit(oe, ox, oy, i, cx, cy)
    m = oe.size()
    re = np.empty(m, dtype=np.int64)
    rx = np.empty(m, dtype=np.int64)
    ry = np.empty(m, dtype=np.int64)
    cdef i64[::1] vre = re, vrx = rx, vry = ry
    for k in range(<Py_ssize_t>m):
        vre[k] = oe[k]
        vrx[k] = ox[k]
        vry[k] = oy[k]
    return re, rx, ry


cdef inline int _cls(i64 dx, i64 dy) noexcept nogil:
    return 0 if (dy > 0 or (dy == 0 and dx > 0)) else 1


cdef inline bint _before(i64 adx, i64 ady, i64 ah, i64 bdx, i64 bdy, i64 bh) noexcept nogil:
    # strict counter-clockwise order starting at angle 0, ties by half-edge id
    cdef int ua = _cls(adx, ady), ub = _cls(bdx, bdy)
    cdef i64 cr
    if ua != ub:
        return ua < ub
    cr = adx * bdy - ady * bdx
    if cr > 0:
        return True
    if cr < 0:
        return False
    return ah < bh


cdef inline i64 _prev_ccw(i64 h, const i64* orig, const i64* pos, const i64* start,
                          const i64* out) noexcept nogil:
    cdef i64 v = orig[h]
    cdef i64 k = pos[h] - 1
    if k < start[v]:
        k = start[v + 1] - 1
    return out[k]


def build_rings(vx, vy, eu, ev, ca, cb, int op):
    cdef i64[::1] VX = np.ascontiguousarray(vx, dtype=np.int64)
    cdef i64[::1] VY = np.ascontiguousarray(vy, dtype=np.int64)
    cdef i64[::1] EU = np.ascontiguousarray(eu, dtype=np.int64)
    cdef i64[::1] EV = np.ascontiguousarray(ev, dtype=np.int64)
    cdef i64[::1] CA = np.ascontiguousarray(ca, dtype=np.int64)
    cdef i64[::1] CB = np.ascontiguousarray(cb, dtype=np.int64)
    cdef Py_ssize_t V = VX.shape[0], E = EU.shape[0]
    cdef Py_ssize_t H = 2 * E
    cdef int status = 0
    cdef vector[i64] orig, start, fill, out, pos, face, comp, roots, stack
    cdef vector[i64] fstart, ffill, fh, wa, wb, queue, outer_wa, outer_wb
    cdef vector[i64] ddx, ddy
    cdef vector[char] seen, res, used
    cdef vector[i64] offsets, verts
    cdef Py_ssize_t h, h0, e, v, v0, k, s, t, d, f, g, nf, c, nc, qi, kk, w
    cdef i64 tdx, tdy, th, dx, dy, sa, sb, na_, nb_
    cdef bint ia, ib
    with nogil:
        orig.resize(H)
        for e in range(E):
            orig[2 * e] = EU[e]
            orig[2 * e + 1] = EV[e]
        start.assign(V + 1, 0)
        for h in range(H):
            start[orig[h] + 1] += 1
        for v in range(V):
            start[v + 1] += start[v]
        fill.assign(start.begin(), start.end())
        out.resize(H)
        for h in range(H):
            out[fill[orig[h]]] = h
            fill[orig[h]] += 1
        pos.resize(H)
        ddx.resize(H)
        ddy.resize(H)
        for h in range(H):
            ddx[h] = VX[orig[h ^ 1]] - VX[orig[h]]
            ddy[h] = VY[orig[h ^ 1]] - VY[orig[h]]
        for v in range(V):
            s = start[v]
            t = start[v + 1]
            # insertion sort: vertex degrees are small
            for k in range(s + 1, t):
                th = out[k]
                tdx = ddx[th]
                tdy = ddy[th]
                kk = k - 1
                while kk >= s and _before(tdx, tdy, th, ddx[out[kk]], ddy[out[kk]], out[kk]):
                    out[kk + 1] = out[kk]
                    kk -= 1
                out[kk + 1] = th
            for k in range(s, t - 1):
                if (ddx[out[k]] * ddy[out[k + 1]] - ddy[out[k]] * ddx[out[k + 1]] == 0 and
                        ddx[out[k]] * ddx[out[k + 1]] + ddy[out[k]] * ddy[out[k + 1]] > 0):
                    status = 1
            for k in range(s, t):
                pos[out[k]] = k

        face.assign(H, -1)
        nf = 0
        for h0 in range(H):
            if face[h0] >= 0:
                continue
            h = h0
            while True:
                face[h] = nf
                h = _prev_ccw(h ^ 1, orig.data(), pos.data(), start.data(), out.data())
                if h == h0:
                    break
            nf += 1

        comp.assign(V, -1)
        for v0 in range(V):
            if comp[v0] >= 0 or start[v0] == start[v0 + 1]:
                continue
            c = roots.size()
            roots.push_back(v0)
            comp[v0] = c
            stack.push_back(v0)
            while stack.size():
                v = stack.back()
                stack.pop_back()
                for k in range(start[v], start[v + 1]):
                    w = orig[out[k] ^ 1]
                    if comp[w] < 0:
                        comp[w] = c
                        stack.push_back(w)
        nc = roots.size()
        outer_wa.assign(nc, 0)
        outer_wb.assign(nc, 0)
        if nc > 1:
            _outer_windings(&VX[0], &VY[0], &EU[0], &EV[0], &CA[0], &CB[0], V, E,
                            roots, outer_wa, outer_wb)

        fstart.assign(nf + 1, 0)
        for h in range(H):
            fstart[face[h] + 1] += 1
        for f in range(nf):
            fstart[f + 1] += fstart[f]
        ffill.assign(fstart.begin(), fstart.end() - 1)
        fh.resize(H)
        for h in range(H):
            f = face[h]
            fh[ffill[f]] = h
            ffill[f] += 1
        wa.assign(nf, 0)
        wb.assign(nf, 0)
        seen.assign(nf, 0)
        for c in range(nc):
            v = roots[c]
            s = start[v]
            t = start[v + 1]
            k = s
            while k < t:
                h = out[k]
                if _cls(ddx[h], ddy[h]) != 0:
                    break
                k += 1
            if k > s:
                f = face[out[k - 1]]
            else:
                f = face[out[t - 1]]
            wa[f] = outer_wa[c]
            wb[f] = outer_wb[c]
            seen[f] = 1
            queue.clear()
            queue.push_back(f)
            qi = 0
            while qi < <Py_ssize_t>queue.size():
                f = queue[qi]
                qi += 1
                for k in range(fstart[f], fstart[f + 1]):
                    h = fh[k]
                    e = h >> 1
                    if (h & 1) == 0:
                        sa = CA[e]
                        sb = CB[e]
                    else:
                        sa = -CA[e]
                        sb = -CB[e]
                    g = face[h ^ 1]
                    na_ = wa[f] - sa
                    nb_ = wb[f] - sb
                    if not seen[g]:
                        seen[g] = 1
                        wa[g] = na_
                        wb[g] = nb_
                        queue.push_back(g)
                    elif wa[g] != na_ or wb[g] != nb_:
                        status = 1

        res.assign(nf, 0)
        for f in range(nf):
            ia = wa[f] != 0
            ib = wb[f] != 0
            if op == 0:
                res[f] = ia and ib
            elif op == 1:
                res[f] = ia or ib
            elif op == 2:
                res[f] = ia and not ib
            else:
                res[f] = ia != ib

        used.assign(H, 0)
        offsets.push_back(0)
        for h0 in range(H):
            if used[h0] or not res[face[h0]] or res[face[h0 ^ 1]]:
                continue
            h = h0
            while True:
                used[h] = 1
                verts.push_back(orig[h])
                g = _prev_ccw(h ^ 1, orig.data(), pos.data(), start.data(), out.data())
                while res[face[g ^ 1]]:
                    g = _prev_ccw(g, orig.data(), pos.data(), start.data(), out.data())
                h = g
                if h == h0:
                    break
                if used[h]:
                    status = 1
                    break
            offsets.push_back(verts.size())

    ro = np.empty(offsets.size(), dtype=np.int64)
    rv = np.empty(verts.size(), dtype=np.int64)
    cdef i64[::1] vro = ro, vrv = rv
    for k in range(<Py_ssize_t>offsets.size()):
        vro[k] = offsets[k]
    for k in range(<Py_ssize_t>verts.size()):
        vrv[k] = verts[k]
    return ro, rv, status


cdef void _outer_windings(const i64* VX, const i64* VY, const i64* EU, const i64* EV,
                          const i64* CA, const i64* CB, Py_ssize_t V, Py_ssize_t E,
                          vector[i64]& roots, vector[i64]& outer_wa,
                          vector[i64]& outer_wb) noexcept nogil:
    cdef i64 ylo = VY[0], yhi = VY[0]
    cdef Py_ssize_t k, e, c, nb
    cdef i64 hb, a, b, lo, hi, px, py, ax, ay, bx, by, wa, wb, u, w
    cdef vector[i64] bstart, bfill, bedge
    for k in range(V):
        if VY[k] < ylo:
            ylo = VY[k]
        if VY[k] > yhi:
            yhi = VY[k]
    nb = E if E < (1 << 14) else (1 << 14)
    if nb < 1:
        nb = 1
    hb = (yhi - ylo) // nb + 1
    bstart.assign(nb + 1, 0)
    for e in range(E):
        a = VY[EU[e]]
        b = VY[EV[e]]
        if a == b:
            continue
        lo = a if a < b else b
        hi = b if a < b else a
        for k in range((lo - ylo) // hb, (hi - 1 - ylo) // hb + 1):
            bstart[k + 1] += 1
    for k in range(nb):
        bstart[k + 1] += bstart[k]
    bfill.assign(bstart.begin(), bstart.end() - 1)
    bedge.resize(bstart[nb])
    for e in range(E):
        a = VY[EU[e]]
        b = VY[EV[e]]
        if a == b:
            continue
        lo = a if a < b else b
        hi = b if a < b else a
        for k in range((lo - ylo) // hb, (hi - 1 - ylo) // hb + 1):
            bedge[bfill[k]] = e
            bfill[k] += 1
    for c in range(<Py_ssize_t>roots.size()):
        px = VX[roots[c]]
        py = VY[roots[c]]
        wa = 0
        wb = 0
        k = (py - ylo) // hb
        for e in range(bstart[k], bstart[k + 1]):
            u = EU[bedge[e]]
            w = EV[bedge[e]]
            ax = VX[u]
            ay = VY[u]
            bx = VX[w]
            by = VY[w]
            if ay <= py and py < by:
                if (bx - ax) * (py - ay) - (by - ay) * (px - ax) < 0:
                    wa -= CA[bedge[e]]
                    wb -= CB[bedge[e]]
            elif by <= py and py < ay:
                if (bx - ax) * (py - ay) - (by - ay) * (px - ax) > 0:
                    wa += CA[bedge[e]]
                    wb += CB[bedge[e]]
        outer_wa[c] = wa
        outer_wb[c] = wb
