"""Polynomial roots by Aberth-Ehrlich simultaneous iteration.

Coefficient arrays are ascending: ``c[k]`` multiplies ``z**k``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DegeneratePolynomialError, DomainError

__all__ = ["RootSet", "all_roots", "all_roots_batch", "positive_real_roots",
           "middle_moduli_gap", "strip"]

STRIP_TOL = 1e-14
RESIDUAL_TOL = 1e-10
MAX_ITER = 1000
_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class RootSet:
    """Roots of a polynomial with their worst backward error.

    ``residual`` is max_j |p(z_j)| / sum_k |c_k| |z_j|^k, i.e. the residual
    normalized by the coefficient magnitudes at the root.
    """

    roots: np.ndarray
    residual: float

    def __len__(self):
        return len(self.roots)

    def by_modulus(self) -> np.ndarray:
        """Roots sorted by modulus, ties broken by argument."""
        z = self.roots
        return z[np.lexsort((np.angle(z), np.abs(z)))]

    @property
    def moduli(self) -> np.ndarray:
        return np.sort(np.abs(self.roots))


def strip(coeffs) -> tuple[np.ndarray, int]:
    """Drop negligible high and low order coefficients.

    Returns the trimmed coefficient array and the number of zero roots removed
    from the low end.
    """
    c = np.asarray(coeffs, dtype=np.complex128).ravel()
    if c.size == 0:
        raise DegeneratePolynomialError("empty coefficient list")
    mag = np.abs(c)
    top = mag.max()
    if not np.isfinite(top):
        raise DomainError("non-finite coefficient")
    keep = np.nonzero(mag > STRIP_TOL * top)[0]
    if keep.size == 0 or keep[-1] == 0:
        raise DegeneratePolynomialError("polynomial has degree 0 after stripping")
    lo, hi = keep[0], keep[-1]
    return c[lo:hi + 1], int(lo)


def _initial_guesses(c: np.ndarray) -> np.ndarray:
    """Starting points on circles read off the Newton polygon of log|c_k|.

    ``c`` has shape (B, n+1) with nonzero first and last columns.
    """
    B, n1 = c.shape
    n = n1 - 1
    out = np.empty((B, n), dtype=np.complex128)
    with np.errstate(divide="ignore"):
        logs = np.log(np.abs(c))
    sigma = 0.7
    for b in range(B):
        lg = logs[b]
        idx = [k for k in range(n1) if np.isfinite(lg[k])]
        hull: list[int] = []
        for k in idx:
            while len(hull) >= 2:
                i, j = hull[-2], hull[-1]
                # pop j when it lies on or below the chord i -> k
                if (lg[j] - lg[i]) * (k - i) <= (lg[k] - lg[i]) * (j - i):
                    hull.pop()
                else:
                    break
            hull.append(k)
        pos = 0
        for i, j in zip(hull[:-1], hull[1:]):
            d = j - i
            rad = np.exp((lg[i] - lg[j]) / d)
            ang = 2 * np.pi * np.arange(d) / d + 2 * np.pi * i / n + sigma
            out[b, pos:pos + d] = rad * np.exp(1j * ang)
            pos += d
    return out


def _cplx(re: np.ndarray, im: np.ndarray) -> np.ndarray:
    """Assemble a complex array from real parts (avoids slow float->complex casts)."""
    return np.stack([re, im], axis=-1).view(np.complex128)[..., 0]


def _cinv(d: np.ndarray) -> np.ndarray:
    """Elementwise 1/d via real arithmetic; 1/0 gives inf or nan like division."""
    with np.errstate(divide="ignore", invalid="ignore"):
        k = 1.0 / (d.real * d.real + d.imag * d.imag)
    return _cplx(d.real * k, -(d.imag * k))


def _horner(c: np.ndarray, z: np.ndarray):
    """p(z), p'(z) and sum |c_k||z|^k for rows c (K, n+1) and points z (K,)."""
    n1 = c.shape[1]
    p = c[:, n1 - 1].copy()
    dp = np.zeros_like(p)
    az = np.abs(z)
    s = np.abs(p)
    for k in range(n1 - 2, -1, -1):
        dp = dp * z + p
        p = p * z + c[:, k]
        s = s * az + np.abs(c[:, k])
    return p, dp, s


def _newton(c: np.ndarray, rows: np.ndarray, z: np.ndarray):
    """Newton correction p/p' and backward error at points z of polynomials c[rows].

    Points outside the unit disk are handled through the reversed polynomial
    in y = 1/z to avoid overflow.
    """
    n = c.shape[1] - 1
    ratio = np.empty_like(z)
    berr = np.empty(z.shape, dtype=float)
    inner = np.abs(z) <= 1.0
    if inner.any():
        p, dp, s = _horner(c[rows[inner]], z[inner])
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio[inner] = np.where(p == 0, 0, p * _cinv(dp))
        berr[inner] = np.abs(p) / s
    outer = ~inner
    if outer.any():
        y = _cinv(z[outer])
        q, dq, s = _horner(c[rows[outer], ::-1], y)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio[outer] = np.where(q == 0, 0, z[outer] * _cinv(n - y * dq * _cinv(q)))
        berr[outer] = np.abs(q) / s
    bad = ~np.isfinite(ratio)
    if bad.any():
        ratio[bad] = 0
    return ratio, berr


def _aberth(c: np.ndarray, max_iter: int):
    """Run Aberth iteration on a batch of same-degree polynomials (B, n+1)."""
    B, n1 = c.shape
    n = n1 - 1
    z = _initial_guesses(c)
    berr = np.full((B, n), np.inf)
    if n == 1:
        z[:, 0] = -c[:, 0] / c[:, 1]
        _, berr[:, 0] = _newton(c, np.arange(B), z[:, 0])
        return z, berr
    active = np.ones((B, n), dtype=bool)
    stop_tol = 4.0 * n * _EPS
    eye = np.eye(n, dtype=bool)
    for _ in range(max_iter):
        rows = np.nonzero(active.any(axis=1))[0]
        if rows.size == 0:
            break
        zr = z[rows]
        ratio, be = _newton(c, np.repeat(rows, n), zr.ravel())
        ratio = ratio.reshape(zr.shape)
        be = be.reshape(zr.shape)
        # Aberth sum over the other roots of the same polynomial
        diff = zr[:, :, None] - zr[:, None, :]
        diff[:, eye] = 1.0
        with np.errstate(divide="ignore", invalid="ignore"):
            inv = _cinv(diff)
            inv[:, eye] = 0.0
            w = ratio * _cinv(1.0 - ratio * inv.sum(axis=2))
        w = np.where(np.isfinite(w), w, ratio)
        act = active[rows]
        done = (be <= stop_tol) | (np.abs(w) <= 2 * _EPS * np.abs(zr))
        upd = act & ~done
        zr = np.where(upd, zr - w, zr)
        z[rows] = zr
        active[rows] = upd
    # final backward errors at the returned points
    _, be = _newton(c, np.repeat(np.arange(B), n), z.ravel())
    berr = be.reshape(B, n)
    return z, berr


def _sorted_roots(z: np.ndarray) -> np.ndarray:
    return z[np.lexsort((np.angle(z), np.abs(z)))]


def all_roots(coeffs, max_iter: int = MAX_ITER, tol: float = RESIDUAL_TOL) -> RootSet:
    """All complex roots (with multiplicity) of the polynomial with ascending ``coeffs``."""
    c, nzero = strip(coeffs)
    if c.size == 1:  # c[0] z^nzero
        return RootSet(np.zeros(nzero, dtype=np.complex128), 0.0)
    z, berr = _aberth(c[None, :], max_iter)
    roots = _sorted_roots(np.concatenate([np.zeros(nzero, dtype=np.complex128), z[0]]))
    res = float(berr.max()) if berr.size else 0.0
    if not res <= tol:
        raise ConvergenceError(f"root finder did not reach residual {tol:g} (got {res:.3g})",
                               best=RootSet(roots, res), context=np.asarray(coeffs))
    return RootSet(roots, res)


def all_roots_batch(coeffs, max_iter: int = MAX_ITER, tol: float = RESIDUAL_TOL):
    """Roots of many polynomials of equal length and nonzero end coefficients.

    ``coeffs`` has shape (B, n+1). Returns ``(roots (B, n), residuals (B,))``,
    each row of roots sorted by modulus then argument. Rows whose residual
    exceeds ``tol`` raise ConvergenceError.
    """
    c = np.asarray(coeffs, dtype=np.complex128)
    if c.ndim != 2 or c.shape[1] < 2:
        raise DegeneratePolynomialError("need a 2-D batch of degree >= 1 polynomials")
    if c.shape[0] == 0:
        return np.empty((0, c.shape[1] - 1), dtype=np.complex128), np.empty(0)
    top = np.abs(c).max(axis=1)
    if np.any(np.abs(c[:, -1]) <= STRIP_TOL * top) or np.any(np.abs(c[:, 0]) <= STRIP_TOL * top):
        raise DegeneratePolynomialError("batch rows must have nonzero end coefficients")
    z, berr = _aberth(c, max_iter)
    order = np.lexsort((np.angle(z), np.abs(z)), axis=1)
    z = np.take_along_axis(z, order, axis=1)
    res = berr.max(axis=1)
    bad = ~(res <= tol)
    if bad.any():
        k = int(np.nonzero(bad)[0][0])
        raise ConvergenceError(f"root finder did not converge for batch row {k}",
                               best=RootSet(z[k], float(res[k])), context=c[k])
    return z, res


def _polyval_real(c: np.ndarray, x: float) -> float:
    acc = 0.0
    for ck in c[::-1]:
        acc = acc * x + ck
    return acc


def positive_real_roots(coeffs, max_iter: int = MAX_ITER) -> list[float]:
    """Positive real roots of a real polynomial, ascending, polished by bisection."""
    c = np.asarray(coeffs, dtype=float).ravel()
    cs, nzero = strip(c)
    cs = cs.real
    if cs.size < 2:  # only roots at the origin
        return []
    rs = all_roots(cs, max_iter=max_iter)
    z = rs.roots[rs.roots != 0]
    cand = np.sort(z[(np.abs(z.imag) <= 1e-9 * (1 + np.abs(z.real))) & (z.real > 0)].real)
    out: list[float] = []
    scale = np.sum(np.abs(cs))
    for x0 in cand:
        x = _bisect_polish(cs, float(x0), scale)
        if not out or x - out[-1] > 1e-12 * max(1.0, x):
            out.append(x)
    return out


def _bisect_polish(c: np.ndarray, x0: float, scale: float) -> float:
    """Refine a real root of c near x0 by bisection on a sign-changing bracket."""
    f0 = _polyval_real(c, x0)
    if f0 == 0:
        return x0
    h = max(1e-9 * (1 + abs(x0)), 1e-15)
    for _ in range(60):
        lo, hi = max(x0 - h, 0.0), x0 + h
        flo, fhi = _polyval_real(c, lo), _polyval_real(c, hi)
        if flo == 0:
            return lo
        if fhi == 0:
            return hi
        if (flo < 0) != (fhi < 0):
            break
        h *= 4
    else:
        return x0  # even multiplicity root: no sign change, keep iterate
    while hi - lo > 1e-13 * max(1.0, hi):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        fm = _polyval_real(c, mid)
        if fm == 0:
            return mid
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def middle_moduli_gap(rs: RootSet | np.ndarray, r: int) -> float:
    """|z_{r+1}| - |z_r| with roots ordered by modulus (1-indexed)."""
    z = rs.roots if isinstance(rs, RootSet) else np.asarray(rs)
    if r < 1 or len(z) < r + 1:
        raise DomainError(f"need at least r+1 = {r + 1} roots, have {len(z)}")
    m = np.sort(np.abs(z))
    return float(m[r] - m[r - 1])
