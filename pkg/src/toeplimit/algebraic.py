"""Certified points of the limit set from the root-modulus criterion."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DegeneratePolynomialError, ParameterError
from .roots import STRIP_TOL, all_roots_batch, middle_moduli_gap, strip
from .symbol import LaurentSymbol, derivative_polynomial, eval_symbol, q_polynomial

log = logging.getLogger(__name__)

__all__ = ["SubsetPoints", "membership", "membership_gaps", "candidate_points", "subset",
           "MEMBERSHIP_TOL", "DEDUP_TOL"]

MEMBERSHIP_TOL = 1e-7
DEDUP_TOL = 1e-9


@dataclass(frozen=True)
class SubsetPoints:
    """Points lambda with |z_r(lambda)| = |z_{r+1}(lambda)| up to ``tol``."""

    points: np.ndarray  # complex
    tol: float = MEMBERSHIP_TOL

    def __len__(self):
        return self.points.size

    def to_csv(self) -> str:
        return "".join(f"{z.real!r},{z.imag!r}\n" for z in self.points)


def membership_gaps(b: LaurentSymbol, lams, chunk: int = 4096) -> np.ndarray:
    """|z_{r+1}| - |z_r| of Q(lambda, z) = z^r (b(z) - lambda) for each lambda."""
    lams = np.atleast_1d(np.asarray(lams, dtype=np.complex128))
    r = b.r
    base = q_polynomial(b, 0.0)
    out = np.empty(lams.size)
    for s in range(0, lams.size, chunk):
        lam = lams[s:s + chunk]
        c = np.tile(base, (lam.size, 1))
        c[:, r] -= lam
        try:
            z, _ = all_roots_batch(c)
        except ConvergenceError as exc:
            k = int(np.argmax(np.all(c == exc.context, axis=1))) if exc.context is not None else 0
            exc.context = {"lambda": complex(lam[k]), "coefficients": exc.context}
            raise
        mod = np.abs(z)  # rows sorted by modulus
        out[s:s + chunk] = mod[:, r] - mod[:, r - 1]
    return out


def membership(b: LaurentSymbol, lam: complex, tol: float = MEMBERSHIP_TOL) -> bool:
    """True iff the r-th and (r+1)-th root moduli of Q(lambda, .) agree within tol."""
    return bool(membership_gaps(b, [lam])[0] <= tol)


def _intersection_polys(b: LaurentSymbol, phis: np.ndarray) -> np.ndarray:
    """Rows: ascending coefficients of sum_n beta_n (1 - e^{i n phi}) z^{n+r}."""
    n = np.arange(-b.r, b.s + 1)
    d = b.dense()
    return d[None, :] * (1.0 - np.exp(1j * np.outer(phis, n)))


def _nonzero_roots(polys: np.ndarray) -> np.ndarray:
    """Nonzero roots of each polynomial row; degenerate rows are skipped."""
    groups: dict[int, list[np.ndarray]] = {}
    skipped = 0
    for row in polys:
        try:
            c, _ = strip(row)
        except DegeneratePolynomialError:
            skipped += 1
            continue
        if c.size >= 2:  # otherwise only zero roots remain
            groups.setdefault(c.size, []).append(c)
    if skipped:
        log.info("candidate_points: skipped %d degenerate polynomials", skipped)
    found = []
    for _, rows in sorted(groups.items()):
        z, _ = all_roots_batch(np.array(rows))
        found.append(z.ravel())
    if not found:
        return np.empty(0, dtype=np.complex128)
    z = np.concatenate(found)
    return z[z != 0]


def _dedup(lams: np.ndarray, tol: float = DEDUP_TOL) -> np.ndarray:
    """Sorted unique values after snapping to a grid of spacing tol."""
    if lams.size == 0:
        return lams
    key = np.stack([np.round(lams.real / tol), np.round(lams.imag / tol)], axis=1)
    _, idx = np.unique(key, axis=0, return_index=True)  # rows in lexicographic order
    return lams[idx]


def candidate_points(b: LaurentSymbol, phis, include_critical: bool = True) -> np.ndarray:
    """lambda = b(z) for nonzero roots of b(z) = b(z e^{i phi}) and of b'(z) = 0."""
    phis = np.atleast_1d(np.asarray(phis, dtype=float))
    zs = [_nonzero_roots(_intersection_polys(b, phis))] if phis.size else []
    if include_critical:
        zs.append(_nonzero_roots(derivative_polynomial(b)[None, :]))
    z = np.concatenate(zs) if zs else np.empty(0, dtype=np.complex128)
    if z.size == 0:
        log.warning("candidate_points: no candidates (all polynomials degenerate)")
        return z
    z = z[np.isfinite(z)]
    return _dedup(eval_symbol(b, z))


def subset(b: LaurentSymbol, N: int, tol: float = MEMBERSHIP_TOL, *, phis=None) -> SubsetPoints:
    """Certified subset from phi_k = pi k / N, k = 1..N, plus critical values."""
    if phis is None:
        if N < 1:
            raise ParameterError("N must be >= 1")
        phis = math.pi * np.arange(1, N + 1) / N
    cand = candidate_points(b, phis)
    if cand.size == 0:
        return SubsetPoints(cand, tol)
    gaps = membership_gaps(b, cand)
    return SubsetPoints(cand[gaps <= tol], tol)
