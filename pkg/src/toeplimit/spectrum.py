"""Discretized spectra of T(b_rho) and their rigorous expansions."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateInputError, DomainError
from .geometry import FixedPointFrame, Region, offset_outward
from .roots import positive_real_roots
from .symbol import (LaurentSymbol, RhoInterval, coeff_sup_bound, eval_symbol,
                     second_derivative_bound)

log = logging.getLogger(__name__)

__all__ = ["Partition", "SpectrumPolygon", "rho_bounds", "rho_bound_polynomials",
           "discretize", "expanded", "expansion_radius", "pipeline_frame"]


@dataclass(frozen=True)
class Partition:
    """Strictly increasing points covering a closed interval."""

    points: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.points, dtype=float)
        if p.ndim != 1 or p.size < 2 or not np.all(np.diff(p) > 0):
            raise DegenerateInputError("partition needs >= 2 strictly increasing points")
        object.__setattr__(self, "points", p)

    @classmethod
    def uniform(cls, m: int, a: float = 0.0, b: float = 2 * math.pi) -> "Partition":
        """m equal sub-intervals of [a, b] (m + 1 points)."""
        if m < 1:
            raise DegenerateInputError("need m >= 1")
        return cls(a + (b - a) * np.arange(m + 1) / m)

    @property
    def granularity(self) -> float:
        return float(np.max(np.diff(self.points)))

    def __len__(self):
        return self.points.size


@dataclass(frozen=True)
class SpectrumPolygon:
    """Closed polygon with vertices b(rho e^{i v_j}), endpoint duplicate dropped."""

    ring: np.ndarray  # complex vertices
    rho: float
    delta_v: float

    def region(self, frame: FixedPointFrame | None = None) -> Region:
        return Region.from_rings([self.ring], frame)


def rho_bound_polynomials(b: LaurentSymbol) -> tuple[np.ndarray, np.ndarray]:
    """Real ascending coefficients whose roots bound the useful rho range.

    Lower: |beta_{-r}| - sum_{n>-r} |beta_n| rho^{n+r} - K rho^r.
    Upper (multiplied by rho^r): |beta_s| rho^{s+r} - sum_{n<s} |beta_n| rho^{n+r} - K rho^r.
    """
    K = coeff_sup_bound(b)
    r, s = b.r, b.s
    mag = np.abs(b.dense())
    lo = -mag.copy()
    lo[0] = mag[0]
    lo[r] -= K
    hi = -mag.copy()
    hi[r + s] = mag[r + s]
    hi[r] -= K
    return lo, hi


def rho_bounds(b: LaurentSymbol) -> RhoInterval:
    """Interval [rho_l, rho_h] outside which spec T(b_rho) cannot shrink the limit set."""
    lo, hi = rho_bound_polynomials(b)
    rl = positive_real_roots(lo)
    rh = positive_real_roots(hi)
    if not rl:
        log.warning("rho_bounds: no positive root for the lower bound, using 1")
    if not rh:
        log.warning("rho_bounds: no positive root for the upper bound, using 1")
    rho_l = min(1.0, rl[0]) if rl else 1.0
    rho_h = max(1.0, rh[-1]) if rh else 1.0
    return RhoInterval(rho_l, rho_h)


def discretize(b: LaurentSymbol, rho: float, vs: Partition | int) -> SpectrumPolygon:
    """Polygon through b(rho e^{i v_j}) for the points of ``vs`` (int: uniform)."""
    if isinstance(vs, (int, np.integer)):
        vs = Partition.uniform(int(vs))
    if not rho > 0:
        raise DomainError("rho must be positive")
    v = vs.points
    if abs(v[0]) > 1e-12 or abs(v[-1] - 2 * math.pi) > 1e-9:
        raise DegenerateInputError("partition must cover [0, 2pi]")
    if v.size - 1 < 3:
        raise DegenerateInputError("need m >= 3 vertices")
    z = rho * np.exp(1j * v[:-1])
    return SpectrumPolygon(eval_symbol(b, z), float(rho), vs.granularity)


def expansion_radius(b: LaurentSymbol, rho: float, delta_v: float,
                     cbound: str = "rigorous") -> float:
    """C_rho * delta_v**2."""
    return second_derivative_bound(b, rho, cbound) * delta_v * delta_v


def expanded(sp: SpectrumPolygon, b: LaurentSymbol, frame: FixedPointFrame | None = None,
             cbound: str = "rigorous") -> Region:
    """Polygon P_rho ⊇ spec T(b_rho) built by offsetting the discretized curve.

    The offset radius is C_rho * delta_v**2 plus one grid unit (vertices of
    the curve were rounded onto the grid); the outer radius is twice
    C_rho * delta_v**2.
    """
    frame = frame if frame is not None else FixedPointFrame()
    reg = sp.region(frame)
    delta = expansion_radius(b, sp.rho, sp.delta_v, cbound)
    inner = delta + frame.unit
    cap = max(2.0 * delta, inner + 8 * frame.unit)
    return offset_outward(reg, inner, cap)


def pipeline_frame(b: LaurentSymbol, interval: RhoInterval, m: int,
                   cbound: str = "rigorous") -> FixedPointFrame:
    """Frame large enough for every spectrum and expansion over the rho interval."""
    dv = 2 * math.pi / m
    ext = 0.0
    mags = np.abs(b.coefficients)
    n = b.exponents.astype(float)
    for rho in (interval.rho_l, 1.0, interval.rho_h):
        curve = float(np.sum(mags * rho ** n))
        ext = max(ext, curve + 2.5 * expansion_radius(b, rho, dv, cbound))
    return FixedPointFrame.fit(1.25 * ext)
