"""Hausdorff-distance certificate between the certified subset and the superset."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from .algebraic import MEMBERSHIP_TOL, SubsetPoints, subset
from .errors import DegenerateInputError, ParameterError
from .geometry import Region, area, fattened_intersection
from .limitset import SweepConfig, compute_basic, compute_sweep
from .symbol import LaurentSymbol

log = logging.getLogger(__name__)

__all__ = ["HausdorffBound", "distance_bound", "feasible", "error_certificate"]


@dataclass(frozen=True)
class HausdorffBound:
    """Result of the covering search.

    ``r_star`` is the smallest radius found whose fattened subset covers the
    superset. The true distance d satisfies lower <= d <= upper, with
    lower = r_star cos(pi/sides) and upper = r_star / cos(pi/sides) plus one
    grid unit.
    """

    r_star: float
    lower: float
    upper: float
    sides: int
    probes: int
    contained: bool


def _points(sub) -> np.ndarray:
    p = sub.points if isinstance(sub, SubsetPoints) else sub
    p = np.asarray(p)
    if np.iscomplexobj(p):
        p = np.stack([p.real, p.imag], axis=-1)
    return np.asarray(p, dtype=float).reshape(-1, 2)


def feasible(pts: np.ndarray, sup: Region, r: float, sides: int, area_tol: float,
             sup_area: float | None = None) -> bool:
    """Does the union of circumscribed n-gons of inradius r cover sup?"""
    if sup_area is None:
        sup_area = area(sup)
    return sup_area - area(fattened_intersection(pts, r, sides, sup)) <= area_tol


def _sample_distance(pts: np.ndarray, sup: Region, grid: int = 64, cap: int = 8192,
                     chunk: int = 1024) -> float:
    """max over sample points of sup of the distance to the nearest point.

    Samples are up to ``cap`` evenly strided vertices of sup and a grid x grid
    lattice clipped to sup, so the value is a lower bound on the directed
    distance from sup to pts.
    """
    v = np.concatenate(sup.rings)
    if v.shape[0] > cap:
        v = v[np.linspace(0, v.shape[0] - 1, cap).astype(np.int64)]
    x0, y0, x1, y1 = sup.bbox()
    g = np.stack(np.meshgrid(np.linspace(x0, x1, grid), np.linspace(y0, y1, grid)),
                 axis=-1).reshape(-1, 2)
    v = np.concatenate([v, g[sup.contains(g)]])
    p2 = (pts ** 2).sum(axis=1)
    best = 0.0
    for s in range(0, v.shape[0], chunk):
        q = v[s:s + chunk]
        d2 = (q ** 2).sum(axis=1)[:, None] - 2.0 * (q @ pts.T) + p2[None, :]
        i = d2.argmin(axis=1)
        # exact distance to the chosen nearest point, free of cancellation
        best = max(best, float(np.sqrt(((q - pts[i]) ** 2).sum(axis=1)).max()))
    return best


def distance_bound(sub, sup: Region, sides: int = 20, rel_tol: float = 1e-3,
                   area_tol: float | None = None) -> HausdorffBound:
    """Binary search for the smallest covering radius of sup by the fattened subset."""
    if sides < 3:
        raise ParameterError("sides must be >= 3")
    if not 0 < rel_tol < 1:
        raise ParameterError("rel_tol must lie in (0, 1)")
    pts = _points(sub)
    if pts.shape[0] == 0:
        raise DegenerateInputError("subset is empty")
    if sup.is_empty:
        raise DegenerateInputError("superset is empty")
    sup = sup.normalized()
    sup_area = area(sup)
    if area_tol is None:
        area_tol = 1e-9 * sup_area
    contained = bool(np.all(sup.contains(pts)))
    if not contained:
        log.warning("distance_bound: some subset points lie outside the superset; "
                    "bounding the directed distance from the superset only")
    x0, y0, x1, y1 = sup.bbox()
    diam = math.hypot(x1 - x0, y1 - y0)
    probes = 0

    def ok(r):
        nonlocal probes
        probes += 1
        return feasible(pts, sup, r, sides, area_tol, sup_area)

    # bracket: a vertex at distance est from every point is uncovered while
    # r / cos(pi/sides) < est, so est cos(pi/sides) (less rounding) is infeasible
    c = math.cos(math.pi / sides)
    est = _sample_distance(pts, sup)
    hi = max(est, diam * 1e-6, 16 * sup.frame.unit) * 1.05
    lo = max(0.0, (est - 2 * sup.frame.unit) * c)
    for _ in range(200):
        if ok(hi):
            break
        lo, hi = hi, 2.0 * hi
    else:
        raise DegenerateInputError("no covering radius found")
    while hi - lo > rel_tol * hi:
        mid = 0.5 * (lo + hi)
        if ok(mid):
            hi = mid
        else:
            lo = mid
    return HausdorffBound(float(hi), float(hi * c), float(hi / c + sup.frame.unit),
                          int(sides), probes, contained)


def error_certificate(b: LaurentSymbol, cfg: SweepConfig, N: int, *, algorithm: str = "sweep",
                      sides: int = 20, rel_tol: float = 1e-3, tol: float = MEMBERSHIP_TOL,
                      result=None) -> dict:
    """Run the superset and subset computations and bound their Hausdorff distance.

    With ``algorithm="basic"`` the superset comes from n + 1 uniformly (or
    inversely) spaced rho values; otherwise from the area-sweep sampler.
    """
    if N < 1:
        raise DegenerateInputError("N must be >= 1 (the subset would be empty)")
    if result is None:
        if algorithm == "basic":
            result = compute_basic(b, cfg.n, cfg.m, rho_sampling=cfg.rho_sampling,
                                   cbound=cfg.cbound)
        elif algorithm == "sweep":
            result = compute_sweep(b, cfg)
        else:
            raise ParameterError(f"unknown algorithm {algorithm!r}")
    sub = subset(b, N, tol)
    hb = distance_bound(sub, result.superset, sides, rel_tol)
    params = dict(cfg.params())
    params.update({"algorithm": algorithm, "phi_count": N, "tol": tol, "sides": sides,
                   "rel_tol": rel_tol})
    if algorithm == "basic":
        for k in ("l", "sweeps", "threshold_divisor", "ma_window", "seed"):
            params.pop(k, None)
    return {
        "r_star": hb.r_star,
        "lower": hb.lower,
        "upper": hb.upper,
        "sides": hb.sides,
        "sub_size": int(len(sub)),
        "subset_inside_superset": hb.contained,
        "probes": hb.probes,
        "rho_interval": [result.interval.rho_l, result.interval.rho_h],
        "superset_area": area(result.superset),
        "polygon_area": area(result.polygon),
        "symbol": b.to_json(),
        "params": params,
        "guarantee": ("d_H(Lambda_sub, Lambda(b)) <= upper and d_H(Lambda_sup, Lambda(b)) <= upper; "
                      "lower <= d_H(Lambda_sub, Lambda_sup) <= upper"),
    }
