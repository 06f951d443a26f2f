"""Approximating polygon and superset of the limit set by intersecting spectra."""
from __future__ import annotations

import logging
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import ParameterError
from .geometry import FixedPointFrame, Region, area, intersect
from .spectrum import Partition, discretize, expanded, pipeline_frame, rho_bounds
from .symbol import LaurentSymbol, RhoInterval

log = logging.getLogger(__name__)

__all__ = ["SweepConfig", "LimitSetResult", "sample_rhos", "compute_basic", "compute_sweep",
           "moving_average", "select_intervals"]

MODES = ("uniform", "inverse")


@dataclass(frozen=True)
class SweepConfig:
    n: int
    m: int
    l: int = 250
    sweeps: int = 2
    seed: int = 0
    threshold_divisor: float = 1e6
    ma_window: int = 5
    rho_sampling: str = "uniform"
    cbound: str = "rigorous"
    threads: int = 1

    def __post_init__(self):
        if self.n < 1 or self.l < 1 or self.sweeps < 1:
            raise ParameterError("n, l and sweeps must be >= 1")
        if self.m < 3:
            raise ParameterError("m must be >= 3")
        if self.n // self.sweeps < 1:
            raise ParameterError("n // sweeps must be >= 1")
        if self.ma_window < 1 or self.ma_window % 2 == 0:
            raise ParameterError("ma_window must be a positive odd integer")
        if not self.threshold_divisor >= 1:
            raise ParameterError("threshold_divisor must be >= 1")
        if self.rho_sampling not in MODES:
            raise ParameterError(f"rho_sampling must be one of {MODES}")
        if self.cbound not in ("rigorous", "sampled"):
            raise ParameterError("cbound must be 'rigorous' or 'sampled'")
        if self.threads < 1:
            raise ParameterError("threads must be >= 1")

    def params(self) -> dict:
        return {"n": self.n, "m": self.m, "l": self.l, "sweeps": self.sweeps, "seed": self.seed,
                "threshold_divisor": self.threshold_divisor, "ma_window": self.ma_window,
                "rho_sampling": self.rho_sampling, "cbound": self.cbound}


@dataclass
class LimitSetResult:
    polygon: Region
    superset: Region
    interval: RhoInterval
    frame: FixedPointFrame
    diagnostics: dict = field(default_factory=dict)


def _sample_interval(a: float, b: float, count: int, mode: str) -> np.ndarray:
    if count <= 0:
        return np.empty(0)
    if mode == "uniform" or b <= a:
        return np.linspace(a, b, count)
    if mode != "inverse":
        raise ParameterError(f"unknown sampling mode {mode!r}")
    ml = 1.0 / a - 1.0 / min(b, 1.0) if a < 1 else 0.0
    mh = b - max(a, 1.0) if b > 1 else 0.0
    n_low = int(round(count * ml / (ml + mh))) if ml + mh > 0 else 0
    n_low = min(max(n_low, 0), count)
    n_high = count - n_low
    if n_low == 0:
        return np.linspace(max(a, 1.0), b, count) if b > 1 else np.linspace(a, b, count)
    top = 1.0 / min(b, 1.0)
    if n_high == 0:
        low = 1.0 / np.linspace(1.0 / a, top, n_low)
        return np.sort(low)
    low = 1.0 / np.linspace(1.0 / a, top, n_low + 1)[:-1]
    return np.concatenate([np.sort(low), np.linspace(max(a, 1.0), b, n_high)])


def sample_rhos(interval: RhoInterval, count: int, mode: str = "uniform") -> np.ndarray:
    """``count`` sample points of [rho_l, rho_h], ascending.

    ``uniform`` spaces them equally; ``inverse`` splits the count between
    [rho_l, 1) and [1, rho_h] in proportion to 1/rho_l - 1 and rho_h - 1,
    spacing the reciprocals equally below 1.
    """
    if count < 1:
        raise ParameterError("count must be >= 1")
    return _sample_interval(interval.rho_l, interval.rho_h, count, mode)


def moving_average(x: np.ndarray, window: int) -> np.ndarray:
    """Centered moving average; windows are truncated at the ends."""
    x = np.asarray(x, dtype=float)
    if window <= 1 or x.size == 0:
        return x.copy()
    k = np.ones(window)
    num = np.convolve(x, k, mode="same")
    den = np.convolve(np.ones_like(x), k, mode="same")
    return num / den


def select_intervals(grid: np.ndarray, smoothed: np.ndarray, divisor: float,
                     u: float, lo: float, hi: float) -> list[tuple[float, float]]:
    """Intervals of ``grid`` where ``smoothed`` >= max / divisor.

    A run of selected indices a..b becomes [grid[a-1] + e_l, grid[b+1] - e_r]
    where e_l, e_r are the fraction ``u`` of the neighbouring grid spacings,
    so the interval always contains [grid[a], grid[b]]. Results are clipped
    to [lo, hi].
    """
    top = float(np.max(smoothed)) if smoothed.size else 0.0
    if not top > 0:
        return []
    sel = smoothed >= top / divisor
    out = []
    n = grid.size
    i = 0
    while i < n:
        if not sel[i]:
            i += 1
            continue
        j = i
        while j + 1 < n and sel[j + 1]:
            j += 1
        left = grid[i - 1] + u * (grid[i] - grid[i - 1]) if i > 0 else grid[0]
        right = grid[j + 1] - u * (grid[j + 1] - grid[j]) if j + 1 < n else grid[-1]
        left, right = max(lo, float(left)), min(hi, float(right))
        if right >= left:
            out.append((left, right))
        i = j + 1
    return out


def _allocate(intervals: list[tuple[float, float]], count: int) -> list[int]:
    """Split ``count`` over intervals proportionally to length (largest remainder)."""
    L = np.array([b - a for a, b in intervals], dtype=float)
    if L.sum() <= 0:
        L = np.ones_like(L)
    q = count * L / L.sum()
    k = np.floor(q).astype(int)
    rem = count - int(k.sum())
    order = np.lexsort((np.arange(L.size), -(q - k)))
    k[order[:rem]] += 1
    return k.tolist()


class _Chain:
    """Running intersections for the polygon and the superset."""

    def __init__(self, b: LaurentSymbol, m: int, frame: FixedPointFrame, cbound: str):
        self.b, self.m, self.frame, self.cbound = b, m, frame, cbound
        self.vs = Partition.uniform(m)
        self.polygon: Region | None = None
        self.superset: Region | None = None
        self.vertex_counts: list[int] = []
        self.areas: list[float] = []
        self.rhos: list[float] = []

    def add(self, rho: float):
        sp = discretize(self.b, rho, self.vs)
        reg = sp.region(self.frame)
        exp = expanded(sp, self.b, self.frame, self.cbound)
        if self.polygon is None:
            self.polygon = reg.normalized()
            self.superset = exp
        else:
            self.polygon = intersect(self.polygon, reg)
            self.superset = intersect(self.superset, exp)
        self.rhos.append(float(rho))
        self.vertex_counts.append(self.polygon.vertex_count)
        self.areas.append(area(self.polygon))
        if self.polygon.is_empty and len(self.rhos) > 1 and self.vertex_counts[-2] > 0:
            log.info("approximating polygon became empty at rho = %g", rho)


def compute_basic(b: LaurentSymbol, n: int, m: int, *, rho_sampling: str = "uniform",
                  cbound: str = "rigorous", rhos=None) -> LimitSetResult:
    """Intersect discretized spectra at n + 1 sampled rho values.

    ``n = 0`` gives the single spectrum at rho_l (the first sample). An
    explicit ``rhos`` sequence overrides the sampling.
    """
    if n < 0:
        raise ParameterError("n must be >= 0")
    if m < 3:
        raise ParameterError("m must be >= 3")
    t0 = time.perf_counter()
    interval = rho_bounds(b)
    frame = pipeline_frame(b, interval, m, cbound)
    if rhos is None:
        rhos = sample_rhos(interval, n + 1, rho_sampling)
    chain = _Chain(b, m, frame, cbound)
    for rho in rhos:
        chain.add(float(rho))
    diag = {
        "algorithm": "basic",
        "rhos": chain.rhos,
        "vertex_counts": chain.vertex_counts,
        "areas": chain.areas,
        "iteration_areas": [chain.areas[-1]],
        "superset_area": area(chain.superset),
        "wall_clock": time.perf_counter() - t0,
    }
    return LimitSetResult(chain.polygon, chain.superset, interval, frame, diag)


def compute_sweep(b: LaurentSymbol, cfg: SweepConfig) -> LimitSetResult:
    """Adaptive rho sampling driven by the area each spectrum removes."""
    t0 = time.perf_counter()
    interval = rho_bounds(b)
    frame = pipeline_frame(b, interval, cfg.m, cfg.cbound)
    rng = np.random.default_rng(cfg.seed)
    grid = sample_rhos(interval, cfg.l, cfg.rho_sampling)
    batch = cfg.n // cfg.sweeps
    sizes = [batch] * cfg.sweeps
    sizes[-1] += cfg.n - batch * cfg.sweeps
    rhos = sample_rhos(interval, sizes[0], cfg.rho_sampling)
    chain = _Chain(b, cfg.m, frame, cfg.cbound)
    chain.add(float(rhos[0]))
    todo = rhos[1:]
    cache = np.full(cfg.l, np.nan)
    prev_sel = np.ones(cfg.l, dtype=bool)
    iteration_areas, selected, evaluated, fallbacks, jitter = [], [], [], [], []
    pool = ThreadPoolExecutor(cfg.threads) if cfg.threads > 1 else None
    try:
        for it in range(cfg.sweeps):
            for rho in todo:
                chain.add(float(rho))
            iteration_areas.append(chain.areas[-1])
            if it == cfg.sweeps - 1:
                break
            reduce_, n_eval = _area_reduction(chain, grid, cache, prev_sel, cfg, pool)
            evaluated.append(n_eval)
            cache = reduce_
            smooth = moving_average(reduce_, cfg.ma_window)
            u = float(rng.random())
            jitter.append(u)
            ivs = select_intervals(grid, smooth, cfg.threshold_divisor, u,
                                   interval.rho_l, interval.rho_h)
            count = sizes[it + 1]
            if not ivs:
                log.info("sweep %d: no area-reducing interval, resampling uniformly", it)
                fallbacks.append(it)
                todo = sample_rhos(interval, count, cfg.rho_sampling)
                prev_sel = np.ones(cfg.l, dtype=bool)
            else:
                alloc = _allocate(ivs, count)
                todo = np.concatenate([_sample_interval(a, c, k, cfg.rho_sampling)
                                       for (a, c), k in zip(ivs, alloc)])
                prev_sel = np.zeros(cfg.l, dtype=bool)
                for a, c in ivs:
                    prev_sel |= (grid >= a) & (grid <= c)
            selected.append([list(iv) for iv in ivs])
    finally:
        if pool is not None:
            pool.shutdown()
    diag = {
        "algorithm": "sweep",
        "rhos": chain.rhos,
        "vertex_counts": chain.vertex_counts,
        "areas": chain.areas,
        "iteration_areas": iteration_areas,
        "selected_intervals": selected,
        "sweep_evaluations": evaluated,
        "fallback_iterations": fallbacks,
        "jitter": jitter,
        "seed": cfg.seed,
        "superset_area": area(chain.superset),
        "wall_clock": time.perf_counter() - t0,
    }
    return LimitSetResult(chain.polygon, chain.superset, interval, frame, diag)


def _area_reduction(chain: _Chain, grid, cache, prev_sel, cfg: SweepConfig, pool):
    """areareduce over the sweep grid, reusing cached upper bounds.

    The reduction Area(L) - Area(L ∩ S_rho) can only shrink as L shrinks, so
    a cached value below the threshold implied by freshly computed values
    stays below it and is not recomputed.
    """
    lam = chain.polygon
    base = area(lam)
    vs = chain.vs

    def one(rho):
        reg = discretize(chain.b, float(rho), vs).region(chain.frame)
        return base - area(intersect(lam, reg))

    def run(idx):
        if pool is None:
            return [one(grid[i]) for i in idx]
        return list(pool.map(one, [grid[i] for i in idx]))

    out = cache.copy()
    fresh = np.isnan(cache)
    if fresh.all():
        idx = np.arange(grid.size)
        out[idx] = run(idx)
        return out, int(idx.size)
    first = np.nonzero(prev_sel)[0]
    out[first] = run(first)
    thr = float(np.max(out[first])) / cfg.threshold_divisor if first.size else 0.0
    rest = np.nonzero(~prev_sel & (cache >= thr))[0]
    out[rest] = run(rest)
    return out, int(first.size + rest.size)
