import math

import numpy as np
import pytest

from geom_oracles import rounding_slack
from toeplimit.errors import ParameterError
from toeplimit.geometry import area, covers
from toeplimit.limitset import (SweepConfig, compute_basic, compute_sweep, moving_average,
                                sample_rhos, select_intervals)
from toeplimit.spectrum import discretize, rho_bounds
from toeplimit.symbol import LaurentSymbol, RhoInterval


def test_sample_rhos_examples():
    assert np.allclose(sample_rhos(RhoInterval(1, 2), 3), [1, 1.5, 2])
    assert np.allclose(sample_rhos(RhoInterval(0.5, 1), 3, "inverse"), [0.5, 2 / 3, 1])
    r = sample_rhos(RhoInterval(0.5, 2), 4, "inverse")
    assert r.size == 4 and np.all(np.diff(r) > 0)
    low, high = r[r < 1], r[r >= 1]
    assert low.size == 2 and high.size == 2
    assert np.allclose(1 / low, [2, 1.5]) and np.allclose(high, [1, 2])
    assert sample_rhos(RhoInterval(0.5, 2), 1).size == 1
    with pytest.raises(ParameterError):
        sample_rhos(RhoInterval(0.5, 2), 0)


def test_moving_average():
    x = np.array([0, 0, 5, 0, 0], dtype=float)
    assert np.allclose(moving_average(x, 3), [0, 5 / 3, 5 / 3, 5 / 3, 0])
    assert np.allclose(moving_average(x, 5)[[0, 2]], [5 / 3, 1])
    assert np.array_equal(moving_average(x, 1), x)


def test_select_intervals():
    grid = np.linspace(0, 1, 11)
    s = np.zeros(11)
    s[[4, 5]] = 1.0
    s[9] = 1e-8  # below max / 1e6
    ivs = select_intervals(grid, s, 1e6, 0.0, 0.0, 1.0)
    assert ivs == [pytest.approx((0.3, 0.6))]
    ivs = select_intervals(grid, s, 1e6, 0.5, 0.0, 1.0)
    assert ivs == [pytest.approx((0.35, 0.55))]
    s[9] = 1e-3
    assert len(select_intervals(grid, s, 1e6, 0.0, 0.0, 1.0)) == 2
    assert select_intervals(grid, np.zeros(11), 1e6, 0.0, 0.0, 1.0) == []


def test_sweep_config_validation():
    with pytest.raises(ParameterError):
        SweepConfig(n=0, m=10)
    with pytest.raises(ParameterError):
        SweepConfig(n=1, m=10, sweeps=2)
    with pytest.raises(ParameterError):
        SweepConfig(n=10, m=10, ma_window=4)
    with pytest.raises(ParameterError):
        SweepConfig(n=10, m=2)


def test_basic_segment(cosine):
    # the limit set of t^-1 + t is the segment [-2, 2]
    res = compute_basic(cosine, 50, 512)
    xs = np.linspace(-1.99, 1.99, 41)
    assert np.all(res.superset.contains(np.stack([xs, 0 * xs], axis=1)))
    # spectra are ellipses with semi-axes rho + 1/rho and |rho - 1/rho|
    rho = np.array(res.diagnostics["rhos"])
    smallest = np.min(np.pi * (rho + 1 / rho) * np.abs(rho - 1 / rho))
    assert area(res.polygon) <= smallest
    assert covers(res.superset, res.polygon, 1e-9)
    coarse = compute_basic(cosine, 5, 512)
    fine = compute_basic(cosine, 400, 512)
    assert area(fine.polygon) < area(res.polygon) < area(coarse.polygon)
    assert area(fine.superset) < area(res.superset) < area(coarse.superset)


def test_basic_star_tips(star):
    res = compute_basic(star, 200, 1000)
    tips = 5 * 4 ** -0.8 * np.exp(2j * np.pi * np.arange(5) / 5)
    assert np.all(res.superset.contains(tips))


def test_basic_single_spectrum(star):
    res = compute_basic(star, 0, 64)
    iv = rho_bounds(star)
    want = discretize(star, iv.rho_l, 64).region(res.frame).normalized()
    assert res.polygon.signature() == want.signature()


def test_basic_monotone_areas(main_symbol):
    res = compute_basic(main_symbol, 20, 200)
    a = np.array(res.diagnostics["areas"])
    assert np.all(np.diff(a) <= rounding_slack(res.polygon))
    assert len(res.diagnostics["vertex_counts"]) == 21


def test_sweep_single_iteration_equals_basic(main_symbol):
    cfg = SweepConfig(n=12, m=128, l=20, sweeps=1)
    s = compute_sweep(main_symbol, cfg)
    b = compute_basic(main_symbol, 11, 128)
    assert s.diagnostics["rhos"] == b.diagnostics["rhos"]
    assert s.polygon.signature() == b.polygon.signature()
    assert s.superset.signature() == b.superset.signature()


def test_sweep_invariants(main_symbol):
    cfg = SweepConfig(n=40, m=200, l=30, sweeps=3, seed=7)
    res = compute_sweep(main_symbol, cfg)
    d = res.diagnostics
    assert len(d["rhos"]) == 40
    assert np.all(np.diff(d["areas"]) <= rounding_slack(res.polygon))
    assert covers(res.superset, res.polygon, 1e-9 * max(area(res.superset), 1))
    assert len(d["selected_intervals"]) == 2 and len(d["jitter"]) == 2
    for ivs in d["selected_intervals"]:
        for lo, hi in ivs:
            assert res.interval.rho_l <= lo < hi <= res.interval.rho_h
    again = compute_sweep(main_symbol, cfg)
    assert again.diagnostics["rhos"] == d["rhos"]
    assert again.polygon.signature() == res.polygon.signature()
    assert again.superset.signature() == res.superset.signature()


def test_sweep_threads_deterministic(main_symbol):
    one = compute_sweep(main_symbol, SweepConfig(n=20, m=100, l=16, sweeps=2))
    two = compute_sweep(main_symbol, SweepConfig(n=20, m=100, l=16, sweeps=2, threads=2))
    assert one.diagnostics["rhos"] == two.diagnostics["rhos"]
    assert one.superset.signature() == two.superset.signature()


def test_area_reduction_cache_sound(main_symbol):
    # recomputing a cached areareduce value never makes it larger
    from toeplimit.geometry import intersect
    from toeplimit.limitset import _Chain, _area_reduction
    from toeplimit.spectrum import pipeline_frame
    iv = rho_bounds(main_symbol)
    frame = pipeline_frame(main_symbol, iv, 100)
    chain = _Chain(main_symbol, 100, frame, "rigorous")
    grid = sample_rhos(iv, 12)
    cfg = SweepConfig(n=10, m=100, l=12, sweeps=2)
    chain.add(iv.rho_l)
    first, _ = _area_reduction(chain, grid, np.full(12, np.nan), np.ones(12, bool), cfg, None)
    for rho in sample_rhos(iv, 5)[1:]:
        chain.add(rho)
    second, _ = _area_reduction(chain, grid, np.full(12, np.nan), np.ones(12, bool), cfg, None)
    assert np.all(second <= first + rounding_slack(chain.polygon))
