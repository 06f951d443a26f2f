import math

import numpy as np
import pytest

from toeplimit.algebraic import SubsetPoints
from toeplimit.errors import DegenerateInputError, ParameterError
from toeplimit.geometry import FixedPointFrame, Region, area
from toeplimit.hausdorff import distance_bound, error_certificate, feasible
from toeplimit.limitset import SweepConfig


def disk(k=1024, frame=None):
    a = 2 * np.pi * np.arange(k) / k
    return Region.from_rings([np.exp(1j * a)], frame)


def test_point_vs_disk():
    hb = distance_bound(np.array([[0.0, 0.0]]), disk(), sides=20)
    c = math.cos(math.pi / 20)
    assert 1.0 <= hb.r_star <= 1.0 / c
    assert hb.lower == pytest.approx(hb.r_star * c, rel=1e-15)
    assert hb.lower <= 1.0 <= hb.upper
    assert hb.contained


def test_vertices_of_polygon():
    ring = np.array([[0, 0], [3, 0], [3, 1], [1.5, 2], [0, 1]], dtype=float)
    sup = Region.from_rings([ring])
    hb = distance_bound(ring, sup, sides=20, rel_tol=1e-4)
    # rasterization oracle for max over sup of the distance to the nearest vertex
    g = np.stack(np.meshgrid(np.linspace(0, 3, 601), np.linspace(0, 2, 401)), -1).reshape(-1, 2)
    g = g[sup.contains(g)]
    d = np.sqrt(((g[:, None, :] - ring[None]) ** 2).sum(axis=2)).min(axis=1).max()
    c = math.cos(math.pi / 20)
    assert hb.lower <= d * (1 + 1e-3) and d <= hb.upper * (1 + 1e-3)


def test_monotone_feasibility():
    pts = np.array([[0.0, 0.0], [0.5, 0.2]])
    sup = disk(256)
    hb = distance_bound(pts, sup)
    a = area(sup)
    tol = 1e-9 * a
    assert feasible(pts, sup, hb.r_star * 1.01, 20, tol, a)
    assert not feasible(pts, sup, hb.r_star * 0.5, 20, tol, a)
    assert not feasible(pts, sup, hb.lower * 0.99, 20, tol, a)


def test_outside_points_reported():
    hb = distance_bound(np.array([[0.0, 0.0], [5.0, 5.0]]), disk(64))
    assert not hb.contained


def test_errors():
    with pytest.raises(DegenerateInputError):
        distance_bound(np.empty((0, 2)), disk())
    with pytest.raises(DegenerateInputError):
        distance_bound(np.zeros((1, 2)), Region.empty())
    with pytest.raises(ParameterError):
        distance_bound(np.zeros((1, 2)), disk(), sides=2)


def test_subset_points_accepted():
    sp = SubsetPoints(np.array([0j]))
    assert distance_bound(sp, disk()).r_star == pytest.approx(1.0, rel=0.02)


def test_certificate_small(star):
    cfg = SweepConfig(n=60, m=400, l=40, sweeps=2)
    cert = error_certificate(star, cfg, 50)
    assert cert["lower"] == pytest.approx(cert["r_star"] * math.cos(math.pi / 20))
    assert cert["lower"] <= cert["r_star"] <= cert["upper"]
    assert cert["subset_inside_superset"]
    assert cert["params"]["phi_count"] == 50 and cert["sub_size"] > 0
    basic = error_certificate(star, cfg, 50, algorithm="basic")
    assert basic["params"]["algorithm"] == "basic"
    with pytest.raises(DegenerateInputError):
        error_certificate(star, cfg, 0)
    with pytest.raises(ParameterError):
        error_certificate(star, cfg, 5, algorithm="magic")
