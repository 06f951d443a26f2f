import math

import numpy as np
import pytest

from geom_oracles import disk_samples
from toeplimit.errors import DegenerateInputError
from toeplimit.geometry import FixedPointFrame, Region, area, covers, intersect, winding_number
from toeplimit.spectrum import (Partition, discretize, expanded, expansion_radius, pipeline_frame,
                                rho_bounds)
from toeplimit.symbol import LaurentSymbol, second_derivative_bound

T = LaurentSymbol({1: 1}, banded=False)
T_INV = LaurentSymbol({-1: 1}, banded=False)


def bisect(f, a, b):
    for _ in range(200):
        c = 0.5 * (a + b)
        if (f(c) > 0) == (f(a) > 0):
            a = c
        else:
            b = c
    return 0.5 * (a + b)


def test_partition():
    p = Partition.uniform(4, 0, 1)
    assert np.allclose(p.points, [0, 0.25, 0.5, 0.75, 1]) and p.granularity == 0.25
    assert Partition(np.array([0, 0.1, 1])).granularity == pytest.approx(0.9)
    with pytest.raises(DegenerateInputError):
        Partition(np.array([0, 0.5, 0.5, 1]))


def test_rho_bounds_star(star):
    iv = rho_bounds(star)
    assert iv.rho_l == pytest.approx(bisect(lambda x: x ** 5 + 2 * x ** 4 - 1, 0.7, 0.8), abs=1e-10)
    assert iv.rho_h == pytest.approx(bisect(lambda x: x ** 5 - 2 * x ** 4 - 1, 2.0, 2.1), abs=1e-10)


def test_rho_bounds_symmetric(cosine):
    iv = rho_bounds(cosine)
    assert iv.rho_l == pytest.approx(1 / iv.rho_h, rel=1e-12)
    iv10 = rho_bounds(LaurentSymbol({-1: 10, 1: 10}))
    assert iv10.rho_l == pytest.approx(math.sqrt(2) - 1, abs=1e-12)
    assert iv10.rho_h == pytest.approx(math.sqrt(2) + 1, abs=1e-12)


def test_discretize_square():
    sp = discretize(T, 1.0, 4)
    assert np.allclose(sp.ring, [1, 1j, -1, -1j])
    reg = sp.region()
    assert area(reg) == pytest.approx(2)
    assert winding_number(reg.rings[0], (0, 0)) == 1
    assert winding_number(discretize(T_INV, 1.0, 4).region().rings[0], (0, 0)) == -1
    with pytest.raises(DegenerateInputError):
        discretize(T, 1.0, 2)
    with pytest.raises(DegenerateInputError):
        discretize(T, 1.0, Partition.uniform(8, 0, math.pi))


def test_discretize_vertices_match_symbol(main_symbol):
    sp = discretize(main_symbol, 1.3, 16)
    z = 1.3 * np.exp(2j * np.pi * np.arange(16) / 16)
    assert np.allclose(sp.ring, main_symbol(z), rtol=1e-14)
    assert sp.delta_v == pytest.approx(2 * math.pi / 16)


@pytest.mark.parametrize("m", [64, 256])
def test_disk_hausdorff_bound(m):
    # inscribed regular m-gon: d_H(disk, polygon) = 1 - cos(pi/m)
    ring = discretize(T, 1.0, m).ring
    mid = 0.5 * (ring + np.roll(ring, -1))
    d = 1 - np.min(np.abs(mid))
    assert d == pytest.approx(1 - math.cos(math.pi / m), rel=1e-9)
    assert d <= second_derivative_bound(T, 1.0) * (2 * math.pi / m) ** 2


@pytest.mark.parametrize("m", [8, 64])
def test_expanded_contains_disk(m):
    sp = discretize(T, 1.0, m)
    assert expansion_radius(T, 1.0, sp.delta_v) == pytest.approx(2 * (2 * math.pi / m) ** 2)
    P = expanded(sp, T)
    pts = disk_samples(np.zeros((1, 2)), 1.0, k=400, rings=5)
    assert np.all(P.contains(pts))


def test_expanded_covers_polygon(main_symbol):
    frame = FixedPointFrame(1e6)
    for rho in (0.5, 1.0, 2.0):
        sp = discretize(main_symbol, rho, 200)
        assert covers(expanded(sp, main_symbol, frame), sp.region(frame), 1e-12)


def test_expanded_triangle():
    sp = discretize(T, 1.0, 3)
    P = expanded(sp, T)
    delta = expansion_radius(T, 1.0, sp.delta_v)
    v = np.stack([sp.ring.real, sp.ring.imag], axis=1)
    assert np.all(P.contains(disk_samples(v, delta * 0.999)))


def test_rotation_invariance(main_symbol):
    m = 128
    a = discretize(main_symbol, 1.0, m).region()
    ring = np.roll(discretize(main_symbol, 1.0, m).ring, 17)
    b = Region.from_rings([ring])
    sym = area(a) + area(b) - 2 * area(intersect(a, b))
    assert sym <= 1e-6


def test_pipeline_frame_fits(main_symbol):
    iv = rho_bounds(main_symbol)
    f = pipeline_frame(main_symbol, iv, 1000)
    for rho in (iv.rho_l, 1.0, iv.rho_h):
        sp = discretize(main_symbol, rho, 1000)
        expanded(sp, main_symbol, f)  # no FrameError
