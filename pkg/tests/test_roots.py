import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from toeplimit.errors import ConvergenceError, DegeneratePolynomialError, DomainError
from toeplimit.roots import (RootSet, all_roots, all_roots_batch, middle_moduli_gap,
                             positive_real_roots, strip)


def bisect(f, a, b, tol=1e-15):
    fa = f(a)
    while b - a > tol * max(1, abs(a)):
        c = 0.5 * (a + b)
        if (f(c) > 0) == (fa > 0):
            a, fa = c, f(c)
        else:
            b = c
    return 0.5 * (a + b)


def test_all_roots_examples():
    z = all_roots([1, 0, 1]).by_modulus()
    assert sorted(z, key=lambda w: w.imag) == pytest.approx([-1j, 1j], abs=1e-14)
    z = all_roots([1, 0, 0, 0, 0, 1]).roots
    assert np.allclose(np.abs(z), 1, atol=1e-14)
    want = np.exp(1j * np.pi * (2 * np.arange(5) + 1) / 5)
    assert all(np.min(np.abs(want - w)) < 1e-13 for w in z)
    z = all_roots([-6, 11, -6, 1]).roots
    assert np.allclose(np.sort(z.real), [1, 2, 3], atol=1e-12)
    assert np.allclose(z.imag, 0, atol=1e-12)


def test_strip_and_degenerate():
    c, nz = strip([0, 0, 2, 3, 1e-20])
    assert np.array_equal(c, [2, 3]) and nz == 2
    with pytest.raises(DegeneratePolynomialError):
        all_roots([5])
    with pytest.raises(DegeneratePolynomialError):
        all_roots([0, 0])
    # low-order zeros are roots at the origin
    rs = all_roots([0, 0, -1, 1])
    assert sorted(np.abs(rs.roots)) == pytest.approx([0, 0, 1], abs=1e-15)


def test_convergence_error_carries_best():
    with pytest.raises(ConvergenceError) as err:
        all_roots(np.exp(1j * np.arange(30.0)), max_iter=1)
    assert err.value.best is not None and len(err.value.best) == 29


def test_batch_matches_single():
    rng = np.random.default_rng(1)
    C = rng.normal(size=(20, 8)) + 1j * rng.normal(size=(20, 8))
    Z, res = all_roots_batch(C)
    assert np.all(res <= 1e-10)
    for row, z in zip(C, Z):
        assert np.allclose(all_roots(row).roots, z, atol=1e-10)


def test_deterministic():
    c = np.exp(1j * np.arange(12.0)) * np.arange(1, 13)
    a, b = all_roots(c), all_roots(c)
    assert a.roots.tobytes() == b.roots.tobytes()


def test_positive_real_roots_examples():
    lo = positive_real_roots([-1, 0, 0, 0, 2, 1])
    want = bisect(lambda x: x ** 5 + 2 * x ** 4 - 1, 0.7, 0.8)
    assert lo[0] == pytest.approx(want, abs=1e-12)
    hi = positive_real_roots([-1, 0, 0, 0, -2, 1])
    want = bisect(lambda x: x ** 5 - 2 * x ** 4 - 1, 2.0, 2.1)
    assert hi[-1] == pytest.approx(want, abs=1e-12)
    assert positive_real_roots([1, 0, 1]) == []
    assert positive_real_roots([-2, -1, 1]) == pytest.approx([2])


def test_middle_moduli_gap_examples():
    assert middle_moduli_gap(all_roots([1, 0, 0, 0, 0, 1]), 4) == pytest.approx(0, abs=1e-13)
    assert middle_moduli_gap(all_roots([1, -2.5, 1]), 1) == pytest.approx(1.5, abs=1e-13)
    assert middle_moduli_gap(all_roots([1, -2, 1]), 1) == pytest.approx(0, abs=1e-7)
    with pytest.raises(DomainError):
        middle_moduli_gap(all_roots([1, -2, 1]), 2)


def test_rootset_ordering():
    rs = RootSet(np.array([2, -1, 1j, 0.5]), 0.0)
    # ties in modulus broken by argument: angle(1j) = pi/2 < angle(-1) = pi
    assert np.array_equal(rs.by_modulus(), [0.5, 1j, -1, 2])
    assert np.array_equal(rs.moduli, [0.5, 1, 1, 2])


cplx = st.complex_numbers(max_magnitude=1, allow_nan=False, allow_infinity=False)


@given(st.lists(cplx, min_size=2, max_size=21).filter(lambda c: abs(c[-1]) > 1e-3 and abs(c[0]) > 1e-3))
def test_reconstruction(c):
    c = np.array(c)
    z = all_roots(c).roots
    rebuilt = np.poly(z)[::-1] * c[-1]
    assert np.max(np.abs(rebuilt - c)) <= 1e-6 * max(1.0, np.max(np.abs(c)))


@given(st.lists(st.floats(-3, 3), min_size=2, max_size=12).filter(lambda c: abs(c[-1]) > 1e-2))
def test_positive_real_roots_residual(c):
    c = np.array(c)
    deg = c.size - 1
    for rho in positive_real_roots(c):
        assert rho > 0
        val = np.polyval(c[::-1], rho)
        assert abs(val) <= 1e-9 * np.sum(np.abs(c)) * max(1.0, rho) ** deg
