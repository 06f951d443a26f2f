import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from toeplimit.algebraic import (MEMBERSHIP_TOL, candidate_points, membership, membership_gaps,
                                 subset)
from toeplimit.errors import ParameterError
from toeplimit.roots import all_roots
from toeplimit.symbol import LaurentSymbol, q_polynomial

ARM = 5 * 4 ** -0.8


def star_distance(z):
    """Distance to the five-arm star {r e^{2 pi i k / 5}: 0 <= r <= ARM}."""
    d = np.full(np.shape(z), np.inf)
    for k in range(5):
        u = np.exp(2j * np.pi * k / 5)
        t = np.clip((z * np.conj(u)).real, 0, ARM)
        d = np.minimum(d, np.abs(z - t * u))
    return d


def test_membership_examples(star):
    assert membership(star, 0)
    assert membership(star, 1.0 * np.exp(2j * np.pi / 5))
    assert not membership(star, 3)
    assert membership_gaps(star, [3])[0] > 1


def test_membership_independent_solver(star, main_symbol):
    for b, lam in ((star, 0.5), (main_symbol, 1 + 1j), (main_symbol, 5.0)):
        z = np.sort(np.abs(np.roots(q_polynomial(b, lam)[::-1])))
        gap = z[b.r] - z[b.r - 1]
        assert membership_gaps(b, [lam])[0] == pytest.approx(gap, abs=1e-9)


def test_candidate_points_critical(star):
    c = candidate_points(star, [], include_critical=True)
    tips = ARM * np.exp(2j * np.pi * np.arange(5) / 5)
    assert c.size == 5
    assert all(np.min(np.abs(c - t)) < 1e-12 for t in tips)


def test_candidate_points_phi_pi(cosine):
    c = candidate_points(cosine, [math.pi], include_critical=False)
    assert np.allclose(c, [0], atol=1e-15)


def test_candidate_points_degree_drop():
    # s = 2 and phi = pi: the top coefficient vanishes, leaving 2 + 2 z^2, roots +-i
    b = LaurentSymbol({-1: 1, 1: 1, 2: 1})
    c = candidate_points(b, [math.pi], include_critical=False)
    assert np.allclose(c, [-1], atol=1e-14)


def test_subset_star(star):
    sp = subset(star, 100)
    assert len(sp) > 0 and sp.tol == MEMBERSHIP_TOL
    assert np.max(star_distance(sp.points)) < 1e-6
    assert np.max(np.abs(sp.points)) == pytest.approx(ARM, abs=1e-12)


def test_subset_single_phi_is_contained(star):
    small = subset(star, 1, phis=[math.pi / 2]).points
    big = subset(star, 100, phis=np.r_[math.pi * np.arange(1, 101) / 100, math.pi / 2]).points
    assert all(np.min(np.abs(big - z)) < 1e-9 for z in small)


def test_subset_critical_closure(star, main_symbol):
    # critical values passing membership are present regardless of N; the tips
    # are double roots, so their computed root gap sits near the tolerance
    for b in (star, main_symbol):
        crit = candidate_points(b, [], include_critical=True)
        members = crit[membership_gaps(b, crit) <= MEMBERSHIP_TOL]
        for N in (1, 7):
            p = subset(b, N).points
            assert all(np.min(np.abs(p - t)) < 1e-12 for t in members)


def test_subset_errors(star):
    with pytest.raises(ParameterError):
        subset(star, 0)


def test_subset_main_sound(main_symbol):
    sp = subset(main_symbol, 200)
    # independent re-check with a companion-matrix solver
    for lam in sp.points[:: max(1, len(sp) // 50)]:
        z = np.sort(np.abs(np.roots(q_polynomial(main_symbol, lam)[::-1])))
        assert z[main_symbol.r] - z[main_symbol.r - 1] <= 1e-6
    assert sp.to_csv().count("\n") == len(sp)


@given(st.floats(0.05, 3.1))
def test_subset_points_pass_membership(phi):
    b = LaurentSymbol({-2: 1 + 1j, 0: 0.5, 1: -2})
    sp = subset(b, 1, phis=[phi])
    assert np.all(membership_gaps(b, sp.points) <= MEMBERSHIP_TOL)
