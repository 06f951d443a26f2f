import cmath
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from toeplimit.errors import DomainError
from toeplimit.roots import all_roots
from toeplimit.symbol import (LaurentSymbol, RhoInterval, coeff_sup_bound, derivative_polynomial,
                              eval_symbol, q_polynomial, scaled, second_derivative_bound)

coef = st.complex_numbers(max_magnitude=5, allow_nan=False, allow_infinity=False)


@st.composite
def symbols(draw, max_r=4, max_s=4):
    r = draw(st.integers(1, max_r))
    s = draw(st.integers(1, max_s))
    terms = {n: draw(coef) for n in range(-r, s + 1)}
    terms[-r] = draw(coef.filter(lambda c: abs(c) > 0.1))
    terms[s] = draw(coef.filter(lambda c: abs(c) > 0.1))
    return LaurentSymbol(terms)


def test_eval_examples(star):
    assert eval_symbol(star, 1) == pytest.approx(2)
    w = cmath.exp(1j * math.pi / 5)
    assert abs(eval_symbol(star, w)) < 1e-15
    b = LaurentSymbol({1: 1}, banded=False)
    assert eval_symbol(b, 1j) == 1j


def test_eval_zero_raises(star):
    with pytest.raises(DomainError):
        eval_symbol(star, 0)
    with pytest.raises(DomainError):
        eval_symbol(star, np.array([1.0, 0.0]))


def test_eval_vectorized(main_symbol):
    z = np.exp(1j * np.linspace(0, 6, 7))
    direct = [sum(c * zz ** n for n, c in main_symbol.terms.items()) for zz in z]
    assert np.allclose(eval_symbol(main_symbol, z), direct, rtol=1e-13)


def test_validation():
    with pytest.raises(DomainError):
        LaurentSymbol({1: 1})
    with pytest.raises(DomainError):
        LaurentSymbol({-2: 1, 0: 3})
    with pytest.raises(DomainError):
        LaurentSymbol({})
    with pytest.raises(DomainError):
        LaurentSymbol({-1: 1, 1: float("nan")})
    b = LaurentSymbol({-2: 1, 0: 0, 3: 2})
    assert (b.r, b.s) == (2, 3)
    assert b.coefficient(0) == 0 and b.coefficient(-2) == 1


def test_json_roundtrip(main_symbol):
    assert LaurentSymbol.from_json(main_symbol.to_json()) == main_symbol
    with pytest.raises(DomainError):
        LaurentSymbol.from_json({"terms": [{"n": 1, "re": 1}, {"n": 1, "re": 2}]})
    with pytest.raises(DomainError):
        LaurentSymbol.from_json({"terms": [{"n": 1.5, "re": 1}]})
    with pytest.raises(DomainError):
        LaurentSymbol.from_json({"nope": []})


def test_scaled_examples(star):
    assert scaled(star, 1) == star
    s2 = scaled(star, 2)
    assert s2.coefficient(-4) == pytest.approx(1 / 16) and s2.coefficient(1) == pytest.approx(2)
    b = LaurentSymbol({-1: 3, 2: 5})
    s = scaled(b, 10)
    assert s.coefficient(-1) == pytest.approx(0.3) and s.coefficient(2) == pytest.approx(500)
    with pytest.raises(DomainError):
        scaled(b, 0)


def test_coeff_sup_bound(star, main_symbol):
    assert coeff_sup_bound(star) == 2
    assert coeff_sup_bound(main_symbol) == pytest.approx(10 + 7 * math.sqrt(2))


def test_second_derivative_bound(star):
    t = LaurentSymbol({1: 1}, banded=False)
    assert second_derivative_bound(t, 1) == 2
    assert second_derivative_bound(star, 1) == 34
    # dense sampling oracle of |cos v| + |sin v|
    assert second_derivative_bound(t, 1, "sampled") == pytest.approx(1.2 * math.sqrt(2), rel=1e-6)
    with pytest.raises(DomainError):
        second_derivative_bound(star, -1)


def test_q_polynomial_examples(star, cosine):
    assert np.array_equal(q_polynomial(star, 0), [1, 0, 0, 0, 0, 1])
    assert np.array_equal(q_polynomial(cosine, 2), [1, -2, 1])
    assert np.array_equal(q_polynomial(star, 1), [1, 0, 0, 0, -1, 1])


def test_derivative_polynomial_examples(star, cosine):
    assert np.array_equal(derivative_polynomial(star), [-4, 0, 0, 0, 0, 1])
    assert np.array_equal(derivative_polynomial(cosine), [-1, 0, 1])
    assert np.array_equal(derivative_polynomial(LaurentSymbol({-1: 1, 2: 1})), [-1, 0, 0, 2])


def test_rho_interval():
    RhoInterval(0.5, 2)
    for lo, hi in ((0, 2), (1.5, 2), (0.5, 0.9)):
        with pytest.raises(DomainError):
            RhoInterval(lo, hi)


@given(symbols(), st.floats(1e-3, 1e3))
def test_scaled_roundtrip(b, rho):
    back = scaled(scaled(b, rho), 1 / rho)
    for n, c in b.terms.items():
        assert abs(back.coefficient(n) - c) <= 1e-12 * abs(c) + 1e-300


@given(symbols(), st.floats(0.2, 5), st.floats(0, 2 * math.pi))
def test_scaled_eval(b, rho, v):
    t = cmath.exp(1j * v)
    lhs = eval_symbol(scaled(b, rho), t)
    rhs = eval_symbol(b, rho * t)
    mag = sum(abs(c) * rho ** n for n, c in b.terms.items())
    assert abs(lhs - rhs) <= 1e-12 * mag


@given(symbols(), coef)
def test_q_polynomial_roots_solve_symbol(b, lam):
    z = all_roots(q_polynomial(b, lam)).roots
    assert np.all(np.abs(eval_symbol(b, z) - lam) <= 1e-8 * (1 + abs(lam)))


@given(symbols())
def test_coeff_sup_bound_dominates(b):
    v = np.exp(2j * np.pi * np.arange(1024) / 1024)
    assert coeff_sup_bound(b) >= np.max(np.abs(eval_symbol(b, v))) * (1 - 1e-12)
