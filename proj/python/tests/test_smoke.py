import cmath
import math

import pytest

import ptheta


def test_model_fatou_is_model_weight():
    f = ptheta.model(1, -1.0)
    E = ptheta.Fatou(f, 0.5)
    x = 0.2 + 0.05j
    assert abs(E(x) - (1 / x - 2.0)) < 1e-10


def test_abel_equation():
    f = ptheta.polynomial([1, -1, 0.2])
    E = ptheta.Fatou(f, 0.1)
    for x in (0.05, 0.03 + 0.01j):
        assert abs(E(f(x)) - E(x) - 1) < 1e-9


def test_residual_invariant():
    assert abs(ptheta.residual_invariant(ptheta.polynomial([1, 1])) - 1) < 1e-12


def test_theta_closed_form_for_model():
    T = ptheta.Theta(ptheta.model(1, -1.0), 0.5)
    s = -1.0 + 1.0j
    exact = cmath.exp(-2 * s) / (1 - cmath.exp(-s))
    assert abs(T(s) - exact) < 1e-9 * abs(exact)
    assert abs(T.residue_at_zero() - 1) < 1e-8


def test_invariant_routes_agree():
    f = ptheta.prenormalize(ptheta.polynomial([1, -1, 0.2]))
    E = ptheta.Fatou(f, 0.1)
    T = ptheta.Theta(f, 0.1)
    (m, A), = ptheta.horn_coefficients(E, 1)
    assert m == 1
    expected = A * cmath.exp(2j * math.pi * E.prenormal_constant)
    assert abs(ptheta.theta_invariant(T, 1) - expected) < 1e-4 * abs(expected)


def test_minkowski_model():
    fit = ptheta.minkowski(ptheta.model(1, -1.0), 0.5, 100000)
    assert abs(fit["D"] - 0.5) < 0.02


def test_bad_germ_raises():
    with pytest.raises(ValueError):
        ptheta.polynomial([2, 1])
