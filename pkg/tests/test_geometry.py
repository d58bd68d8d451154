"""Phase-space geometry and the complexifier map."""

import numpy as np
import pytest

from spherecs import (ModelParams, PhasePoint, complex_angle, complexify,
                      complexify_series, decomplexify, random_phase_point)
from spherecs.geometry import conjugation_symmetry_check, dirac_bracket


def test_complexify_known_value():
    # x along e0, p along e1, unit parameters: a = (cosh p, i sinh p, 0)
    params = ModelParams(d=2, r=1.0, m=1.0, omega=1.0, hbar=0.5)
    pt = PhasePoint(x=np.array([1.0, 0.0, 0.0]), p=np.array([0.0, 0.7, 0.0]),
                    r=1.0)
    a = complexify(params, pt).a
    expected = np.array([np.cosh(0.7), 1j * np.sinh(0.7), 0.0])
    assert np.max(np.abs(a - expected)) < 1e-14


def test_on_sphere_constraint_random():
    rng = np.random.default_rng(1)
    for d in (1, 2, 3):
        params = ModelParams(d=d, r=1.7, m=0.9, omega=1.3, hbar=0.8)
        for _ in range(50):
            pt = random_phase_point(d, rng, r=params.r, p_scale=1.0)
            a = complexify(params, pt).a
            assert abs(np.sum(a * a) - params.r**2) < 1e-12


def test_series_matches_closed_form():
    rng = np.random.default_rng(2)
    for d in (1, 2, 3):
        params = ModelParams(d=d, r=1.3, m=1.1, omega=0.8, hbar=1.0)
        for _ in range(10):
            pt = random_phase_point(d, rng, r=params.r, p_scale=1.0)
            a = complexify(params, pt).a
            s = complexify_series(params, pt, 40).a
            assert np.max(np.abs(a - s)) < 1e-12 * max(1.0, np.max(np.abs(a)))


def test_decomplexify_round_trip():
    rng = np.random.default_rng(3)
    for d in (1, 2, 3):
        params = ModelParams(d=d, r=1.0, m=1.0, omega=1.0, hbar=0.6)
        for _ in range(30):
            pt = random_phase_point(d, rng, r=1.0, p_scale=1.2)
            back = decomplexify(params, complexify(params, pt))
            assert np.max(np.abs(back.x - pt.x)) < 1e-12
            assert np.max(np.abs(back.p - pt.p)) < 1e-12


def test_conjugation_symmetry():
    rng = np.random.default_rng(4)
    for d in (1, 2, 3):
        params = ModelParams(d=d, r=1.0, m=1.0, omega=1.0, hbar=0.5)
        for _ in range(20):
            pt = random_phase_point(d, rng, r=1.0)
            assert conjugation_symmetry_check(params, pt, tol=1e-14)


def test_complex_angle_over_pole_is_imaginary():
    params = ModelParams(d=2, r=1.0, m=1.0, omega=1.0, hbar=0.5)
    pt = PhasePoint(x=np.array([1.0, 0.0, 0.0]), p=np.array([0.0, 0.9, 0.0]),
                    r=1.0)
    a = complexify(params, pt)
    x = complexify(params, PhasePoint(x=pt.x, p=np.zeros(3), r=1.0))
    th = complex_angle(a, x)
    assert abs(th.real) < 1e-12
    assert abs(th.imag + 0.9) < 1e-12 or abs(th.imag - 0.9) < 1e-12


def test_dirac_bracket_canonical_pairs():
    # {x_k, x_l} = 0 and {x_k, p_l} = delta_kl - x_k x_l / r^2 on T*(S^d)
    rng = np.random.default_rng(5)
    pt = random_phase_point(2, rng, r=1.0)
    x0 = lambda x, p: x[0]
    x1 = lambda x, p: x[1]
    p1 = lambda x, p: p[1]
    assert abs(dirac_bracket(x0, x1, pt)) < 1e-7
    expected = -pt.x[0] * pt.x[1]
    assert abs(dirac_bracket(x0, p1, pt) - expected) < 1e-6


def test_invalid_phase_point_rejected():
    with pytest.raises(Exception):
        PhasePoint(x=np.array([1.0, 1.0]), p=np.array([0.0, 0.0]), r=1.0)
    with pytest.raises(Exception):
        # momentum not tangent to the sphere
        PhasePoint(x=np.array([1.0, 0.0]), p=np.array([1.0, 0.0]), r=1.0)
