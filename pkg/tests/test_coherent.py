"""Coherent states: eigenvector property, overlaps, covariance."""

import numpy as np
import pytest

from spherecs import (CoherentState, ModelParams, coefficients_in_basis,
                      complexify, eigenvector_residual, norm_squared, overlap,
                      position_wavefunction, random_phase_point,
                      reproducing_kernel)
from spherecs.coherent import (certified_cutoff, holomorphy_residual,
                               rotation_covariance_check_d1)
from spherecs.geometry import PhasePoint
from spherecs.kernels import rho


def _state(dim, tau, rng, p_scale=0.8):
    params = ModelParams.from_tau(dim, tau)
    pt = random_phase_point(dim, rng, r=1.0, p_scale=p_scale)
    return CoherentState(params=params, label=complexify(params, pt))


def test_eigenvector_property():
    rng = np.random.default_rng(30)
    for dim in (1, 2):
        for tau in (0.2, 0.5, 1.0):
            for _ in range(4):
                st = _state(dim, tau, rng)
                assert eigenvector_residual(st) <= 1e-7


def test_overlap_equals_reproducing_kernel():
    rng = np.random.default_rng(31)
    for dim in (1, 2):
        tau = 0.5
        s1 = _state(dim, tau, rng)
        s2 = _state(dim, tau, rng)
        k = reproducing_kernel(dim, tau, s2.label, s1.label)
        ov = overlap(s1, s2, cutoff=certified_cutoff(dim, tau, 1.5, 1e-14))
        assert abs(ov - k) < 1e-10 * max(1.0, abs(k))


def test_norm_squared_matches_diagonal_kernel():
    rng = np.random.default_rng(32)
    for dim in (1, 2):
        st = _state(dim, 0.5, rng)
        n2 = norm_squared(st)
        k = reproducing_kernel(dim, 0.5, st.label, st.label)
        assert abs(n2 - k.real) < 1e-10 * k.real


def test_wavefunction_is_heat_kernel_at_complex_angle():
    rng = np.random.default_rng(33)
    for dim in (1, 2):
        st = _state(dim, 0.5, rng)
        x = random_phase_point(dim, rng, r=1.0, p_scale=0.0).x
        direct = complex(np.atleast_1d(position_wavefunction(st, x))[0])
        cosang = np.sum(st.label.a * x)
        ref = complex(rho(dim, 0.5, np.arccos(np.complex128(cosang))))
        assert abs(direct - ref) < 1e-12 * max(1.0, abs(ref))


def test_wavefunction_matches_basis_series():
    # sum_i c_i(a) e_i(x) reproduces the closed-form wavefunction
    rng = np.random.default_rng(34)
    from spherecs.transform import basis_matrix

    for dim in (1, 2):
        st = _state(dim, 0.5, rng)
        cutoff = certified_cutoff(dim, 0.5, 1.5, 1e-14)
        c = coefficients_in_basis(st, cutoff)
        x = random_phase_point(dim, rng, r=1.0, p_scale=0.0).x
        E = basis_matrix(dim, x[None, :], cutoff)
        series = complex((E @ c)[0])
        direct = complex(np.atleast_1d(position_wavefunction(st, x))[0])
        assert abs(series - direct) < 1e-10 * max(1.0, abs(direct))


def test_rotation_covariance_d1():
    rng = np.random.default_rng(35)
    st = _state(1, 0.5, rng)
    assert rotation_covariance_check_d1(st, 0.7) <= 1e-12


def test_holomorphy():
    rng = np.random.default_rng(36)
    for dim in (1, 2):
        st = _state(dim, 0.5, rng)
        assert holomorphy_residual(st) <= 1e-6


def test_certified_cutoff_controls_tail():
    for dim in (1, 2):
        for tol in (1e-8, 1e-12):
            cut = certified_cutoff(dim, 0.5, 1.0, tol)
            params = ModelParams.from_tau(dim, 0.5)
            pt = PhasePoint(
                x=np.array([1.0] + [0.0] * dim),
                p=np.array([0.0, 1.8] + [0.0] * (dim - 1)), r=1.0)
            st = CoherentState(params=params, label=complexify(params, pt))
            c = coefficients_in_basis(st, cut + 4)
            from spherecs.transform import basis_degrees
            deg = basis_degrees(dim, cut + 4)
            tail = np.linalg.norm(c[deg > cut])
            assert tail < 10 * tol * np.linalg.norm(c)
