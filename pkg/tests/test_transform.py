"""Resolution of the identity, transform round trips, Husimi densities."""

import math

import numpy as np
import pytest

from spherecs import (build_phase_quadrature, husimi_report, isometry_gram,
                      resolve_identity_matrix, round_trip_residual)
from spherecs.errors import CutoffInsufficient
from spherecs.kernels import nu
from spherecs.transform import (adjoint_inverse_coeffs, basis_degrees,
                                radial_generator_residual,
                                reproducing_identity_residual,
                                round_trip_zonal_d3, sum_rule_residual)


@pytest.fixture(scope="module")
def quad_d1():
    return build_phase_quadrature(1, 0.5, 8, n_radial=160)


@pytest.fixture(scope="module")
def quad_d2():
    return build_phase_quadrature(2, 0.5, 4, n_radial=100, n_dirs=24)


def test_resolution_identity_d1(quad_d1):
    M = resolve_identity_matrix(1, 0.5, 8, quad_d1)
    assert np.max(np.abs(M - np.eye(len(M)))) <= 1e-8


def test_resolution_identity_d2(quad_d2):
    M = resolve_identity_matrix(2, 0.5, 4, quad_d2)
    assert np.max(np.abs(M - np.eye(len(M)))) <= 1e-4


def test_negative_control_fails_loudly(quad_d1, quad_d2):
    # the un-doubled radial weight nu(tau, p) must NOT resolve the identity
    C1 = resolve_identity_matrix(1, 0.5, 8, quad_d1, weight="control")
    assert np.max(np.abs(C1 - np.eye(len(C1)))) > 10 * 1e-8
    C2 = resolve_identity_matrix(2, 0.5, 4, quad_d2, weight="control")
    assert np.max(np.abs(C2 - np.eye(len(C2)))) > 10 * 1e-4


def test_radial_moment_identity(quad_d1):
    # int e^{2np} nu_1(2 tau, 2p) 2 dp = e^{tau n^2} (full line)
    tau = 0.5
    w = quad_d1.rho_glw * 2.0 * np.real(nu(1, 2 * tau, 2 * quad_d1.rho_nodes))
    for n in range(9):
        val = float(np.sum(w * 2.0 * np.cosh(2.0 * n * quad_d1.rho_nodes)))
        assert abs(val - math.exp(tau * n * n)) <= 1e-10 * math.exp(tau * n * n)


def test_isometry_gram(quad_d1, quad_d2):
    G1 = isometry_gram(1, 0.5, 8, quad_d1)
    assert np.max(np.abs(G1 - np.eye(len(G1)))) <= 1e-8
    G2 = isometry_gram(2, 0.5, 4, quad_d2)
    assert np.max(np.abs(G2 - np.eye(len(G2)))) <= 1e-4


def test_round_trip_d1(quad_d1):
    rng = np.random.default_rng(40)
    n = len(basis_degrees(1, 8))
    f = rng.normal(size=n) + 1j * rng.normal(size=n)
    assert round_trip_residual(1, 0.5, f, quad_d1) <= 1e-6


def test_round_trip_d2(quad_d2):
    rng = np.random.default_rng(41)
    n = len(basis_degrees(2, 4))
    f = rng.normal(size=n) + 1j * rng.normal(size=n)
    assert round_trip_residual(2, 0.5, f, quad_d2) <= 1e-5


def test_round_trip_zonal_d3():
    assert round_trip_zonal_d3(0.5, 3) <= 1e-5


def test_adjoint_inverse(quad_d1):
    rng = np.random.default_rng(42)
    n = len(basis_degrees(1, 8))
    f = rng.normal(size=n) + 1j * rng.normal(size=n)
    from spherecs.transform import coherent_matrix, holomorphic_matrix

    def F_at(labels):
        return holomorphic_matrix(1, 0.5, labels, 8) @ f

    g = adjoint_inverse_coeffs(1, 0.5, 8, F_at, quad_d1)
    assert np.max(np.abs(g - f)) <= 1e-6 * np.max(np.abs(f))


def test_reproducing_identity(quad_d1):
    from spherecs import ModelParams, complexify, random_phase_point

    rng = np.random.default_rng(43)
    n = len(basis_degrees(1, 8))
    f = rng.normal(size=n) + 1j * rng.normal(size=n)
    params = ModelParams.from_tau(1, 0.5)
    a = complexify(params, random_phase_point(1, rng, r=1.0, p_scale=0.6))
    assert reproducing_identity_residual(1, 0.5, f, a, quad_d1) <= 1e-6


def test_sum_rule():
    # sum_{k<l} (a_k conj(a_l) - a_l conj(a_k))^2 = -(alpha^2 - 1)
    from spherecs import ModelParams, complexify, random_phase_point

    rng = np.random.default_rng(44)
    params = ModelParams.from_tau(3, 0.5)
    for _ in range(10):
        pt = random_phase_point(3, rng, r=1.0, p_scale=1.0)
        assert sum_rule_residual(complexify(params, pt).a) <= 1e-11


@pytest.mark.parametrize("dim", [1, 2, 3])
def test_radial_generator(dim):
    phi = np.cosh
    dphi = np.sinh
    d2phi = np.cosh
    for p in (0.4, 0.9, 1.3):
        assert radial_generator_residual(dim, p, phi, dphi, d2phi) <= 1e-5


def test_husimi_nonnegative_mass_one():
    rng = np.random.default_rng(45)
    for dim, cutoff in ((1, 6), (2, 3)):
        quad = build_phase_quadrature(dim, 0.5, cutoff,
                                      n_radial=120, n_dirs=20)
        n = len(basis_degrees(dim, cutoff))
        for _ in range(3):
            f = rng.normal(size=n) + 1j * rng.normal(size=n)
            f /= np.linalg.norm(f)
            rep = husimi_report(dim, 0.5, f, quad)
            assert rep["min"] >= -1e-12
            assert abs(rep["mass"] - 1.0) <= 1e-6


def test_quadrature_certification_raises():
    with pytest.raises(CutoffInsufficient):
        build_phase_quadrature(1, 2.0, 60, n_radial=40)
