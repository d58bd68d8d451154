"""Flat-space reference model: closed-form Gaussian coherent states."""

import math

import numpy as np

from spherecs.flat import (flat_complexify, flat_complexify_series,
                           flat_coherent_wavefunction, flat_inversion_residual,
                           flat_resolution_matrix, gamma_density,
                           hermite_functions, small_tau_limit_check)
from spherecs.kernels import nu
from spherecs.params import FlatParams


def test_complexifier_closed_form_and_series():
    fp = FlatParams(d=2, m=1.3, omega=0.7, hbar=0.9)
    rng = np.random.default_rng(50)
    x = rng.normal(size=(5, 2))
    p = rng.normal(size=(5, 2))
    a = flat_complexify(fp, x, p)
    assert np.max(np.abs(a - (x + 1j * p / (fp.m * fp.omega)))) < 1e-15
    # the bracket series terminates: two terms are already exact
    s = flat_complexify_series(fp, x, p, 2)
    assert np.max(np.abs(s - a)) < 1e-15


def test_gamma_is_scaled_hyperbolic_kernel():
    # gamma(a) = 2^d nu_d-product(2 sigma, 2 Im a) for the Euclidean Gaussian
    fp = FlatParams(d=1)
    ys = np.linspace(0, 3, 11)
    g = gamma_density(fp, ys)
    ref = 2.0 * np.real(nu(1, 2.0 * fp.sigma, 2.0 * ys))
    assert np.max(np.abs(g - ref)) < 1e-14


def test_hermite_functions_orthonormal():
    sigma = 0.8
    nodes, w = np.polynomial.hermite.hermgauss(120)
    # integrate h_i h_j against dx using the Gauss-Hermite rule
    xs = nodes * math.sqrt(sigma)
    ws = w * math.sqrt(sigma) * np.exp(nodes**2)
    H = np.real(hermite_functions(5, xs, sigma))
    G = (H * ws) @ H.T
    assert np.max(np.abs(G - np.eye(6))) < 1e-8


def test_coherent_wavefunction_peak_and_norm():
    fp = FlatParams(d=1)
    s = fp.sigma
    val = complex(flat_coherent_wavefunction(fp, np.array([0.3 + 0.4j]),
                                             np.array([0.3 + 0.4j])))
    assert abs(val - (2 * math.pi * s) ** -0.5) < 1e-14


def test_resolution_of_identity():
    M = flat_resolution_matrix(FlatParams(d=1), n_herm=6)
    assert np.max(np.abs(M - np.eye(6))) <= 1e-8


def test_inversion():
    assert flat_inversion_residual(FlatParams(d=1), n_herm=6) <= 1e-8


def test_small_tau_limit():
    for dim in (1, 2, 3):
        rep = small_tau_limit_check(dim, taus=(0.02, 0.01))
        assert rep["peak_discrepancy"][0] <= 0.05
        assert rep["monotone"]
    rep1 = small_tau_limit_check(1, taus=(0.02, 0.01))
    assert rep1["width_rel_error"] <= 0.2
