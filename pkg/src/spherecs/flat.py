"""Flat (R^d) reference model: Gaussian coherent states, resolution of the
identity with density gamma, and the momentum-fiber inversion analog.

Everything here has closed-form truth, so this module doubles as the
regression oracle for the sphere pipelines and as the small-tau limit of
the sphere coherent states.
"""

from __future__ import annotations

import math

import numpy as np

from .kernels import rho
from .params import FlatParams

__all__ = [
    "flat_complexify",
    "flat_complexify_series",
    "flat_coherent_wavefunction",
    "gamma_density",
    "hermite_functions",
    "flat_transform_values",
    "flat_resolution_matrix",
    "flat_inversion_residual",
    "small_tau_limit_check",
]


def flat_complexify(params: FlatParams, x: np.ndarray, p: np.ndarray) -> np.ndarray:
    """Canonical complex coordinate a = x + i p / (m omega)."""
    return np.asarray(x, dtype=np.float64) + 1j * np.asarray(p) / (
        params.m * params.omega)


def flat_complexify_series(params: FlatParams, x, p, n_terms: int) -> np.ndarray:
    """Power series of the complexifier flow applied to x_k.

    The iterated bracket terminates after the linear term ({{x, p^2}, p^2}
    vanishes), so n_terms >= 2 is already exact.
    """
    x = np.asarray(x, dtype=np.complex128)
    acc = x.copy()
    if n_terms >= 2:
        acc = acc + 1j * np.asarray(p) / (params.m * params.omega)
    return acc


def flat_coherent_wavefunction(params: FlatParams, a, x):
    """<delta_x | psi_a> = (2 pi sigma)^{-d/2} exp(-(x - a)^2 / (2 sigma))."""
    s = params.sigma
    a = np.atleast_1d(np.asarray(a, dtype=np.complex128))
    x = np.atleast_1d(np.asarray(x, dtype=np.complex128))
    q2 = np.sum((x - a) ** 2, axis=-1) if x.ndim > 1 or a.ndim > 1 else np.sum((x - a) ** 2)
    return (2.0 * math.pi * s) ** (-params.d / 2.0) * np.exp(-q2 / (2.0 * s))


def gamma_density(params: FlatParams, y):
    """Resolution density gamma(a) = (pi sigma)^{-d/2} exp(-(Im a)^2 / sigma);
    equals 2^d nu(2 sigma, 2 Im a) with the Euclidean Gaussian kernel nu."""
    s = params.sigma
    y = np.asarray(y, dtype=np.float64)
    y2 = np.sum(y * y, axis=-1) if y.ndim > 1 else y * y
    return (math.pi * s) ** (-params.d / 2.0) * np.exp(-y2 / s)


def hermite_functions(n_max: int, x, sigma: float = 1.0) -> np.ndarray:
    """Orthonormal oscillator eigenfunctions h_0..h_{n_max} on R, table of
    shape (n_max + 1, len(x)); valid at complex x."""
    x = np.atleast_1d(np.asarray(x, dtype=np.complex128))
    u = x / math.sqrt(sigma)
    out = np.empty((n_max + 1, len(x)), dtype=np.complex128)
    out[0] = math.pi ** (-0.25) * np.exp(-u * u / 2.0) / sigma ** 0.25
    if n_max >= 1:
        out[1] = math.sqrt(2.0) * u * out[0]
    for n in range(1, n_max):
        out[n + 1] = (math.sqrt(2.0 / (n + 1)) * u * out[n]
                      - math.sqrt(n / (n + 1.0)) * out[n - 1])
    return out


def flat_transform_values(params: FlatParams, f_values_at, a: np.ndarray,
                          x_half_width: float = 12.0, n_nodes: int = 240):
    """(Bf)(a) = int K_sigma(a - x) f(x) dx on R (d=1), Gauss-Legendre.

    ``f_values_at`` maps a real node array to f values; ``a`` may be a
    complex array of evaluation points.
    """
    gl, glw = np.polynomial.legendre.leggauss(n_nodes)
    xs = x_half_width * gl
    ws = x_half_width * glw
    fv = f_values_at(xs)
    a = np.atleast_1d(np.asarray(a, dtype=np.complex128))
    s = params.sigma
    ker = (2.0 * math.pi * s) ** -0.5 * np.exp(
        -(a[:, None] - xs[None, :]) ** 2 / (2.0 * s))
    return ker @ (ws * fv)


def flat_resolution_matrix(params: FlatParams, n_herm: int = 6,
                           n_x: int = 110, n_y: int = 130,
                           x_half_width: float = 11.0,
                           y_half_width: float = 9.0) -> np.ndarray:
    """M[i, j] = int conj(Bh_i)(a) (Bh_j)(a) gamma(Im a) dRe(a) dIm(a)
    for the first n_herm Hermite functions (d=1); contract M = I."""
    s = params.sigma
    glx, glxw = np.polynomial.legendre.leggauss(n_x)
    gly, glyw = np.polynomial.legendre.leggauss(n_y)
    xs = x_half_width * glx
    xw = x_half_width * glxw
    ys = y_half_width * math.sqrt(s) * gly
    yw = y_half_width * math.sqrt(s) * glyw
    a = (xs[:, None] + 1j * ys[None, :]).ravel()
    B = np.empty((n_herm, len(a)), dtype=np.complex128)
    for i in range(n_herm):
        B[i] = flat_transform_values(
            params, lambda t, i=i: hermite_functions(n_herm - 1, t, s)[i], a,
            x_half_width=x_half_width + 2.0)
    w2d = (xw[:, None] * (yw * gamma_density(params, ys))[None, :]).ravel()
    return (B.conj() * w2d[None, :]) @ B.T


def flat_inversion_residual(params: FlatParams, n_herm: int = 6,
                            n_y: int = 180, y_half_width: float = 13.0,
                            n_x_samples: int = 41) -> float:
    """Max error of f(x) = int (Bf)(x + i y) (2 pi sigma)^{-1/2}
    e^{-y^2 / 2 sigma} dy over the first n_herm Hermite functions."""
    s = params.sigma
    gly, glyw = np.polynomial.legendre.leggauss(n_y)
    ys = y_half_width * math.sqrt(s) * gly
    yw = y_half_width * math.sqrt(s) * glyw
    wgt = yw * (2.0 * math.pi * s) ** -0.5 * np.exp(-ys**2 / (2.0 * s))
    xs = np.linspace(-4.0 * math.sqrt(s), 4.0 * math.sqrt(s), n_x_samples)
    worst = 0.0
    truth = hermite_functions(n_herm - 1, xs, s)
    for i in range(n_herm):
        a = (xs[:, None] + 1j * ys[None, :]).ravel()
        Bf = flat_transform_values(
            params, lambda t, i=i: hermite_functions(n_herm - 1, t, s)[i], a)
        rec = Bf.reshape(len(xs), n_y) @ wgt
        worst = max(worst, float(np.max(np.abs(rec - truth[i]))))
    return worst


def small_tau_limit_check(dim: int, taus=(0.02, 0.01)) -> dict:
    """Sphere coherent state vs flat Gaussian near the peak at small tau.

    Peak discrepancy is |rho_tau^dim(0) (2 pi tau)^{d/2} - 1|; also reports
    the angular width against the flat prediction sqrt(tau / 2).
    """
    report = {"dim": dim, "taus": list(taus), "peak_discrepancy": []}
    for tau in taus:
        peak = float(np.real(rho(dim, tau, 0.0, method="theta")))
        flat_peak = (2.0 * math.pi * tau) ** (-dim / 2.0)
        report["peak_discrepancy"].append(abs(peak / flat_peak - 1.0))
    # d=1 is exactly flat at the peak (image corrections ~ e^{-2 pi^2/tau}),
    # so allow equality at roundoff when testing the trend
    report["monotone"] = all(
        b <= a + 1e-12 for a, b in zip(report["peak_discrepancy"],
                                       report["peak_discrepancy"][1:]))
    # width of the position density |rho_tau(theta)|^2 at the smallest tau
    tau = min(taus)
    th = np.linspace(-math.pi, math.pi, 4001)
    dens = np.real(rho(dim, tau, np.abs(th), method="theta")) ** 2
    dens *= np.sin(np.abs(th)) ** (dim - 1) if dim > 1 else 1.0
    width = math.sqrt(float(np.trapezoid(th**2 * dens, th)
                            / np.trapezoid(dens, th)))
    if dim > 1:
        # radial measure shifts the second moment; compare 1d section instead
        dens1 = np.real(rho(dim, tau, np.abs(th), method="theta")) ** 2
        width = math.sqrt(float(np.trapezoid(th**2 * dens1, th)
                                / np.trapezoid(dens1, th)))
    report["width"] = width
    report["width_expected"] = math.sqrt(tau / 2.0)
    report["width_rel_error"] = abs(width / report["width_expected"] - 1.0)
    return report
