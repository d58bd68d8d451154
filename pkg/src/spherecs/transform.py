"""Segal-Bargmann transform, resolution of the identity, inversion,
adjoint inversion, reproducing-kernel identity, and Husimi densities.

All identity checks are weak-sense (matrix elements against the truncated
spectral basis), and every reduction is a fixed-order sum, so results are
independent of thread counts.
"""

from __future__ import annotations

import math

import numpy as np

from .basis import degree_lambda
from .errors import UnsupportedDimension
from .geometry import ComplexSpherePoint
from .harmonics import conj_continued, ylm_index, ylm_table
from .kernels import gegenbauer_eval, rho
from .quadrature import PhaseQuadrature, certify_p_max, radial_weights

__all__ = [
    "basis_degrees",
    "holomorphic_matrix",
    "coherent_matrix",
    "basis_matrix",
    "resolve_identity_matrix",
    "isometry_gram",
    "sb_transform",
    "sb_transform_kernel",
    "sb_inverse_pointwise",
    "round_trip_residual",
    "round_trip_zonal_d3",
    "adjoint_inverse_coeffs",
    "conj_flip",
    "reproducing_identity_residual",
    "husimi_values",
    "husimi_report",
    "sum_rule_residual",
    "radial_generator_residual",
]


def basis_degrees(dim: int, cutoff: int) -> np.ndarray:
    """Degree of each basis index: |n| for d=1, l for d=2."""
    if dim == 1:
        return np.abs(np.arange(-cutoff, cutoff + 1)).astype(np.float64)
    if dim == 2:
        deg = np.empty((cutoff + 1) ** 2)
        for l in range(cutoff + 1):
            deg[l * l:(l + 1) ** 2] = l
        return deg
    raise UnsupportedDimension("basis indexing implemented for d = 1, 2")


def _d1_powers(zp: np.ndarray, cutoff: int) -> np.ndarray:
    """Columns z^n / sqrt(2 pi) for n = -cutoff..cutoff, z on the unit
    bilinear circle (z * (1/z) = 1 with 1/z = conj-coordinate)."""
    n_nodes = zp.shape[0]
    out = np.empty((n_nodes, 2 * cutoff + 1), dtype=np.complex128)
    mid = cutoff
    out[:, mid] = 1.0
    zm = 1.0 / zp
    acc_p = np.ones_like(zp)
    acc_m = np.ones_like(zp)
    for n in range(1, cutoff + 1):
        acc_p = acc_p * zp
        acc_m = acc_m * zm
        out[:, mid + n] = acc_p
        out[:, mid - n] = acc_m
    return out / math.sqrt(2.0 * math.pi)


def basis_matrix(dim: int, points: np.ndarray, cutoff: int) -> np.ndarray:
    """Basis functions at (possibly complex) sphere points, (N, nbasis)."""
    points = np.atleast_2d(np.asarray(points, dtype=np.complex128))
    if dim == 1:
        return _d1_powers(points[:, 0] + 1j * points[:, 1], cutoff)
    if dim == 2:
        return ylm_table(points, cutoff)
    raise UnsupportedDimension("basis matrix implemented for d = 1, 2")


def holomorphic_matrix(dim: int, tau: float, labels: np.ndarray,
                       cutoff: int) -> np.ndarray:
    """E[node, i] = (B e_i)(a_node) = e^{-tau lambda_i / 2} e_i(a_node)."""
    heat = np.exp(-tau * degree_lambda(dim, basis_degrees(dim, cutoff)) / 2.0)
    return basis_matrix(dim, labels, cutoff) * heat[None, :]


def coherent_matrix(dim: int, tau: float, labels: np.ndarray,
                    cutoff: int) -> np.ndarray:
    """C[node, i] = <e_i | psi_{a_node}> (continued conjugate basis values)."""
    labels = np.atleast_2d(np.asarray(labels, dtype=np.complex128))
    heat = np.exp(-tau * degree_lambda(dim, basis_degrees(dim, cutoff)) / 2.0)
    if dim == 1:
        tab = _d1_powers(labels[:, 0] - 1j * labels[:, 1], cutoff)
    elif dim == 2:
        tab = conj_continued(ylm_table(labels, cutoff), cutoff)
    else:
        raise UnsupportedDimension("coherent matrix implemented for d = 1, 2")
    return tab * heat[None, :]


def _momentum_weights(quad: PhaseQuadrature, weight: str) -> np.ndarray:
    if weight == "resolution":
        return quad.p_w_resolution
    if weight == "control":
        return quad.p_w_control
    if weight == "inversion":
        return quad.p_w_inversion
    raise ValueError(f"unknown weight mode {weight!r}")


def resolve_identity_matrix(dim: int, tau: float, cutoff: int,
                            quad: PhaseQuadrature,
                            weight: str = "resolution") -> np.ndarray:
    """M[i, j] = integral of <e_i|psi_a><psi_a|e_j> over phase space."""
    nb = len(basis_degrees(dim, cutoff))
    pw = _momentum_weights(quad, weight)
    M = np.zeros((nb, nb), dtype=np.complex128)
    for ix in range(quad.n_sphere):
        C = coherent_matrix(dim, tau, quad.labels_at(ix), cutoff)
        M += quad.x_w[ix] * ((C * pw[:, None]).T @ C.conj())
    return M


def isometry_gram(dim: int, tau: float, cutoff: int,
                  quad: PhaseQuadrature,
                  weight: str = "resolution") -> np.ndarray:
    """Gram matrix of the transformed basis under the phase-space measure."""
    nb = len(basis_degrees(dim, cutoff))
    pw = _momentum_weights(quad, weight)
    G = np.zeros((nb, nb), dtype=np.complex128)
    for ix in range(quad.n_sphere):
        E = holomorphic_matrix(dim, tau, quad.labels_at(ix), cutoff)
        G += quad.x_w[ix] * (E.conj().T @ (E * pw[:, None]))
    return G


def sb_transform(dim: int, tau: float, f_coeffs: np.ndarray,
                 labels: np.ndarray) -> np.ndarray:
    """Holomorphic samples (Bf)(a) from basis coefficients of f."""
    cutoff = _cutoff_from_len(dim, len(f_coeffs))
    return holomorphic_matrix(dim, tau, labels, cutoff) @ f_coeffs


def sb_transform_kernel(dim: int, tau: float, f_values: np.ndarray,
                        x_pts: np.ndarray, x_w: np.ndarray,
                        labels: np.ndarray) -> np.ndarray:
    """Quadrature path: (Bf)(a) = integral of rho_tau(angle(a, x)) f(x) dx."""
    labels = np.atleast_2d(np.asarray(labels, dtype=np.complex128))
    cosang = labels @ x_pts.T.astype(np.complex128)
    theta = np.arccos(cosang)
    ker = rho(dim, tau, theta, method="theta")
    return ker @ (x_w * f_values)


def _cutoff_from_len(dim: int, n: int) -> int:
    if dim == 1:
        return (n - 1) // 2
    if dim == 2:
        return int(round(math.sqrt(n))) - 1
    raise UnsupportedDimension(f"d={dim}")


def sb_inverse_pointwise(dim: int, tau: float, F, x: np.ndarray,
                         quad: PhaseQuadrature) -> complex:
    """f(x) = integral over the fiber of F(a(x, p)) nu(tau, p)
    (sinh p / p)^{d-1} d^d p, by the certified radial x directional rule."""
    labels = quad.labels_at_point(np.asarray(x, dtype=np.float64))
    vals = F(labels)
    return complex(np.sum(quad.p_w_inversion * vals))


def round_trip_residual(dim: int, tau: float, f_coeffs: np.ndarray,
                        quad: PhaseQuadrature) -> float:
    """Relative L^2 error of invert(transform(f)) against f on the sphere
    grid of the quadrature."""
    cutoff = _cutoff_from_len(dim, len(f_coeffs))
    rec = np.empty(quad.n_sphere, dtype=np.complex128)
    for ix in range(quad.n_sphere):
        labels = quad.labels_at(ix)
        F = holomorphic_matrix(dim, tau, labels, cutoff) @ f_coeffs
        rec[ix] = np.sum(quad.p_w_inversion * F)
    truth = basis_matrix(dim, quad.x_pts, cutoff) @ f_coeffs
    num = float(np.sum(quad.x_w * np.abs(rec - truth) ** 2))
    den = float(np.sum(quad.x_w * np.abs(truth) ** 2))
    return math.sqrt(num / den)


def round_trip_zonal_d3(tau: float, degree: int, n_chi: int = 24,
                        n_radial: int = 100, n_dirs: int = 24,
                        n_polar_dirs: int = 12,
                        tail_tol: float = 1e-14) -> float:
    """d=3 round trip on the zonal function U_degree(x . e).

    The transform of a zonal eigenfunction is closed-form,
    (Bf)(a) = e^{-tau l (l+2)/2} U_l(a . e), so only the inversion fiber is
    quadrature; the L^2 error uses the exact sin^2 zonal measure.
    """
    from .quadrature import build_phase_quadrature

    quad = build_phase_quadrature(3, tau, degree, n_radial=n_radial,
                                  n_dirs=n_dirs, n_polar_dirs=n_polar_dirs,
                                  n_polar_x=4, n_azimuth_x=4, n_chi_x=4,
                                  tail_tol=tail_tol)
    k = np.arange(1, n_chi + 1)
    chi = k * math.pi / (n_chi + 1)
    wchi = (math.pi / (n_chi + 1)) * np.sin(chi) ** 2 * 4.0 * math.pi
    heat = math.exp(-tau * degree * (degree + 2.0) / 2.0)
    rec = np.empty(n_chi, dtype=np.complex128)
    for i in range(n_chi):
        x = np.array([math.cos(chi[i]), math.sin(chi[i]), 0.0, 0.0])
        labels = quad.labels_at_point(x)
        F = heat * gegenbauer_eval(3, degree, labels[:, 0])
        rec[i] = np.sum(quad.p_w_inversion * F)
    truth = gegenbauer_eval(3, degree, np.cos(chi)).astype(np.complex128)
    num = float(np.sum(wchi * np.abs(rec - truth) ** 2))
    den = float(np.sum(wchi * np.abs(truth) ** 2))
    return math.sqrt(num / den)


def conj_flip(dim: int, cutoff: int, coeffs: np.ndarray) -> np.ndarray:
    """Coefficient action of pointwise conjugation of basis functions:
    d=1 index n -> -n; d=2 (l, m) -> (-1)^m (l, -m)."""
    out = np.empty_like(coeffs)
    if dim == 1:
        out[:] = coeffs[::-1]
        return out
    if dim == 2:
        for l in range(cutoff + 1):
            for m in range(-l, l + 1):
                sgn = -1.0 if (m % 2) else 1.0
                out[ylm_index(l, m)] = sgn * coeffs[ylm_index(l, -m)]
        return out
    raise UnsupportedDimension(f"d={dim}")


def adjoint_inverse_coeffs(dim: int, tau: float, cutoff: int,
                           F_at, quad: PhaseQuadrature) -> np.ndarray:
    """Basis coefficients of the adjoint-inversion B*F,
    (B*F)(x') = integral of conj(rho_tau(a, x')) F(a) dmu(a).

    ``F_at(labels)`` returns phase-space samples over a label batch.
    """
    nb = len(basis_degrees(dim, cutoff))
    g = np.zeros(nb, dtype=np.complex128)
    pw = quad.p_w_resolution
    for ix in range(quad.n_sphere):
        labels = quad.labels_at(ix)
        C = coherent_matrix(dim, tau, labels, cutoff)
        g += quad.x_w[ix] * (C.conj().T @ (pw * F_at(labels)))
    return conj_flip(dim, cutoff, g)


def reproducing_identity_residual(dim: int, tau: float, f_coeffs: np.ndarray,
                                  a: ComplexSpherePoint,
                                  quad: PhaseQuadrature) -> float:
    """|quadrature of R_tau(a, b) F(b) over dmu(b) - F(a)| / max(1, |F(a)|)."""
    cutoff = _cutoff_from_len(dim, len(f_coeffs))
    direct = complex(sb_transform(dim, tau, f_coeffs,
                                  a.a[None, :] / a.r)[0])
    acc = 0.0 + 0.0j
    pw = quad.p_w_resolution
    av = a.a / a.r
    for ix in range(quad.n_sphere):
        labels = quad.labels_at(ix)
        F = holomorphic_matrix(dim, tau, labels, cutoff) @ f_coeffs
        cosang = np.conj(labels) @ av
        kernel = rho(dim, 2.0 * tau, np.arccos(cosang), method="theta")
        acc += quad.x_w[ix] * np.sum(pw * kernel * F)
    return abs(acc - direct) / max(1.0, abs(direct))


def husimi_values(dim: int, tau: float, f_coeffs: np.ndarray,
                  quad: PhaseQuadrature):
    """Husimi density samples |<psi_a|f>|^2 on the phase grid, row per
    sphere node; together with the measure weights they integrate to
    ||f||^2."""
    cutoff = _cutoff_from_len(dim, len(f_coeffs))
    vals = np.empty((quad.n_sphere, quad.n_momentum))
    for ix in range(quad.n_sphere):
        C = coherent_matrix(dim, tau, quad.labels_at(ix), cutoff)
        amp = C.conj() @ f_coeffs
        vals[ix] = np.abs(amp) ** 2
    return vals


def husimi_report(dim: int, tau: float, f_coeffs: np.ndarray,
                  quad: PhaseQuadrature) -> dict:
    vals = husimi_values(dim, tau, f_coeffs, quad)
    mass = float(np.sum(quad.x_w * (vals @ quad.p_w_resolution)))
    return {"mass": mass, "min": float(np.min(vals))}


# ---------------------------------------------------------------------------
# measure/generator identities
# ---------------------------------------------------------------------------

def sum_rule_residual(a: np.ndarray) -> float:
    """|sum_{k<l} (a_k conj(a_l) - a_l conj(a_k))^2 + (|a|^4 - 1)| for a
    on the unit complexified sphere."""
    a = np.asarray(a, dtype=np.complex128)
    acc = 0.0 + 0.0j
    for k in range(len(a)):
        for l in range(k + 1, len(a)):
            acc += (a[k] * np.conj(a[l]) - a[l] * np.conj(a[k])) ** 2
    alpha = float(np.sum(np.abs(a) ** 2))
    return abs(acc + (alpha**2 - 1.0))


def radial_generator_residual(dim: int, p: float, phi, dphi, d2phi,
                              h: float = 1e-3) -> float:
    """FD check of the radial form of the label Laplacian.

    With J_kl = -i d/deps along a -> exp(i eps E_kl) a, applying
    J_a^2 = sum_{k<l} J_kl^2 to phi(R(a)) with cosh R = |a|^2 gives

        J_a^2 phi(R) = -4 [phi'' + (d-1) coth(R) phi'](R),   R = 2p,

    using sum (dR/deps)^2 = 4 and sum d^2(cosh R)/deps^2 = 4 d cosh R.
    The sign is PLUS inside the bracket (coth, not -coth): checked against
    phi = cosh, where the closed form is -4 d cosh R.
    """
    x = np.zeros(dim + 1)
    x[0] = 1.0
    pv = np.zeros(dim + 1)
    pv[1] = p
    a0 = math.cosh(p) * x + 1j * (math.sinh(p) / p if p > 1e-12 else 1.0) * pv

    def g(a):
        alpha = float(np.sum(np.abs(a) ** 2))
        return phi(math.acosh(max(alpha, 1.0)))

    def j2(step):
        total = 0.0
        for k in range(dim + 1):
            for l in range(k + 1, dim + 1):
                gen = np.zeros((dim + 1, dim + 1))
                gen[k, l] = 1.0
                gen[l, k] = -1.0
                flow_p = _expm_rot(1j * step * gen) @ a0
                flow_m = _expm_rot(-1j * step * gen) @ a0
                total += -(g(flow_p) - 2.0 * g(a0) + g(flow_m)) / step**2
        return total

    val = (4.0 * j2(h / 2.0) - j2(h)) / 3.0
    R = 2.0 * p
    expected = -4.0 * (d2phi(R) + (dim - 1.0) / math.tanh(R) * dphi(R))
    return abs(val - expected) / max(1.0, abs(expected))


def _expm_rot(m: np.ndarray) -> np.ndarray:
    from scipy.linalg import expm

    return expm(m)
