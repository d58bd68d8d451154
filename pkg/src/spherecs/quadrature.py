"""Phase-space quadrature over T*(S^d) = (sphere point) x (tangent momentum).

The resolution-of-identity measure is, in dimensionless variables,

    nu_d(2 tau, 2 p) * 2^d * (sinh 2p / 2p)^{d-1} d^d p dx,

and the inversion fiber measure is nu_d(tau, p) * (sinh p / p)^{d-1} d^d p.
In radial coordinates (p = rho * u, u on the unit tangent (d-1)-sphere) the
radial densities collapse to 2 nu(2 tau, 2 rho) sinh^{d-1}(2 rho) and
nu(tau, rho) sinh^{d-1}(rho).  The negative-control weight swaps
nu(2 tau, 2 rho) for nu(tau, rho) while keeping the Jacobian factor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import CutoffInsufficient, UnsupportedDimension
from .kernels import nu, unit_ball_boundary_volume
from .harmonics import sphere_grid, tangent_frame

__all__ = [
    "PhaseQuadrature",
    "certify_p_max",
    "build_phase_quadrature",
    "radial_weights",
    "tangent_directions",
]


def certify_p_max(dim: int, tau: float, max_degree: int,
                  tol: float = 1e-14) -> float:
    """Radial cutoff with certified tail: the integrand grows at most like
    e^{2 L p} against the Gaussian decay e^{-p^2/tau} of nu(2 tau, 2 p)."""
    L = max_degree + dim - 1
    p = tau * L + math.sqrt((tau * L) ** 2 + 2.0 * tau * math.log(1.0 / tol))
    return p + 0.5


def tangent_directions(dim: int, n_dirs: int = 24, n_polar: int = 12):
    """Unit vectors u in tangent coordinates R^d with weights summing to
    c_d = vol(S^{d-1})."""
    if dim == 1:
        return np.array([[1.0], [-1.0]]), np.array([1.0, 1.0])
    if dim == 2:
        ang = np.arange(n_dirs) * (2.0 * math.pi / n_dirs)
        return (np.stack([np.cos(ang), np.sin(ang)], axis=1),
                np.full(n_dirs, 2.0 * math.pi / n_dirs))
    if dim == 3:
        pts, w = sphere_grid(2, n_polar=n_polar, n_azimuth=n_dirs)
        return pts, w
    raise UnsupportedDimension(f"d={dim}")


def radial_weights(dim: int, tau: float, rho_nodes: np.ndarray):
    """(resolution, control, inversion) radial densities at the nodes."""
    sh2 = np.sinh(2.0 * rho_nodes) ** (dim - 1)
    sh1 = np.sinh(rho_nodes) ** (dim - 1)
    nu_res = np.real(nu(dim, 2.0 * tau, 2.0 * rho_nodes))
    nu_inv = np.real(nu(dim, tau, rho_nodes))
    return 2.0 * nu_res * sh2, 2.0 * nu_inv * sh2, nu_inv * sh1


def _sinhc(z):
    out = np.where(np.abs(z) < 1e-8, 1.0 + z * z / 6.0,
                   np.sinh(np.where(np.abs(z) < 1e-8, 1.0, z))
                   / np.where(np.abs(z) < 1e-8, 1.0, z))
    return out


@dataclass
class PhaseQuadrature:
    """Product quadrature: sphere grid x (radial x directional) momentum grid.

    ``labels_at(i)`` returns the complexified labels a(x_i, p) for every
    momentum node over sphere node i; the three weight vectors share the
    momentum node ordering (radial-major).
    """

    dim: int
    tau: float
    p_max: float
    x_pts: np.ndarray
    x_w: np.ndarray
    rho_nodes: np.ndarray
    rho_glw: np.ndarray
    dirs: np.ndarray
    dirs_w: np.ndarray
    p_w_resolution: np.ndarray = field(init=False)
    p_w_control: np.ndarray = field(init=False)
    p_w_inversion: np.ndarray = field(init=False)
    p_vecs: np.ndarray = field(init=False)
    p_norms: np.ndarray = field(init=False)

    def __post_init__(self):
        w_res, w_ctl, w_inv = radial_weights(self.dim, self.tau, self.rho_nodes)
        radw = self.rho_glw
        # radial-major layout: node (ir, iu) -> ir * n_dirs + iu
        self.p_vecs = (self.rho_nodes[:, None, None]
                       * self.dirs[None, :, :]).reshape(-1, self.dim)
        self.p_norms = np.repeat(self.rho_nodes, len(self.dirs))
        du = self.dirs_w[None, :]
        self.p_w_resolution = (w_res * radw)[:, None] * du
        self.p_w_control = (w_ctl * radw)[:, None] * du
        self.p_w_inversion = (w_inv * radw)[:, None] * du
        self.p_w_resolution = self.p_w_resolution.ravel()
        self.p_w_control = self.p_w_control.ravel()
        self.p_w_inversion = self.p_w_inversion.ravel()

    @property
    def n_sphere(self) -> int:
        return len(self.x_w)

    @property
    def n_momentum(self) -> int:
        return len(self.p_norms)

    def labels_at_point(self, x: np.ndarray) -> np.ndarray:
        """Complexified labels a = cosh(p) x + i sinhc(p) p_ambient over the
        momentum grid attached to the sphere point x."""
        frame = tangent_frame(x)                      # (d+1, d)
        p_amb = self.p_vecs @ frame.T                 # (Np, d+1)
        pn = self.p_norms
        return (np.cosh(pn)[:, None] * x[None, :]
                + 1j * _sinhc(pn)[:, None] * p_amb)

    def labels_at(self, i: int) -> np.ndarray:
        return self.labels_at_point(self.x_pts[i])


def build_phase_quadrature(dim: int, tau: float, max_degree: int,
                           n_radial: int = 120, n_dirs: int = 24,
                           n_polar_x: int | None = None,
                           n_azimuth_x: int | None = None,
                           n_chi_x: int | None = None,
                           n_polar_dirs: int = 12,
                           tail_tol: float = 1e-14) -> PhaseQuadrature:
    """Assemble the full phase-space rule for basis degrees <= max_degree."""
    if tau <= 0:
        raise ValueError("tau must be positive")
    p_max = certify_p_max(dim, tau, max_degree, tail_tol)
    if p_max > 60.0:
        raise CutoffInsufficient(
            f"certified p_max = {p_max:.1f} is impractically large; "
            "reduce max_degree or increase tau")
    # sphere grid exact for products of two basis functions
    if dim == 1:
        npo = n_polar_x or (4 * max_degree + 8)
        x_pts, x_w = sphere_grid(1, n_polar=npo)
    elif dim == 2:
        npo = n_polar_x or (2 * max_degree + 4)
        naz = n_azimuth_x or (4 * max_degree + 6)
        x_pts, x_w = sphere_grid(2, n_polar=npo, n_azimuth=naz)
    elif dim == 3:
        npo = n_polar_x or (2 * max_degree + 4)
        naz = n_azimuth_x or (4 * max_degree + 6)
        nch = n_chi_x or (2 * max_degree + 4)
        x_pts, x_w = sphere_grid(3, n_polar=npo, n_azimuth=naz, n_chi=nch)
    else:
        raise UnsupportedDimension(f"d={dim}")
    gl, glw = np.polynomial.legendre.leggauss(n_radial)
    rho_nodes = 0.5 * p_max * (gl + 1.0)
    rho_glw = 0.5 * p_max * glw
    dirs, dirs_w = tangent_directions(dim, n_dirs=n_dirs, n_polar=n_polar_dirs)
    return PhaseQuadrature(dim=dim, tau=tau, p_max=p_max, x_pts=x_pts,
                           x_w=x_w, rho_nodes=rho_nodes, rho_glw=rho_glw,
                           dirs=dirs, dirs_w=dirs_w)
