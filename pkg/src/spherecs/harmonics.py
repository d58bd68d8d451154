"""Sphere grids, tangent frames, and complex spherical harmonics.

The harmonic tables are valid at complex points (analytic continuation of
the degree-l harmonic polynomials), which is what the coherent-state and
transform modules need.
"""

from __future__ import annotations

import math

import numpy as np

from . import _accel
from .errors import UnsupportedDimension
from .kernels import _gauss_legendre, sphere_volume

__all__ = [
    "sphere_grid",
    "circle_grid",
    "tangent_frame",
    "ylm_table",
    "ylm_index",
    "conj_continued",
    "basis_size_d2",
]


def ylm_index(l: int, m: int) -> int:
    """Flat index of Y_l^m in a degree-major table: l*(l+1)+m."""
    return l * (l + 1) + m


def basis_size_d2(lmax: int) -> int:
    return (lmax + 1) ** 2


def circle_grid(n: int):
    """Uniform trapezoid grid on S^1 with total weight 2*pi."""
    theta = np.arange(n) * (2.0 * math.pi / n)
    pts = np.stack([np.cos(theta), np.sin(theta)], axis=1)
    w = np.full(n, 2.0 * math.pi / n)
    return pts, w, theta


def sphere_grid(d: int, n_polar: int = 24, n_azimuth: int = 48, n_chi: int = 24):
    """Quadrature grid on S^d with weights summing to vol(S^d).

    d=1: uniform trapezoid (spectrally accurate, exact for trig polynomials
    of degree < n_polar).
    d=2: Gauss-Legendre in cos(polar) x uniform azimuth.
    d=3: Gauss-Chebyshev (second kind) in the polar angle chi, whose weight
    sin^2(chi) is exactly the S^3 zonal measure, times an S^2 grid.
    """
    if d == 1:
        pts, w, _ = circle_grid(n_polar)
        return pts, w
    if d == 2:
        z, wz = _gauss_legendre(n_polar)
        phi = np.arange(n_azimuth) * (2.0 * math.pi / n_azimuth)
        wphi = 2.0 * math.pi / n_azimuth
        st = np.sqrt(1.0 - z**2)
        x = st[:, None] * np.cos(phi)[None, :]
        y = st[:, None] * np.sin(phi)[None, :]
        zz = np.broadcast_to(z[:, None], x.shape)
        pts = np.stack([x.ravel(), y.ravel(), zz.ravel()], axis=1)
        w = np.broadcast_to(wz[:, None] * wphi, x.shape).ravel().copy()
        return pts, w
    if d == 3:
        k = np.arange(1, n_chi + 1)
        chi = k * math.pi / (n_chi + 1)
        wchi = (math.pi / (n_chi + 1)) * np.sin(chi) ** 2
        sub_pts, sub_w = sphere_grid(2, n_polar, n_azimuth)
        cosc = np.cos(chi)
        sinc = np.sin(chi)
        pts = np.empty((n_chi * len(sub_pts), 4))
        w = np.empty(n_chi * len(sub_pts))
        for i in range(n_chi):
            sl = slice(i * len(sub_pts), (i + 1) * len(sub_pts))
            pts[sl, 0] = cosc[i]
            pts[sl, 1:] = sinc[i] * sub_pts
            w[sl] = wchi[i] * sub_w
        return pts, w
    raise UnsupportedDimension(f"d={d}")


def tangent_frame(x: np.ndarray) -> np.ndarray:
    """Deterministic orthonormal basis of the tangent space at x (|x| = 1).

    Returns a (d+1, d) matrix whose columns span {v : v . x = 0}.
    """
    x = np.asarray(x, dtype=np.float64)
    n = len(x)
    drop = int(np.argmax(np.abs(x)))
    cols = [k for k in range(n) if k != drop]
    frame = []
    for k in cols:
        v = np.zeros(n)
        v[k] = 1.0
        v = v - (v @ x) * x
        for u in frame:
            v = v - (v @ u) * u
        v /= np.linalg.norm(v)
        frame.append(v)
    return np.stack(frame, axis=1)


def ylm_table(points: np.ndarray, lmax: int) -> np.ndarray:
    """Y_l^m at (possibly complex) 3-vectors; shape (npts, (lmax+1)^2).

    Index layout is ylm_index(l, m).  At real unit vectors this matches the
    standard orthonormal complex spherical harmonics with Condon-Shortley
    phase; at complex points it is the continued harmonic polynomial.
    """
    points = np.asarray(points, dtype=np.complex128)
    single = points.ndim == 1
    pts = np.atleast_2d(points)
    out = _accel.ylm_table(pts[:, 0], pts[:, 1], pts[:, 2], lmax)
    return out[0] if single else out


def conj_continued(table: np.ndarray, lmax: int) -> np.ndarray:
    """Continuation of conj(Y_l^m): maps Y-table to (-1)^m Y_l^{-m} table.

    At real points this is literally the complex conjugate of the table;
    at complex points it is the holomorphic continuation of that relation.
    """
    out = np.empty_like(table)
    for l in range(lmax + 1):
        for m in range(-l, l + 1):
            sgn = -1.0 if (m % 2) else 1.0
            out[..., ylm_index(l, m)] = sgn * table[..., ylm_index(l, -m)]
    return out


def grid_volume_check(d, **kw) -> float:
    """Sum of grid weights; equals vol(S^d) up to roundoff."""
    _, w = sphere_grid(d, **kw)
    return float(np.sum(w)) - sphere_volume(d)
