"""Heat kernels on the d-sphere and on d-dimensional hyperbolic space.

The spherical kernel ``rho_d(tau, theta)`` is evaluated by two independent
methods:

* ``theta_sum`` -- periodized-Gaussian image sums (d = 1, 3) and, for d = 2,
  a contour integral from theta to pi with the endpoint singularity removed
  by the substitution phi = theta + (pi - theta) u**2;
* ``spectral`` -- zonal eigenfunction expansions with certified degree
  cutoffs and overflow-safe scaled recurrences.

Both accept complex angles (analytic continuation).  Normalization is fixed
so that the kernel has unit mass against the unnormalized surface measure of
the radius-one sphere.

The hyperbolic kernel ``nu_d(s, R)`` is the heat kernel of H^d, used as the
phase-space weight elsewhere in the package.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import _accel
from .errors import ConvergenceError, UnsupportedDimension

__all__ = [
    "TruncationSpec",
    "KernelEvalRequest",
    "rho_sphere",
    "rho_sphere_spectral",
    "rho",
    "rho_theta",
    "rho_spectral",
    "rho_recursion_check",
    "nu_hyperbolic",
    "nu",
    "nu_recursion_check",
    "nu_normalization_check",
    "gegenbauer_eval",
    "sphere_volume",
    "fold_angle",
]

TAU_SPECTRAL_MIN = 0.05
AUTO_METHOD_SPLIT = 0.5  # theta_sum below, spectral at or above

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class TruncationSpec:
    """Truncation controls for kernel evaluation.

    ``max_image_index`` / ``max_degree`` cap the automatic certified choices
    (0 means "no cap"); ``target_abs_error`` drives both certificates.
    """

    max_image_index: int = 0
    max_degree: int = 0
    contour_nodes: int = 200
    target_abs_error: float = 1e-12

    def __post_init__(self):
        if self.contour_nodes <= 0:
            raise ValueError("contour_nodes must be positive")
        if not (0.0 < self.target_abs_error <= 1e-4):
            raise ValueError("target_abs_error must lie in (0, 1e-4]")
        if self.max_image_index < 0 or self.max_degree < 0:
            raise ValueError("truncation caps must be nonnegative")


@dataclass(frozen=True)
class KernelEvalRequest:
    """A single kernel-evaluation request (sphere or hyperbolic)."""

    dim: int
    time: float
    argument: complex
    method: str = "auto"
    truncation: TruncationSpec = field(default_factory=TruncationSpec)

    def __post_init__(self):
        if self.dim not in (1, 2, 3):
            raise UnsupportedDimension(f"dim must be 1, 2 or 3, got {self.dim}")
        if self.time <= 0:
            raise ValueError("time must be positive")
        if self.method not in ("theta_sum", "spectral", "auto"):
            raise ValueError(f"unknown method {self.method!r}")


def sphere_volume(d: int) -> float:
    """Surface volume of the unit d-sphere embedded in R^{d+1}."""
    return 2.0 * math.pi ** ((d + 1) / 2.0) / math.gamma((d + 1) / 2.0)


def unit_ball_boundary_volume(d: int) -> float:
    """Volume of the unit (d-1)-sphere in R^d: 2 pi^{d/2} / Gamma(d/2)."""
    return 2.0 * math.pi ** (d / 2.0) / math.gamma(d / 2.0)


def fold_angle(theta):
    """Reduce Re(theta) into [0, pi] using 2*pi periodicity and evenness."""
    theta = np.asarray(theta, dtype=np.complex128)
    re = np.mod(theta.real, _TWO_PI)
    th = re + 1j * theta.imag
    # reflect (pi, 2*pi) back onto (0, pi); the kernel is even in theta
    mask = re > math.pi
    th = np.where(mask, _TWO_PI - th, th)
    return th


@lru_cache(maxsize=32)
def _gauss_legendre(n):
    x, w = np.polynomial.legendre.leggauss(n)
    return x, w


def _gl_on(a, b, n):
    x, w = _gauss_legendre(n)
    half = 0.5 * (b - a)
    return a + half * (x + 1.0), half * w


def _image_window(tau, im_max, target):
    """Certified image-sum window: first omitted Gaussian term < target."""
    m = max(-math.log(target), 1.0) + 10.0
    n = (math.pi + math.sqrt(im_max * im_max + 2.0 * tau * m)) / _TWO_PI
    return int(math.ceil(n)) + 1


def _resolve_nmax(tau, theta, trunc):
    im_max = float(np.max(np.abs(np.asarray(theta).imag))) if np.size(theta) else 0.0
    n = _image_window(tau, im_max, trunc.target_abs_error)
    if trunc.max_image_index:
        n = min(n, trunc.max_image_index)
    return n


# ---------------------------------------------------------------------------
# theta-sum (image) evaluation
# ---------------------------------------------------------------------------

def rho_theta(dim, tau, theta, trunc=None):
    """Spherical heat kernel via periodized-Gaussian sums; complex-safe."""
    trunc = trunc if trunc is not None else TruncationSpec()
    if tau <= 0:
        raise ConvergenceError("tau must be positive")
    theta = fold_angle(theta)
    scalar = theta.ndim == 0
    theta = np.atleast_1d(theta)
    if dim == 1:
        nmax = _resolve_nmax(tau, theta, trunc)
        out = (_TWO_PI * tau) ** -0.5 * _accel.image_sum(theta, tau, nmax, 0)
    elif dim == 2:
        out = _rho2_contour(tau, theta, trunc)
    elif dim == 3:
        out = _rho3_theta(tau, theta, trunc)
    else:
        raise UnsupportedDimension(f"dim={dim}")
    return out[0] if scalar else out


def _rho3_theta(tau, theta, trunc):
    nmax = _resolve_nmax(tau, theta, trunc)
    pref = (_TWO_PI * tau) ** -1.5 * math.exp(tau / 2.0)
    sin_t = np.sin(theta)
    out = np.empty_like(theta)
    regular = np.abs(sin_t) >= 1e-6
    if np.any(regular):
        th = theta[regular]
        out[regular] = pref * _accel.image_sum(th, tau, nmax, 1) / sin_t[regular]
    if np.any(~regular):
        # Removable singularity: the image sum F vanishes (odd) at theta = 0
        # and at theta = pi, so use the odd Taylor expansion around the
        # nearer center together with delta/sin(delta) = 1 + delta^2/6 + ...
        th = theta[~regular]
        near_pi = np.abs(th.real - math.pi) < 1.0
        center = np.where(near_pi, math.pi, 0.0)
        sign = np.where(near_pi, -1.0, 1.0)
        delta = th - center
        c = center.astype(np.complex128)
        f1 = _accel.image_sum(c, tau, nmax, 3)
        f3 = _accel.image_sum(c, tau, nmax, 4)
        ratio = 1.0 + delta**2 / 6.0 + 7.0 * delta**4 / 360.0
        out[~regular] = pref * sign * (f1 + f3 * delta**2 / 6.0) * ratio
    return out


def _rho2_contour(tau, theta, trunc):
    # Path degenerates at theta = pi exactly; the kernel is smooth and even
    # about pi, so nudge essentially-real angles by 1e-5 (error O(1e-10)).
    theta = np.array(theta, dtype=np.complex128)
    near_pi = (np.abs(theta.real - math.pi) < 1e-5) & (np.abs(theta.imag) < 1e-5)
    theta[near_pi] = (math.pi - 1e-5) + 1j * theta.imag[near_pi]

    u, w = _gl_on(0.0, 1.0, trunc.contour_nodes)
    th = theta[:, None]
    uu = u[None, :]
    span = math.pi - th
    phi = th + span * uu**2
    half_a = th + span * uu**2 / 2.0  # (phi + theta) / 2
    half_b = span * uu**2 / 2.0       # (phi - theta) / 2
    nmax = _resolve_nmax(tau, phi, trunc)
    s_alt = _accel.image_sum(phi, tau, nmax, 2)
    # cos(theta) - cos(phi) = 2 sin(half_a) sin(half_b); both factors have
    # nonnegative real part for Re(theta) in [0, pi], so the principal
    # square root of each factor tracks the analytic branch.
    denom = math.sqrt(2.0) * np.sqrt(np.sin(half_a)) * np.sqrt(np.sin(half_b))
    integrand = s_alt * 2.0 * span * uu / denom
    integral = integrand @ w
    pref = (_TWO_PI * tau) ** -1.0 * math.exp(tau / 8.0) * (math.pi * tau) ** -0.5
    return pref * integral


# ---------------------------------------------------------------------------
# spectral evaluation
# ---------------------------------------------------------------------------

def _spectral_degree(dim, tau, im_max, target, cap):
    m = max(-math.log(target), 1.0) + 8.0
    L = 8.0
    for _ in range(3):
        L = (im_max + math.sqrt(im_max**2 + 2.0 * tau * (m + math.log(2.0 * L + 2.0)))) / tau
    L = int(math.ceil(L)) + 2
    if cap:
        L = min(L, cap)
    return max(L, 2)


def rho_spectral(dim, tau, theta, trunc=None):
    """Spherical heat kernel via zonal eigenfunction sums; complex-safe."""
    trunc = trunc if trunc is not None else TruncationSpec()
    if tau < TAU_SPECTRAL_MIN:
        raise ConvergenceError(
            f"spectral method needs tau >= {TAU_SPECTRAL_MIN} (got {tau}); "
            "use the theta_sum method for smaller tau"
        )
    theta = fold_angle(theta)
    scalar = theta.ndim == 0
    theta = np.atleast_1d(theta)
    out = np.empty_like(theta)
    imvals = np.abs(theta.imag)
    for c in np.unique(imvals):
        sel = imvals == c
        L = _spectral_degree(dim, tau, c, trunc.target_abs_error, trunc.max_degree)
        z = np.cos(theta[sel])
        ls = np.arange(L + 1, dtype=np.float64)
        if dim == 1:
            th = theta[sel][:, None]
            n = ls[None, 1:]
            terms = np.exp(-tau * n**2 / 2.0 + 1j * n * th)
            terms = terms + np.exp(-tau * n**2 / 2.0 - 1j * n * th)
            out[sel] = (1.0 + terms.sum(axis=1)) / _TWO_PI
        elif dim == 2:
            coefhat = (2 * ls + 1) / (4.0 * math.pi) * np.exp(
                -tau * ls * (ls + 1) / 2.0 + ls * c)
            out[sel] = _accel.legendre_sum(z, coefhat, c)
        elif dim == 3:
            coefhat = (ls + 1) / (2.0 * math.pi**2) * np.exp(
                -tau * ls * (ls + 2) / 2.0 + ls * c)
            out[sel] = _accel.chebu_sum(z, coefhat, c)
        else:
            raise UnsupportedDimension(f"dim={dim}")
    return out[0] if scalar else out


# ---------------------------------------------------------------------------
# public dispatch
# ---------------------------------------------------------------------------

def rho(dim, tau, theta, method="auto", trunc=None):
    """Evaluate rho_tau^dim at (possibly complex) angle(s) theta."""
    trunc = trunc if trunc is not None else TruncationSpec()
    if method == "auto":
        method = "theta_sum" if tau < AUTO_METHOD_SPLIT else "spectral"
    if method in ("theta_sum", "theta"):
        return rho_theta(dim, tau, theta, trunc)
    if method == "spectral":
        return rho_spectral(dim, tau, theta, trunc)
    raise ValueError(f"unknown method {method!r}")


def rho_sphere(req: KernelEvalRequest):
    """Request-record front end for the spherical kernel."""
    return rho(req.dim, req.time, req.argument, req.method, req.truncation)


def rho_sphere_spectral(req: KernelEvalRequest):
    """Request-record front end forcing the spectral method."""
    return rho_spectral(req.dim, req.time, req.argument, req.truncation)


def rho_recursion_check(dim_from, tau, theta, trunc=TruncationSpec()):
    """Return (inductive value, direct value) for rho^{d+2} from rho^d.

    Only dim_from = 1 (producing d = 3) is wired: the d = 1 image sum is
    differentiated analytically term by term and divided by -2*pi*sin(theta)
    with the e^{d*tau/2} factor.
    """
    if dim_from != 1:
        raise UnsupportedDimension("recursion implemented for dim_from=1 only")
    theta = fold_angle(theta)
    scalar = theta.ndim == 0
    theta = np.atleast_1d(theta)
    nmax = _resolve_nmax(tau, theta, trunc)
    # d/dtheta of (2 pi tau)^{-1/2} sum exp(-u^2/2tau) is
    # -(2 pi tau)^{-1/2} / tau * sum u exp(-u^2/2tau)
    drho1 = -((_TWO_PI * tau) ** -0.5 / tau) * _accel.image_sum(theta, tau, nmax, 1)
    rec = -math.exp(tau / 2.0) / (_TWO_PI * np.sin(theta)) * drho1
    direct = rho_theta(3, tau, theta, trunc)
    if scalar:
        return rec[0], direct[0]
    return rec, direct


# ---------------------------------------------------------------------------
# hyperbolic kernels
# ---------------------------------------------------------------------------

def nu(dim, s, R, trunc=None):
    """Hyperbolic heat kernel nu_dim(s, R) for R >= 0."""
    trunc = trunc if trunc is not None else TruncationSpec()
    if s <= 0:
        raise ConvergenceError("s must be positive")
    R = np.asarray(R, dtype=np.float64)
    scalar = R.ndim == 0
    R = np.atleast_1d(R)
    if np.any(R < 0):
        raise ValueError("R must be nonnegative")
    if dim == 1:
        out = (_TWO_PI * s) ** -0.5 * np.exp(-R**2 / (2.0 * s))
    elif dim == 2:
        out = _nu2(s, R, trunc)
    elif dim == 3:
        ratio = np.where(R < 1e-6, 1.0 - R**2 / 6.0, R / np.sinh(np.where(R == 0, 1.0, R)))
        out = (_TWO_PI * s) ** -1.5 * math.exp(-s / 2.0) * ratio * np.exp(-R**2 / (2.0 * s))
    else:
        raise UnsupportedDimension(f"dim={dim}")
    return out[0] if scalar else out


def _nu2(s, R, trunc):
    # integral over rho from R to infinity, substituted rho = R + t^2, with
    # cosh(rho) - cosh(R) = 2 sinh(R + t^2/2) sinh(t^2/2)
    m = max(-math.log(trunc.target_abs_error), 1.0) + 10.0
    t_max = (2.0 * s * m) ** 0.25 + 1.0
    t, w = _gl_on(0.0, t_max, max(trunc.contour_nodes, 160))
    tt = t[None, :]
    Rr = R[:, None]
    rho_v = Rr + tt**2
    denom = np.sqrt(2.0 * np.sinh(Rr + tt**2 / 2.0) * np.sinh(tt**2 / 2.0))
    integ = (rho_v * np.exp(-rho_v**2 / (2.0 * s)) * 2.0 * tt / denom) @ w
    pref = (_TWO_PI * s) ** -1.0 * math.exp(-s / 8.0) * (math.pi * s) ** -0.5
    return pref * integ


def nu_hyperbolic(req: KernelEvalRequest):
    """Request-record front end for the hyperbolic kernel."""
    return nu(req.dim, req.time, req.argument, req.truncation)


def nu_recursion_check(dim_from, s, R, trunc=TruncationSpec()):
    """Return (inductive value, direct value) for nu_{d+2} from nu_d.

    dim_from = 1: d/dR of the Gaussian is analytic, giving
    nu_3 = -e^{-s/2} / (2 pi sinh R) * dnu_1/dR.
    """
    if dim_from != 1:
        raise UnsupportedDimension("recursion implemented for dim_from=1 only")
    R = np.atleast_1d(np.asarray(R, dtype=np.float64))
    dnu1 = (_TWO_PI * s) ** -0.5 * np.exp(-R**2 / (2.0 * s)) * (-R / s)
    rec = -math.exp(-s / 2.0) / (_TWO_PI * np.sinh(R)) * dnu1
    direct = nu(3, s, R, trunc)
    return rec, direct


def nu_normalization_check(dim, s, n_nodes=400, trunc=TruncationSpec()):
    """c_d * int_0^inf nu_dim(s, R) sinh(R)^{dim-1} dR; should equal 1."""
    if s <= 0:
        raise ConvergenceError("s must be positive")
    r_max = (dim - 1) * s + math.sqrt(2.0 * s * 50.0) + 2.0
    R, w = _gl_on(0.0, r_max, n_nodes)
    vals = nu(dim, s, R, trunc)
    c_d = unit_ball_boundary_volume(dim)
    return float(c_d * np.sum(vals * np.sinh(R) ** (dim - 1) * w))


# ---------------------------------------------------------------------------
# zonal polynomials
# ---------------------------------------------------------------------------

def gegenbauer_eval(dim, degree, z):
    """Degree-l zonal polynomial for S^dim at (complex) argument z.

    d=1: Chebyshev T_l; d=2: Legendre P_l; d=3: Chebyshev U_l.  Plain
    three-term recurrences (no scaling); intended for moderate degree.
    """
    if dim not in (1, 2, 3):
        raise UnsupportedDimension(f"dim={dim}")
    if degree < 0:
        raise ValueError("degree must be nonnegative")
    z = np.asarray(z, dtype=np.complex128)
    p_prev = np.ones_like(z)
    if degree == 0:
        return p_prev if p_prev.ndim else p_prev[()]
    if dim == 1:
        p = z.copy()
        for l in range(1, degree):
            p_prev, p = p, 2.0 * z * p - p_prev
    elif dim == 2:
        p = z.copy()
        for l in range(1, degree):
            p_prev, p = p, ((2 * l + 1) * z * p - l * p_prev) / (l + 1)
    else:
        p = 2.0 * z
        for l in range(1, degree):
            p_prev, p = p, 2.0 * z * p - p_prev
    return p
