"""Coherent states on S^d labeled by points of the complexified sphere.

A state with label a is the heat-smoothed position eigenvector continued
in its label: its position wavefunction is the heat kernel at the complex
angle between a and x.  States are NOT normalized; ``norm_squared`` and the
normalized coefficient accessor divide out R_tau(a, a) when needed.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .basis import annihilation_apply, degree_lambda
from .errors import UnsupportedDimension
from .geometry import ComplexSpherePoint, PhasePoint, complexify
from .harmonics import conj_continued, ylm_table
from .kernels import TruncationSpec, rho
from .params import ModelParams

__all__ = [
    "CoherentState",
    "certified_cutoff",
    "position_wavefunction",
    "coefficients_in_basis",
    "reproducing_kernel",
    "overlap",
    "norm_squared",
    "normalized_coefficients",
    "eigenvector_residual",
    "rotation_covariance_check_d1",
    "holomorphy_residual",
]


@dataclass(frozen=True)
class CoherentState:
    """Label a on S^d_C plus the physical parameters (tau = hbar/m w r^2)."""

    params: ModelParams
    label: ComplexSpherePoint

    @classmethod
    def from_phase_point(cls, params: ModelParams, pt: PhasePoint):
        return cls(params=params, label=complexify(params, pt))

    @property
    def tau(self) -> float:
        return self.params.tau

    @property
    def dim(self) -> int:
        return self.label.dim


def _rho_param(point: ComplexSpherePoint) -> float:
    """Hyperbolic label height: alpha = cosh(2 rho)."""
    return 0.5 * math.acosh(max(point.alpha / point.r**2, 1.0))


def certified_cutoff(dim: int, tau: float, rho_label: float,
                     tol: float = 1e-12) -> int:
    """Smallest degree L with e^{-tau L (L+d-1)/2 + L rho} < tol.

    Coefficient magnitude at degree l is bounded by the heat factor times
    the growth e^{l rho} of continued harmonics at label height rho.
    """
    disc = rho_label * rho_label + 2.0 * tau * math.log(1.0 / tol)
    L = (rho_label + math.sqrt(disc)) / tau
    return max(4, int(math.ceil(L)) + 2)


def position_wavefunction(state: CoherentState, x, trunc: TruncationSpec | None = None):
    """psi_a at real sphere points x (shape (..., d+1)); heat kernel at the
    complex angle between the label and x."""
    a = state.label.a / state.label.r
    x = np.asarray(x, dtype=np.float64) / state.label.r
    cosang = x @ a
    theta = np.arccos(np.asarray(cosang, dtype=np.complex128))
    return rho(state.dim, state.tau, theta, method="theta", trunc=trunc)


def coefficients_in_basis(state: CoherentState, cutoff: int,
                          tail_tol: float = 1e-10) -> np.ndarray:
    """Expansion of psi_a over the spectral basis up to degree ``cutoff``.

    d=1 index layout: n = -cutoff..cutoff; d=2: ylm_index(l, m).
    Warns when the truncation-tail estimate exceeds ``tail_tol`` of the norm.
    """
    d = state.dim
    tau = state.tau
    a = state.label.a / state.label.r
    rho_l = _rho_param(state.label)
    tail = math.exp(-tau * cutoff * (cutoff + d - 1) / 2.0 + cutoff * rho_l)
    if tail > tail_tol:
        warnings.warn(
            f"coefficient tail estimate {tail:.2e} exceeds {tail_tol:.0e}; "
            f"increase the cutoff (certified: "
            f"{certified_cutoff(d, tau, rho_l, tail_tol)})")
    if d == 1:
        ns = np.arange(-cutoff, cutoff + 1)
        # e^{-i n w} with e^{i w} = a_1 + i a_2 (unit product with a_1 - i a_2)
        zm = a[0] - 1j * a[1]
        zp = a[0] + 1j * a[1]
        phase = np.where(ns >= 0, zm ** np.abs(ns), zp ** np.abs(ns))
        return np.exp(-tau * ns**2 / 2.0) * phase / math.sqrt(2.0 * math.pi)
    if d == 2:
        tab = conj_continued(ylm_table(a, cutoff), cutoff)
        degrees = np.empty((cutoff + 1) ** 2)
        for l in range(cutoff + 1):
            degrees[l * l:(l + 1) ** 2] = l
        return np.exp(-tau * degree_lambda(2, degrees) / 2.0) * tab
    raise UnsupportedDimension("basis coefficients implemented for d = 1, 2")


def reproducing_kernel(dim: int, tau: float, a: ComplexSpherePoint,
                       b: ComplexSpherePoint,
                       trunc: TruncationSpec | None = None) -> complex:
    """<psi_b | psi_a> = rho_{2 tau} at the complex angle between a and
    conj(b); holomorphic in a, antiholomorphic in b."""
    cosang = np.sum(a.a * np.conj(b.a)) / (a.r * b.r)
    theta = complex(np.arccos(np.complex128(cosang)))
    return complex(rho(dim, 2.0 * tau, theta, method="theta", trunc=trunc))


def overlap(s1: CoherentState, s2: CoherentState, cutoff: int) -> complex:
    """Truncated-basis inner product <psi_{s1} | psi_{s2}>."""
    c1 = coefficients_in_basis(s1, cutoff)
    c2 = coefficients_in_basis(s2, cutoff)
    return complex(np.vdot(c1, c2))


def norm_squared(state: CoherentState) -> float:
    val = reproducing_kernel(state.dim, state.tau, state.label, state.label)
    return float(val.real)


def normalized_coefficients(state: CoherentState, cutoff: int) -> np.ndarray:
    return coefficients_in_basis(state, cutoff) / math.sqrt(norm_squared(state))


def eigenvector_residual(state: CoherentState, cutoff: int | None = None) -> float:
    """Aggregate relative residual of A_k psi_a = a_k psi_a over all k.

    sqrt(sum_k ||A_k c - a_k c||^2) / (sqrt(sum_k |a_k|^2) ||c||), computed
    in a certified truncation (plus slack for the operator band).
    """
    d = state.dim
    tau = state.tau
    if cutoff is None:
        cutoff = certified_cutoff(d, tau, _rho_param(state.label)) + 4
    coeffs = coefficients_in_basis(state, cutoff, tail_tol=np.inf)
    ak = state.label.a / state.label.r
    out = annihilation_apply(d, cutoff, tau, coeffs)
    num = math.fsum(float(np.sum(np.abs(o - akk * coeffs) ** 2))
                    for o, akk in zip(out, ak))
    alpha = float(np.sum(np.abs(ak) ** 2))
    den = alpha * float(np.sum(np.abs(coeffs) ** 2))
    return math.sqrt(num / den)


def rotation_covariance_check_d1(state: CoherentState, angle: float,
                                 cutoff: int = 20) -> float:
    """d=1: coefficients of psi_{Ra} equal e^{-i n angle}-shifted ones."""
    if state.dim != 1:
        raise UnsupportedDimension("rotation covariance check is d=1 only")
    c, s = math.cos(angle), math.sin(angle)
    rot = np.array([[c, -s], [s, c]])
    rotated = CoherentState(
        params=state.params,
        label=ComplexSpherePoint(a=rot @ state.label.a, r=state.label.r))
    ns = np.arange(-cutoff, cutoff + 1)
    lhs = coefficients_in_basis(rotated, cutoff, tail_tol=np.inf)
    rhs = np.exp(-1j * ns * angle) * coefficients_in_basis(
        state, cutoff, tail_tol=np.inf)
    return float(np.max(np.abs(lhs - rhs)))


def holomorphy_residual(state: CoherentState, cutoff: int = 16,
                        h: float = 1e-5) -> float:
    """Cauchy-Riemann residual of the coefficients along a holomorphic
    one-parameter chart a(t) = cos(t) a + sin(t) v through the label."""
    a = state.label.a / state.label.r
    # v with v.v = 1, a.v = 0 (complex-bilinear), from a deterministic seed
    seed = np.zeros(len(a), dtype=np.complex128)
    seed[0] = 1.0
    if abs(np.sum(seed * seed) - np.sum(a * seed) ** 2) < 1e-8:
        seed[:] = 0.0
        seed[1] = 1.0
    v = seed - np.sum(a * seed) * a
    v = v / np.sqrt(np.sum(v * v))

    def coef(t: complex) -> np.ndarray:
        lab = ComplexSpherePoint.__new__(ComplexSpherePoint)
        object.__setattr__(lab, "a",
                           state.label.r * (np.cos(t) * a + np.sin(t) * v))
        object.__setattr__(lab, "r", state.label.r)
        object.__setattr__(lab, "tol", np.inf)
        return coefficients_in_basis(
            CoherentState(params=state.params, label=lab), cutoff,
            tail_tol=np.inf)

    d_re = (coef(h) - coef(-h)) / (2.0 * h)
    d_im = (coef(1j * h) - coef(-1j * h)) / (2.0 * h)
    dbar = 0.5 * (d_re + 1j * d_im)
    scale = float(np.max(np.abs(coef(0.0)))) + 1e-300
    return float(np.max(np.abs(dbar))) / scale
