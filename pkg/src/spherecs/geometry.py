"""Phase-space geometry of T*(S^d) and the complexifier map onto S^d_C.

Internally everything is computed with the dimensionless variables
x/r and p/(m*omega*r); public functions accept physical quantities through
ModelParams and rescale.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConstraintViolation
from .params import ModelParams

__all__ = [
    "PhasePoint",
    "AngularMomentumMatrix",
    "ComplexSpherePoint",
    "complexify",
    "complexify_series",
    "decomplexify",
    "complex_angle",
    "conjugation_symmetry_check",
    "dirac_bracket",
    "random_phase_point",
]

TOL_CONSTRAINT = 1e-10
TOL_ADMISSION = 1e-6


def _sinhc(z):
    """sinh(z)/z with the removable singularity handled by its series."""
    z = np.asarray(z, dtype=np.float64)
    small = np.abs(z) < 1e-4
    zs = np.where(small, 1.0, z)
    return np.where(small, 1.0 + z**2 / 6.0 + z**4 / 120.0, np.sinh(zs) / zs)


@dataclass(frozen=True)
class PhasePoint:
    """A point (x, p) of T*(S^d): |x| = r and x . p = 0.

    The constructor normalizes x onto the sphere and projects p onto the
    tangent plane when the input residual is below ``TOL_ADMISSION``;
    larger residuals are rejected.
    """

    x: np.ndarray
    p: np.ndarray
    r: float = 1.0

    def __post_init__(self):
        x = np.asarray(self.x, dtype=np.float64)
        p = np.asarray(self.p, dtype=np.float64)
        if x.shape != p.shape or x.ndim != 1:
            raise ConstraintViolation("x and p must be vectors of equal length")
        nx = np.linalg.norm(x)
        if nx == 0:
            raise ConstraintViolation("x must be nonzero")
        res_sphere = abs(nx**2 - self.r**2) / self.r**2
        res_tangent = abs(x @ p) / (self.r * np.linalg.norm(p) + 1e-300)
        if res_sphere > TOL_ADMISSION or (np.linalg.norm(p) > 0 and res_tangent > TOL_ADMISSION):
            raise ConstraintViolation(
                f"phase point off constraint: sphere residual {res_sphere:.2e}, "
                f"tangency residual {res_tangent:.2e}")
        x = x * (self.r / nx)
        p = p - (x @ p) / self.r**2 * x
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "p", p)

    @property
    def dim(self) -> int:
        return len(self.x) - 1

    def angular_momentum(self) -> "AngularMomentumMatrix":
        return AngularMomentumMatrix.from_phase_point(self)


@dataclass(frozen=True)
class AngularMomentumMatrix:
    """j = p (x) x - x (x) p and the scalar j^2 = sum_{k<l} j_kl^2."""

    j: np.ndarray
    j2: float

    @classmethod
    def from_phase_point(cls, pt: PhasePoint) -> "AngularMomentumMatrix":
        j = np.outer(pt.p, pt.x) - np.outer(pt.x, pt.p)
        return cls(j=j, j2=0.5 * float(np.sum(j * j)))


@dataclass(frozen=True)
class ComplexSpherePoint:
    """A point a in S^d_C = {a in C^{d+1} : sum a_k^2 = r^2}."""

    a: np.ndarray
    r: float = 1.0
    tol: float = field(default=TOL_CONSTRAINT, compare=False)

    def __post_init__(self):
        a = np.asarray(self.a, dtype=np.complex128)
        res = abs(np.sum(a * a) - self.r**2) / self.r**2
        if res > max(self.tol, 1e-8):
            raise ConstraintViolation(
                f"point not on the complexified sphere: residual {res:.2e}")
        object.__setattr__(self, "a", a)

    @property
    def alpha(self) -> float:
        """|a|^2 = sum |a_k|^2 (>= r^2, equality iff a is real)."""
        return float(np.sum(np.abs(self.a) ** 2))

    @property
    def dim(self) -> int:
        return len(self.a) - 1


def complexify(params: ModelParams, pt: PhasePoint) -> ComplexSpherePoint:
    """Closed-form complexifier map a = cosh(j/mwr^2) x + i (r^2/j) sinh(j/mwr^2) p."""
    xs = pt.x / params.r
    ps = pt.p / params.momentum_scale
    rho = float(np.linalg.norm(ps))
    a = np.cosh(rho) * xs + 1j * _sinhc(rho) * ps
    return ComplexSpherePoint(a=params.r * a, r=params.r)


def complexify_series(params: ModelParams, pt: PhasePoint, n_terms: int) -> ComplexSpherePoint:
    """Partial sum of exp(i j / m w r^2) x with n_terms terms (n_terms >= 1)."""
    if n_terms < 1:
        raise ValueError("n_terms must be >= 1")
    xs = pt.x / params.r
    ps = pt.p / params.momentum_scale
    jmat = np.outer(ps, xs) - np.outer(xs, ps)
    term = xs.astype(np.complex128)
    acc = term.copy()
    for n in range(1, n_terms):
        term = (1j * (jmat @ term)) / n
        acc += term
    # relax the on-sphere tolerance: a truncated series is only approximately
    # on S^d_C, which is the point of comparing it against the closed form
    point = ComplexSpherePoint.__new__(ComplexSpherePoint)
    object.__setattr__(point, "a", params.r * acc)
    object.__setattr__(point, "r", params.r)
    object.__setattr__(point, "tol", np.inf)
    return point


def decomplexify(params: ModelParams, point: ComplexSpherePoint) -> PhasePoint:
    """Invert the complexifier map; error if |a|^2 < r^2 beyond tolerance."""
    a = np.asarray(point.a, dtype=np.complex128) / params.r
    alpha = float(np.sum(np.abs(a) ** 2))
    if alpha < 1.0 - 1e-10:
        raise ConstraintViolation(
            f"|a|^2 = {alpha:.12f} < r^2; not in the image of the complexifier")
    rho = 0.5 * float(np.arccosh(max(alpha, 1.0)))
    if rho < 1e-12:
        x = np.real(a)
        p = np.zeros_like(x)
    else:
        x = np.real(a) / np.cosh(rho)
        p = np.imag(a) / _sinhc(rho)
    return PhasePoint(x=params.r * x, p=params.momentum_scale * p, r=params.r)


def complex_angle(a: ComplexSpherePoint, x: ComplexSpherePoint) -> complex:
    """Principal theta with cos(theta) = a . x / r^2 (Re theta in [0, pi])."""
    if a.r != x.r:
        raise ConstraintViolation("points live on spheres of different radii")
    c = np.sum(a.a * x.a) / a.r**2
    return complex(np.arccos(c))


def conjugation_symmetry_check(params: ModelParams, pt: PhasePoint, tol=1e-14) -> bool:
    """Verify a(x, -p) = conj(a(x, p)) elementwise."""
    plus = complexify(params, pt).a
    minus = complexify(params, PhasePoint(x=pt.x, p=-pt.p, r=params.r)).a
    return bool(np.max(np.abs(minus - np.conj(plus))) <= tol * max(1.0, params.r))


# ---------------------------------------------------------------------------
# constrained (Dirac) Poisson brackets via finite differences
# ---------------------------------------------------------------------------

def _grad_fd(f, x, p, h):
    """Central-difference gradients of f(x, p) in the ambient variables."""
    n = len(x)
    gx = np.zeros(n, dtype=np.complex128)
    gp = np.zeros(n, dtype=np.complex128)
    for k in range(n):
        dx = np.zeros(n)
        dx[k] = h
        gx[k] = (f(x + dx, p) - f(x - dx, p)) / (2 * h)
        gp[k] = (f(x, p + dx) - f(x, p - dx)) / (2 * h)
    return gx, gp


def _bracket_at(f, g, x, p, r, h):
    fx, fp = _grad_fd(f, x, p, h)
    gx, gp = _grad_fd(g, x, p, h)
    # structure relations of the constrained bracket on T*(S^d):
    # {x_k, x_l} = 0, {x_k, p_l} = delta_kl - x_k x_l / r^2,
    # {p_k, p_l} = (p_k x_l - x_k p_l) / r^2
    xp = np.eye(len(x)) - np.outer(x, x) / r**2
    pp = (np.outer(p, x) - np.outer(x, p)) / r**2
    return fx @ xp @ gp - gx @ xp @ fp + fp @ pp @ gp


def dirac_bracket(f, g, pt: PhasePoint, h=1e-4):
    """Constrained Poisson bracket {f, g} at pt, Richardson-extrapolated.

    f and g must be smooth extensions defined on a neighborhood of the
    constraint surface in R^{d+1} x R^{d+1}.
    """
    b1 = _bracket_at(f, g, pt.x, pt.p, pt.r, h)
    b2 = _bracket_at(f, g, pt.x, pt.p, pt.r, h / 2)
    return (4.0 * b2 - b1) / 3.0


def random_phase_point(d, rng, r=1.0, p_scale=1.0) -> PhasePoint:
    """Uniform-ish random point of T*(S^d) for property tests."""
    x = rng.normal(size=d + 1)
    x *= r / np.linalg.norm(x)
    p = rng.normal(size=d + 1) * p_scale
    p -= (x @ p) / r**2 * x
    return PhasePoint(x=x, p=p, r=r)
