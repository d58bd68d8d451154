"""Truncated operator matrices in explicit spectral bases.

d = 1: Fourier modes e_n = exp(i n theta)/sqrt(2 pi), |n| <= cutoff.
d = 2: complex spherical harmonics Y_l^m, l <= cutoff (Condon-Shortley).

Internal units r = 1, m*omega = 1, hbar = 1; the only free parameter of the
annihilation operators is tau.  Truncation corrupts the top degrees of a
banded operator product, so identities are asserted on interior blocks
(degree <= cutoff - band margin).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import expm

from .errors import OverflowGuard, UnsupportedDimension
from .harmonics import ylm_index

__all__ = [
    "BasisSpec",
    "OperatorSet",
    "build_basis",
    "build_annihilation",
    "build_annihilation_explicit",
    "build_annihilation_polar",
    "constraint_residual",
    "euclidean_algebra_check",
    "annihilation_checks",
    "lx_casimir_check_d2",
    "interior_norm",
    "annihilation_apply",
    "degree_lambda",
]


@dataclass(frozen=True)
class BasisSpec:
    """Basis truncation: max |n| (d=1) or max degree l (d=2)."""

    dim: int
    cutoff: int
    interior_cutoff: int = -1

    def __post_init__(self):
        if self.dim not in (1, 2):
            raise UnsupportedDimension(
                "operator matrices implemented for d = 1, 2 only")
        if self.cutoff < 2:
            raise ValueError("cutoff must be >= 2")
        if self.interior_cutoff < 0:
            object.__setattr__(self, "interior_cutoff", self.cutoff - 2)
        if self.interior_cutoff > self.cutoff - 2:
            raise ValueError("interior_cutoff must be <= cutoff - 2")


@dataclass
class OperatorSet:
    """Matrices for X_k, J_kl, J^2, P_k (and A_k, W_kl, C once built)."""

    spec: BasisSpec
    degrees: np.ndarray            # degree of each basis vector
    X: list                        # d+1 Hermitian matrices
    J: np.ndarray                  # (d+1, d+1) object array, antisymmetric
    J2: np.ndarray                 # diagonal matrix sum_{k<l} J_kl^2
    Jscalar: np.ndarray            # diagonal of sqrt(J^2 + (d-1)^2/4)
    P: list                        # d+1 matrices J_kl X_l
    A: list | None = None
    tau: float | None = None
    W: dict = field(default_factory=dict)
    C: np.ndarray | None = None

    @property
    def dim(self) -> int:
        return self.spec.dim

    @property
    def size(self) -> int:
        return len(self.degrees)


def degree_lambda(dim: int, degrees: np.ndarray) -> np.ndarray:
    """Dimensionless J~^2 eigenvalue per degree: l * (l + dim - 1)."""
    return degrees * (degrees + dim - 1.0)


# ---------------------------------------------------------------------------
# d = 1 ladder entries
# ---------------------------------------------------------------------------

def _entries_d1(cutoff):
    """COO entries of X+ = X_1 + i X_2 (shift n -> n+1) and J_21 diagonal."""
    ns = np.arange(-cutoff, cutoff + 1)
    rows = np.arange(1, 2 * cutoff + 1)     # index of e_{n+1}
    cols = np.arange(0, 2 * cutoff)         # index of e_n
    vals = np.ones(2 * cutoff)
    return ns, rows, cols, vals


# ---------------------------------------------------------------------------
# d = 2 ladder entries (closed-form coefficients, no quadrature)
# ---------------------------------------------------------------------------

def _entries_d2(cutoff):
    """COO entries of z*Y and (x +/- i y)*Y ladder matrices up to l=cutoff."""
    rz, cz, vz = [], [], []
    rp, cp, vp = [], [], []
    rm, cm, vm = [], [], []
    for l in range(cutoff + 1):
        for m in range(-l, l + 1):
            col = ylm_index(l, m)
            if l + 1 <= cutoff:
                up = (2 * l + 1.0) * (2 * l + 3.0)
                rz.append(ylm_index(l + 1, m))
                cz.append(col)
                vz.append(math.sqrt(((l + 1.0) ** 2 - m * m) / up))
                rp.append(ylm_index(l + 1, m + 1))
                cp.append(col)
                vp.append(-math.sqrt((l + m + 1.0) * (l + m + 2.0) / up))
                rm.append(ylm_index(l + 1, m - 1))
                cm.append(col)
                vm.append(math.sqrt((l - m + 1.0) * (l - m + 2.0) / up))
            if l >= 1:
                dn = (2 * l - 1.0) * (2 * l + 1.0)
                rz.append(ylm_index(l - 1, m))
                cz.append(col)
                vz.append(math.sqrt((l * l - m * m) / dn))
                if abs(m + 1) <= l - 1:
                    rp.append(ylm_index(l - 1, m + 1))
                    cp.append(col)
                    vp.append(math.sqrt((l - m) * (l - m - 1.0) / dn))
                if abs(m - 1) <= l - 1:
                    rm.append(ylm_index(l - 1, m - 1))
                    cm.append(col)
                    vm.append(-math.sqrt((l + m) * (l + m - 1.0) / dn))
    pack = lambda r, c, v: (np.array(r), np.array(c), np.array(v, dtype=np.float64))
    return pack(rz, cz, vz), pack(rp, cp, vp), pack(rm, cm, vm)


def _dense(shape, entries):
    r, c, v = entries
    out = np.zeros(shape, dtype=np.complex128)
    out[r, c] = v
    return out


def build_basis(spec: BasisSpec) -> OperatorSet:
    """Position and angular-momentum matrices in the truncated basis."""
    d = spec.dim
    if d == 1:
        ns, r, c, v = _entries_d1(spec.cutoff)
        n = len(ns)
        xp = np.zeros((n, n), dtype=np.complex128)
        xp[r, c] = v
        xm = xp.conj().T
        X = [(xp + xm) / 2.0, (xp - xm) / (2.0j)]
        degrees = np.abs(ns).astype(np.float64)
        j21 = np.diag(ns.astype(np.complex128))     # J_21 e_n = +n e_n
        J = np.empty((2, 2), dtype=object)
        J[0][0] = J[1][1] = np.zeros((n, n), dtype=np.complex128)
        J[1][0] = j21
        J[0][1] = -j21
        J2 = j21 @ j21
    else:
        size = (spec.cutoff + 1) ** 2
        ez, ep, em = _entries_d2(spec.cutoff)
        xz = _dense((size, size), ez)
        xpl = _dense((size, size), ep)
        xmn = _dense((size, size), em)
        X = [(xpl + xmn) / 2.0, (xpl - xmn) / (2.0j), xz]
        degrees = np.empty(size)
        for l in range(spec.cutoff + 1):
            for m in range(-l, l + 1):
                degrees[ylm_index(l, m)] = l
        # L_z, L+/- in the same basis
        lz = np.zeros((size, size), dtype=np.complex128)
        lp = np.zeros((size, size), dtype=np.complex128)
        for l in range(spec.cutoff + 1):
            for m in range(-l, l + 1):
                lz[ylm_index(l, m), ylm_index(l, m)] = m
                if m + 1 <= l:
                    lp[ylm_index(l, m + 1), ylm_index(l, m)] = math.sqrt(
                        l * (l + 1.0) - m * (m + 1.0))
        lm = lp.conj().T
        lx = (lp + lm) / 2.0
        ly = (lp - lm) / (2.0j)
        J = np.empty((3, 3), dtype=object)
        zero = np.zeros((size, size), dtype=np.complex128)
        for k in range(3):
            J[k][k] = zero
        # generators J_kl = -i (x_l d_k - x_k d_l): J_32 = L_x, J_13 = L_y,
        # J_21 = L_z, antisymmetric in (k, l)
        J[2][1] = lx
        J[1][2] = -lx
        J[0][2] = ly
        J[2][0] = -ly
        J[1][0] = lz
        J[0][1] = -lz
        J2 = lx @ lx + ly @ ly + lz @ lz
    lam = degree_lambda(d, degrees)
    jsc = np.sqrt(lam + (d - 1.0) ** 2 / 4.0)
    P = [sum(J[k][l] @ X[l] for l in range(d + 1)) for k in range(d + 1)]
    return OperatorSet(spec=spec, degrees=degrees, X=X, J=J, J2=J2,
                       Jscalar=jsc, P=P)


# ---------------------------------------------------------------------------
# annihilation operators, three independent constructions
# ---------------------------------------------------------------------------

def _band_guard(ops, tau):
    lmax = float(np.max(ops.degrees))
    if tau * (2.0 * lmax + ops.dim) / 2.0 > 650.0:
        raise OverflowGuard(
            "exp(tau * (lambda_{l+1} - lambda_l) / 2) would overflow; "
            "reduce the cutoff or tau")


def build_annihilation(ops: OperatorSet, tau: float) -> OperatorSet:
    """A_k = E^{-1} X_k E with E = exp(tau J~^2 / 2), computed entrywise.

    The entrywise form X_k[i, j] * exp(tau (lambda_j - lambda_i) / 2) is
    identical to the conjugation but never forms the (overflowing) diagonal
    of E itself.
    """
    _band_guard(ops, tau)
    lam = degree_lambda(ops.dim, ops.degrees)
    scale = np.exp(tau * (lam[None, :] - lam[:, None]) / 2.0)
    ops.A = [x * scale for x in ops.X]
    ops.tau = tau
    _build_w(ops)
    return ops


def build_annihilation_explicit(ops: OperatorSet, tau: float) -> list:
    """Closed form: A = e^{tau/2} [cosh(tau Js) + ((d-1)/2Js) sinh(tau Js)] X
    + i e^{tau/2} (1/Js) sinh(tau Js) P, functions of Js applied on the left.

    Js = sqrt(J^2 + (d-1)^2/4) per row degree; the overall prefactor is
    e^{tau/2} for every d (the polar generator contributes e^{-tau(d-1)/2}
    against the e^{tau d/2} of the conjugation).
    """
    _band_guard(ops, tau)
    d = ops.dim
    js = ops.Jscalar
    safe = np.where(js < 1e-12, 1.0, js)
    sinh_over = np.where(js < 1e-12, tau, np.sinh(tau * safe) / safe)
    f_x = math.exp(tau / 2.0) * (np.cosh(tau * js)
                                 + (d - 1.0) / 2.0 * sinh_over)
    f_p = math.exp(tau / 2.0) * sinh_over
    return [f_x[:, None] * x + 1j * f_p[:, None] * p
            for x, p in zip(ops.X, ops.P)]


def build_annihilation_polar(ops: OperatorSet, tau: float) -> list:
    """Polar form: e^{tau d/2} exp(i tau M) acting on the pair (X, P), with
    M = [[0, 1], [-P^2, i (d-1)]] and P^2 = J~^2, evaluated per row degree.
    """
    _band_guard(ops, tau)
    d = ops.dim
    lam = degree_lambda(d, ops.degrees)
    u11 = np.empty(len(lam), dtype=np.complex128)
    u12 = np.empty(len(lam), dtype=np.complex128)
    for lv in np.unique(lam):
        m = np.array([[0.0, 1.0], [-lv, 1j * (d - 1.0)]], dtype=np.complex128)
        u = expm(1j * tau * m)
        sel = lam == lv
        u11[sel] = u[0, 0]
        u12[sel] = u[0, 1]
    pref = math.exp(tau * d / 2.0)
    return [pref * (u11[:, None] * x + u12[:, None] * p)
            for x, p in zip(ops.X, ops.P)]


def _build_w(ops: OperatorSet):
    d = ops.dim
    x2 = sum(x @ x for x in ops.X)
    for k in range(d + 1):
        for l in range(k + 1, d + 1):
            w = x2 @ ops.J[k][l]
            for m in range(d + 1):
                w = w - ops.J[k][m] @ ops.X[m] @ ops.X[l] \
                      + ops.J[l][m] @ ops.X[m] @ ops.X[k]
            ops.W[(k, l)] = w
    ops.C = sum(w @ w for w in ops.W.values())


# ---------------------------------------------------------------------------
# interior-block checks
# ---------------------------------------------------------------------------

def interior_norm(mat, degrees, max_degree) -> float:
    """Max |entry| on the sub-block of rows/columns with degree <= max_degree."""
    sel = degrees <= max_degree
    block = mat[np.ix_(sel, sel)]
    return float(np.max(np.abs(block))) if block.size else 0.0


def constraint_residual(ops: OperatorSet, margin: int = 2) -> float:
    """Max interior norm of the little-group constraints W_kl."""
    if not ops.W:
        _build_w(ops)
    dmax = ops.spec.cutoff - margin
    return max(interior_norm(w, ops.degrees, dmax) for w in ops.W.values())


def euclidean_algebra_check(ops: OperatorSet) -> dict:
    """Interior residuals of the kinematic operator identities.

    Returns a mapping name -> residual (max interior entry of LHS - RHS).
    """
    d = ops.dim
    deg = ops.degrees
    cut = ops.spec.cutoff
    eye = np.eye(ops.size)
    if not ops.W:
        _build_w(ops)
    res = {}

    def put(name, mat, margin):
        val = interior_norm(mat, deg, cut - margin)
        res[name] = max(res.get(name, 0.0), val)

    rng = range(d + 1)
    for k in rng:
        for l in rng:
            for m_ in rng:
                for n_ in rng:
                    comm = (ops.J[k][l] @ ops.J[m_][n_]
                            - ops.J[m_][n_] @ ops.J[k][l]) / 1j
                    rhs = ((1.0 if m_ == l else 0.0) * ops.J[k][n_]
                           + (1.0 if k == n_ else 0.0) * ops.J[l][m_]
                           - (1.0 if k == m_ else 0.0) * ops.J[l][n_]
                           - (1.0 if l == n_ else 0.0) * ops.J[k][m_])
                    put("[J,J]", comm - rhs, 0)
    for k in rng:
        for l in rng:
            for m_ in rng:
                comm = (ops.X[k] @ ops.J[l][m_] - ops.J[l][m_] @ ops.X[k]) / 1j
                rhs = ((1.0 if k == l else 0.0) * ops.X[m_]
                       - (1.0 if k == m_ else 0.0) * ops.X[l])
                put("[X,J]", comm - rhs, 1)
            put("[X,X]", ops.X[k] @ ops.X[l] - ops.X[l] @ ops.X[k], 2)
    x2 = sum(x @ x for x in ops.X)
    put("X^2=r^2", x2 - eye, 2)
    for k in rng:
        for l in rng:
            comm = (ops.X[k] @ ops.P[l] - ops.P[l] @ ops.X[k]) / 1j
            rhs = (1.0 if k == l else 0.0) * eye - ops.X[k] @ ops.X[l]
            put("[X,P]", comm - rhs, 2)
    put("P.X=0", sum(p @ x for p, x in zip(ops.P, ops.X)), 2)
    put("X.P=i d", sum(x @ p for x, p in zip(ops.X, ops.P)) - 1j * d * eye, 2)
    for k in rng:
        jx = sum(ops.J[k][l] @ ops.X[l] for l in rng)
        put("JX=r^2 P", jx - ops.P[k], 1)
    p2 = sum(p @ p for p in ops.P)
    for k in rng:
        jp = sum(ops.J[k][l] @ ops.P[l] for l in rng)
        rhs = -p2 @ ops.X[k] + 1j * (d - 1.0) * ops.P[k]
        put("JP=-P^2 X+i(d-1)P", jp - rhs, 3)
    for (k, l), w in ops.W.items():
        for m_ in rng:
            put("[X,W]=0", ops.X[m_] @ w - w @ ops.X[m_], 3)
        put("W herm", w - w.conj().T, 2)
    for k in rng:
        for l in rng:
            if k == l:
                continue
            w_kl = ops.W[(k, l)] if k < l else -ops.W[(l, k)]
            for m_ in rng:
                for n_ in rng:
                    if m_ == n_:
                        continue
                    w_mn = ops.W[(m_, n_)] if m_ < n_ else -ops.W[(n_, m_)]
                    comm = (ops.J[k][l] @ w_mn - w_mn @ ops.J[k][l]) / 1j
                    rhs = ((1.0 if m_ == l else 0.0) * w_kl_pick(ops, k, n_)
                           + (1.0 if k == n_ else 0.0) * w_kl_pick(ops, l, m_)
                           - (1.0 if k == m_ else 0.0) * w_kl_pick(ops, l, n_)
                           - (1.0 if l == n_ else 0.0) * w_kl_pick(ops, k, m_))
                    put("[J,W]", comm - rhs, 2)
    return res


def w_kl_pick(ops: OperatorSet, k: int, l: int):
    """W_kl with antisymmetric completion (W_kk = 0)."""
    if k == l:
        return np.zeros((ops.size, ops.size), dtype=np.complex128)
    return ops.W[(k, l)] if k < l else -ops.W[(l, k)]


def annihilation_checks(ops: OperatorSet, tau: float) -> dict:
    """Interior residuals of the annihilation-operator identities.

    sum A_k^2 = r^2 and [A_k, A_l] = 0 follow from conjugating the X
    identities; the three constructions (entrywise conjugation, closed
    form in (X, P), polar form) must agree entry-by-entry.
    """
    if ops.A is None or ops.tau != tau:
        build_annihilation(ops, tau)
    deg = ops.degrees
    cut = ops.spec.cutoff
    a2 = sum(a @ a for a in ops.A)
    res = {
        "A^2=r^2": interior_norm(a2 - np.eye(ops.size), deg, cut - 2),
        "[A,A]": max(
            interior_norm(ops.A[k] @ ops.A[l] - ops.A[l] @ ops.A[k], deg,
                          cut - 2)
            for k in range(ops.dim + 1) for l in range(k + 1, ops.dim + 1)),
    }
    expl = build_annihilation_explicit(ops, tau)
    pol = build_annihilation_polar(ops, tau)
    scale = max(float(np.max(np.abs(a))) for a in ops.A)
    res["explicit-vs-conj"] = max(
        float(np.max(np.abs(e - a))) for e, a in zip(expl, ops.A)) / scale
    res["polar-vs-conj"] = max(
        float(np.max(np.abs(q - a))) for q, a in zip(pol, ops.A)) / scale
    return res


def lx_casimir_check_d2(ops: OperatorSet) -> dict:
    """d=2 identities: C = X^2 (L.X)^2, L.X = 0, W Hermitian."""
    if ops.dim != 2:
        raise UnsupportedDimension("lx_casimir_check_d2 requires dim=2")
    if not ops.W:
        _build_w(ops)
    deg = ops.degrees
    cut = ops.spec.cutoff
    # L = (J_32, J_13, J_21) so that L_i = standard (L_x, L_y, L_z)
    L = [ops.J[2][1], ops.J[0][2], ops.J[1][0]]
    ldotx = sum(li @ xi for li, xi in zip(L, ops.X))
    x2 = sum(x @ x for x in ops.X)
    c_alt = x2 @ ldotx @ ldotx
    return {
        "C-X^2(LX)^2": interior_norm(ops.C - c_alt, deg, cut - 4),
        "L.X": interior_norm(ldotx, deg, cut - 1),
        "W herm": max(interior_norm(w - w.conj().T, deg, cut - 2)
                      for w in ops.W.values()),
        "C": interior_norm(ops.C, deg, cut - 4),
    }


# ---------------------------------------------------------------------------
# matrix-free annihilation application (large cutoffs)
# ---------------------------------------------------------------------------

def annihilation_apply(dim: int, cutoff: int, tau: float, coeffs: np.ndarray):
    """Apply the d+1 annihilation operators to a coefficient vector.

    Returns a list of vectors A_k c without building dense matrices; used
    for the coherent eigenvector residuals at large cutoffs.
    """
    if dim == 1:
        ns = np.arange(-cutoff, cutoff + 1)
        lam = ns.astype(np.float64) ** 2
        out_p = np.zeros_like(coeffs)
        out_m = np.zeros_like(coeffs)
        # (X+) c shifts n -> n+1; band factor exp(tau (lam_n - lam_{n+1})/2)
        out_p[1:] = coeffs[:-1] * np.exp(tau * (lam[:-1] - lam[1:]) / 2.0)
        out_m[:-1] = coeffs[1:] * np.exp(tau * (lam[1:] - lam[:-1]) / 2.0)
        return [(out_p + out_m) / 2.0, (out_p - out_m) / (2.0j)]
    if dim == 2:
        ez, ep, em = _entries_d2(cutoff)
        degrees = np.empty((cutoff + 1) ** 2)
        for l in range(cutoff + 1):
            degrees[l * l:(l + 1) ** 2] = l
        lam = degree_lambda(2, degrees)

        def apply(entries):
            r, c, v = entries
            out = np.zeros_like(coeffs)
            np.add.at(out, r, v * np.exp(tau * (lam[c] - lam[r]) / 2.0) * coeffs[c])
            return out

        az = apply(ez)
        ap = apply(ep)
        am = apply(em)
        return [(ap + am) / 2.0, (ap - am) / (2.0j), az]
    raise UnsupportedDimension("annihilation_apply supports dim 1, 2")
