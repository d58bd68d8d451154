"""Named verification suites: every identity the package claims, run at
desk scale with fixed seeds, each returning {name, residual, tol, passed}
records.

Negative-control entries invert the pass criterion: they PASS when the
deliberately wrong weight produces a deviation larger than 10x the
tolerance of the honest run.
"""

from __future__ import annotations

import math

import numpy as np

from . import basis as basis_mod
from . import coherent as coh
from . import flat as flat_mod
from . import transform as tr
from .geometry import (ComplexSpherePoint, PhasePoint, complex_angle,
                       complexify, complexify_series,
                       conjugation_symmetry_check, random_phase_point)
from .harmonics import sphere_grid, ylm_index
from .kernels import (TruncationSpec, nu_normalization_check, nu_recursion_check,
                      rho, rho_recursion_check, rho_spectral, rho_theta,
                      unit_ball_boundary_volume)
from .params import FlatParams, ModelParams
from .quadrature import build_phase_quadrature
from .transform import (adjoint_inverse_coeffs, holomorphic_matrix,
                        isometry_gram, resolve_identity_matrix,
                        round_trip_residual, round_trip_zonal_d3)

__all__ = ["SUITES", "run_suite", "run_suites"]


def _rec(name, residual, tol, invert=False):
    residual = float(np.asarray(residual).reshape(()).real)
    passed = residual > tol if invert else residual <= tol
    return {"name": name, "residual": residual, "tol": float(tol),
            "passed": bool(passed),
            **({"negative_control": True} if invert else {})}


# ---------------------------------------------------------------------------
# 1. complexifier map
# ---------------------------------------------------------------------------

def suite_complexifier(fast=False):
    rng = np.random.default_rng(20260824)
    n = 60 if fast else 200
    worst_sphere = worst_series = worst_conj = 0.0
    for d in (1, 2, 3):
        params = ModelParams(d=d, r=1.7, m=0.9, omega=1.3, hbar=0.8)
        for _ in range(n):
            pt = random_phase_point(d, rng, r=params.r,
                                    p_scale=1.2 * params.momentum_scale)
            a = complexify(params, pt)
            worst_sphere = max(worst_sphere, abs(
                np.sum(a.a * a.a) - params.r**2) / params.r**2)
            srs = complexify_series(params, pt, 40)
            worst_series = max(worst_series, float(
                np.max(np.abs(srs.a - a.a))) / params.r)
            minus = complexify(params, PhasePoint(x=pt.x, p=-pt.p, r=params.r))
            worst_conj = max(worst_conj, float(
                np.max(np.abs(minus.a - np.conj(a.a)))) / params.r)
    return [
        _rec("complexifier: on-sphere constraint", worst_sphere, 1e-12),
        _rec("complexifier: series(40) vs closed form", worst_series, 1e-12),
        _rec("complexifier: conjugation symmetry", worst_conj, 1e-14),
    ]


# ---------------------------------------------------------------------------
# 2. heat kernels
# ---------------------------------------------------------------------------

def _kernel_mass(dim, tau, n_nodes=300):
    gl, glw = np.polynomial.legendre.leggauss(n_nodes)
    th = 0.5 * math.pi * (gl + 1.0)
    w = 0.5 * math.pi * glw
    vals = np.real(rho_theta(dim, tau, th))
    meas = unit_ball_boundary_volume(dim) * np.sin(th) ** (dim - 1)
    return float(np.sum(w * vals * meas))


def _semigroup_residual(dim, s, t):
    if dim == 1:
        n = 512
        thy = np.arange(n) * (2.0 * math.pi / n)
        wy = 2.0 * math.pi / n
        worst = 0.0
        for th0 in (0.3, 1.2, 2.8):
            conv = wy * np.sum(np.real(rho_theta(1, s, th0 - thy))
                               * np.real(rho_theta(1, t, thy)))
            worst = max(worst, abs(conv - float(
                np.real(rho_theta(1, s + t, th0)))))
        return worst
    if dim == 2:
        pts, w = sphere_grid(2, n_polar=40, n_azimuth=80)
    else:
        pts, w = sphere_grid(3, n_polar=16, n_azimuth=32, n_chi=20)
    worst = 0.0
    x = np.zeros(dim + 1)
    x[0] = 1.0
    for ang in (0.4, 1.5, 2.7):
        z = np.zeros(dim + 1)
        z[0] = math.cos(ang)
        z[1] = math.sin(ang)
        ks = np.real(rho_theta(dim, s, np.arccos(np.clip(pts @ x, -1, 1))))
        kt = np.real(rho_theta(dim, t, np.arccos(np.clip(pts @ z, -1, 1))))
        conv = float(np.sum(w * ks * kt))
        worst = max(worst, abs(conv - float(np.real(rho_theta(dim, s + t, ang)))))
    return worst


def suite_kernels(fast=False):
    rng = np.random.default_rng(7)
    out = []
    worst_dual = 0.0
    taus = (0.1, 0.5, 2.0)
    n_real, n_cplx = (12, 6) if fast else (50, 20)
    for d in (1, 2, 3):
        for tau in taus:
            th_r = rng.uniform(0.0, math.pi, n_real)
            # keep |rho| <= ~1e4 so the absolute tolerance is meaningful in
            # float64 (kernel magnitude grows like e^{(Im th)^2 / 2 tau})
            im_cap = min(2.0, math.sqrt(2.0 * tau * math.log(1e4)))
            th_c = (rng.uniform(0.0, math.pi, n_cplx)
                    + 1j * rng.uniform(-im_cap, im_cap, n_cplx))
            for th in (th_r, th_c):
                a = rho_theta(d, tau, th)
                b = rho_spectral(d, tau, th)
                worst_dual = max(worst_dual, float(np.max(np.abs(a - b))))
    out.append(_rec("kernels: theta-sum vs spectral", worst_dual, 2e-8))
    worst = 0.0
    for th in (0.3, 1.0, 2.2, 3.0):
        for tau in (0.1, 0.5, 2.0):
            rec_v, direct = rho_recursion_check(1, tau, th)
            worst = max(worst, abs(rec_v - direct) / abs(direct))
    out.append(_rec("kernels: rho^3 recursion from rho^1", worst, 1e-12))
    worst = 0.0
    for R in (0.2, 1.0, 3.0):
        for s in (0.1, 0.5, 2.0):
            rec_v, direct = nu_recursion_check(1, s, R)
            worst = max(worst, abs(rec_v - direct) / abs(direct))
    out.append(_rec("kernels: nu^3 recursion from nu^1", worst, 1e-12))
    worst = max(abs(_kernel_mass(d, tau) - 1.0)
                for d in (1, 2, 3) for tau in (0.1, 0.5, 2.0))
    out.append(_rec("kernels: sphere kernel mass one", worst, 1e-10))
    worst = max(abs(nu_normalization_check(d, s) - 1.0)
                for d in (1, 2, 3) for s in (0.1, 0.5, 2.0))
    out.append(_rec("kernels: hyperbolic kernel mass one", worst, 1e-10))
    worst = max(_semigroup_residual(d, 0.3, 0.5) for d in (1, 2, 3))
    out.append(_rec("kernels: semigroup property", worst, 1e-8))
    return out


# ---------------------------------------------------------------------------
# 3. operator identities
# ---------------------------------------------------------------------------

def suite_operators(fast=False):
    out = []
    for d, cutoff, tol in ((1, 16, 1e-13), (2, 10, 1e-10)):
        spec = basis_mod.BasisSpec(dim=d, cutoff=cutoff)
        ops = basis_mod.build_basis(spec)
        alg = basis_mod.euclidean_algebra_check(ops)
        worst = max(alg.values())
        out.append(_rec(f"operators d={d}: Euclidean algebra", worst, tol))
        out.append(_rec(f"operators d={d}: W_kl = 0",
                        basis_mod.constraint_residual(ops), tol))
        ann = basis_mod.annihilation_checks(ops, tau=0.5)
        out.append(_rec(f"operators d={d}: A identities",
                        max(ann["A^2=r^2"], ann["[A,A]"]), tol))
        out.append(_rec(f"operators d={d}: A explicit/polar vs conjugation",
                        max(ann["explicit-vs-conj"], ann["polar-vs-conj"]),
                        tol))
        if d == 2:
            lx = basis_mod.lx_casimir_check_d2(ops)
            out.append(_rec("operators d=2: C = X^2 (L.X)^2, L.X = 0, C = 0",
                            max(lx.values()), tol))
    return out


# ---------------------------------------------------------------------------
# 4. coherent states
# ---------------------------------------------------------------------------

def suite_coherent(fast=False):
    rng = np.random.default_rng(11)
    out = []
    n_labels = 6 if fast else 20
    worst = 0.0
    for d in (1, 2):
        for tau in (0.2, 0.5, 1.0):
            params = ModelParams.from_tau(d, tau)
            for _ in range(n_labels):
                pt = random_phase_point(d, rng, p_scale=0.8)
                scale = np.linalg.norm(pt.p)
                if scale > 1.5:
                    pt = PhasePoint(x=pt.x, p=pt.p * (1.5 / scale), r=1.0)
                st = coh.CoherentState.from_phase_point(params, pt)
                worst = max(worst, coh.eigenvector_residual(st))
    out.append(_rec("coherent: eigenvector residual", worst, 1e-7))
    worst = 0.0
    for d in (1, 2):
        params = ModelParams.from_tau(d, 0.5)
        for _ in range(5):
            p1 = random_phase_point(d, rng, p_scale=0.6)
            p2 = random_phase_point(d, rng, p_scale=0.6)
            s1 = coh.CoherentState.from_phase_point(params, p1)
            s2 = coh.CoherentState.from_phase_point(params, p2)
            via_basis = coh.overlap(s1, s2, cutoff=24)
            via_kernel = coh.reproducing_kernel(d, 0.5, s2.label, s1.label)
            worst = max(worst, abs(via_basis - via_kernel)
                        / max(1.0, abs(via_kernel)))
    out.append(_rec("coherent: overlap vs reproducing kernel", worst, 1e-10))
    params = ModelParams.from_tau(1, 0.5)
    st = coh.CoherentState.from_phase_point(
        params, random_phase_point(1, rng, p_scale=0.7))
    out.append(_rec("coherent: d=1 rotation covariance",
                    coh.rotation_covariance_check_d1(st, 0.77), 1e-12))
    worst = 0.0
    for d in (1, 2):
        params = ModelParams.from_tau(d, 0.5)
        st = coh.CoherentState.from_phase_point(
            params, random_phase_point(d, rng, p_scale=0.7))
        worst = max(worst, coh.holomorphy_residual(st))
    out.append(_rec("coherent: label holomorphy (CR residual)", worst, 1e-6))
    worst = 0.0
    for d in (1, 2):
        params = ModelParams.from_tau(d, 0.5)
        pt = random_phase_point(d, rng, p_scale=0.5)
        st = coh.CoherentState.from_phase_point(params, pt)
        grid, _ = sphere_grid(d, n_polar=64) if d == 1 else sphere_grid(
            2, n_polar=48, n_azimuth=96)
        vals = coh.position_wavefunction(st, grid)
        cmat = tr.basis_matrix(d, grid.astype(np.complex128), 24)
        series = cmat @ coh.coefficients_in_basis(st, 24, tail_tol=np.inf)
        worst = max(worst, float(np.max(np.abs(vals - series)))
                    / float(np.max(np.abs(vals))))
    out.append(_rec("coherent: wavefunction vs coefficient sum", worst, 1e-10))
    return out


# ---------------------------------------------------------------------------
# 5. resolution of the identity
# ---------------------------------------------------------------------------

def _moment_residual(tau, n_max, quad):
    """Closed-form radial moment: int e^{2 n p} nu_1(2 tau, 2p) 2 dp = e^{tau n^2}."""
    worst = 0.0
    rho_n = quad.rho_nodes
    from .kernels import nu

    w = quad.rho_glw * 2.0 * np.real(nu(1, 2.0 * tau, 2.0 * rho_n))
    for n in range(n_max + 1):
        # e^{2np} integrated over R = 2 cosh(2np) over the half-line
        val = float(np.sum(w * 2.0 * np.cosh(2.0 * n * rho_n)))
        worst = max(worst, abs(val - math.exp(tau * n * n)) / math.exp(tau * n * n))
    return worst


def suite_resolution(fast=False, negative_controls=True):
    out = []
    quad1 = build_phase_quadrature(1, 0.5, 8, n_radial=100 if fast else 160)
    M1 = resolve_identity_matrix(1, 0.5, 8, quad1)
    dev1 = float(np.max(np.abs(M1 - np.eye(len(M1)))))
    out.append(_rec("resolution d=1 (|n|<=8, tau=0.5)", dev1, 1e-8))
    out.append(_rec("resolution d=1: radial moment identity",
                    _moment_residual(0.5, 8, quad1), 1e-10))
    quad2 = build_phase_quadrature(2, 0.5, 4, n_radial=60 if fast else 100,
                                   n_dirs=24)
    M2 = resolve_identity_matrix(2, 0.5, 4, quad2)
    dev2 = float(np.max(np.abs(M2 - np.eye(len(M2)))))
    out.append(_rec("resolution d=2 (l<=4, tau=0.5)", dev2, 1e-4))
    if negative_controls:
        C1 = resolve_identity_matrix(1, 0.5, 8, quad1, weight="control")
        out.append(_rec("resolution d=1 negative control (nu(tau,p) weight)",
                        float(np.max(np.abs(C1 - np.eye(len(C1))))),
                        10 * 1e-8, invert=True))
        C2 = resolve_identity_matrix(2, 0.5, 4, quad2, weight="control")
        out.append(_rec("resolution d=2 negative control (nu(tau,p) weight)",
                        float(np.max(np.abs(C2 - np.eye(len(C2))))),
                        10 * 1e-4, invert=True))
    return out


# ---------------------------------------------------------------------------
# 6. transform: isometry, inversion, adjoint
# ---------------------------------------------------------------------------

def suite_transform(fast=False):
    rng = np.random.default_rng(23)
    out = []
    tau = 0.5
    quad1 = build_phase_quadrature(1, tau, 6, n_radial=100 if fast else 160)
    f1 = rng.normal(size=13) + 1j * rng.normal(size=13)
    f1 /= np.linalg.norm(f1)
    out.append(_rec("transform d=1: round trip invert(transform(f))",
                    round_trip_residual(1, tau, f1, quad1), 1e-6))
    quad2 = build_phase_quadrature(2, tau, 3, n_radial=60 if fast else 100,
                                   n_dirs=20)
    f2 = rng.normal(size=16) + 1j * rng.normal(size=16)
    f2 /= np.linalg.norm(f2)
    out.append(_rec("transform d=2: round trip invert(transform(f))",
                    round_trip_residual(2, tau, f2, quad2), 1e-5))
    out.append(_rec("transform d=3: zonal round trip (degree 3)",
                    round_trip_zonal_d3(tau, 3,
                                        n_radial=80 if fast else 120), 1e-5))
    G1 = isometry_gram(1, tau, 8, quad1)
    out.append(_rec("transform d=1: isometry Gram",
                    float(np.max(np.abs(G1 - np.eye(len(G1))))), 1e-8))
    G2 = isometry_gram(2, tau, 3, quad2)
    out.append(_rec("transform d=2: isometry Gram",
                    float(np.max(np.abs(G2 - np.eye(len(G2))))), 1e-4))
    # adjoint inversion on a holomorphic input (transform of Y_{1,0} analog)
    worst = 0.0
    for d, quad, nb in ((1, quad1, 13), (2, quad2, 16)):
        f = np.zeros(nb, dtype=np.complex128)
        f[nb // 2] = 1.0
        cut = tr._cutoff_from_len(d, nb)
        F_at = lambda labels, d=d, f=f: tr.sb_transform(d, tau, f, labels)
        rec = adjoint_inverse_coeffs(d, tau, cut, F_at, quad)
        worst = max(worst, float(np.max(np.abs(rec - f))))
    out.append(_rec("transform: adjoint inversion on holomorphic input",
                    worst, 1e-6))
    pt = random_phase_point(1, rng, p_scale=0.5)
    params = ModelParams.from_tau(1, tau)
    a = complexify(params, pt)
    out.append(_rec("transform d=1: reproducing-kernel identity",
                    tr.reproducing_identity_residual(1, tau, f1, a, quad1),
                    1e-8))
    worst = 0.0
    for _ in range(10):
        pt = random_phase_point(3, rng, p_scale=1.0)
        a = complexify(ModelParams.from_tau(3, tau), pt)
        worst = max(worst, tr.sum_rule_residual(a.a))
    out.append(_rec("transform: bilinear sum rule on S^d_C", worst, 1e-10))
    worst = max(tr.radial_generator_residual(
        d, p, np.cosh, np.sinh, np.cosh) for d in (1, 2, 3)
        for p in (0.4, 0.9, 1.3))
    s = 0.7
    worst_g = max(tr.radial_generator_residual(
        2, p,
        lambda R: math.exp(-R * R / (2 * s)),
        lambda R: -R / s * math.exp(-R * R / (2 * s)),
        lambda R: (R * R / s**2 - 1.0 / s) * math.exp(-R * R / (2 * s)))
        for p in (0.3, 0.6, 0.9, 1.2, 1.5))
    out.append(_rec("transform: radial label-Laplacian identity",
                    max(worst, worst_g), 1e-5))
    return out


# ---------------------------------------------------------------------------
# 7. flat-space oracle
# ---------------------------------------------------------------------------

def suite_flat(fast=False):
    out = []
    fp = FlatParams(d=1)
    M = flat_mod.flat_resolution_matrix(fp, n_herm=6)
    out.append(_rec("flat: resolution on 6 Hermite functions",
                    float(np.max(np.abs(M - np.eye(6)))), 1e-8))
    out.append(_rec("flat: inversion on 6 Hermite functions",
                    flat_mod.flat_inversion_residual(fp, n_herm=6), 1e-8))
    rng = np.random.default_rng(3)
    xs = rng.normal(size=(4, 2))
    ps = rng.normal(size=(4, 2))
    series = flat_mod.flat_complexify_series(fp, xs, ps, 3)
    closed = flat_mod.flat_complexify(fp, xs, ps)
    out.append(_rec("flat: complexifier series terminates",
                    float(np.max(np.abs(series - closed))), 1e-15))
    worst_peak = 0.0
    monotone = True
    for d in (1, 2, 3):
        rep = flat_mod.small_tau_limit_check(d, taus=(0.02, 0.01))
        worst_peak = max(worst_peak, rep["peak_discrepancy"][0])
        monotone = monotone and rep["monotone"]
    out.append(_rec("flat: small-tau peak discrepancy (tau=0.02)",
                    worst_peak, 0.05))
    out.append(_rec("flat: small-tau discrepancy monotone",
                    0.0 if monotone else 1.0, 0.5))
    rep1 = flat_mod.small_tau_limit_check(1, taus=(0.02, 0.01))
    out.append(_rec("flat: coherent width vs sqrt(tau/2)",
                    rep1["width_rel_error"], 0.2))
    return out


# ---------------------------------------------------------------------------
# 8. Husimi densities
# ---------------------------------------------------------------------------

def suite_husimi(fast=False):
    rng = np.random.default_rng(5)
    out = []
    tau = 0.5
    worst_mass = 0.0
    worst_min = 0.0
    for d, cutoff in ((1, 6), (2, 3)):
        quad = build_phase_quadrature(
            d, tau, cutoff,
            n_radial=80 if fast else 120,
            n_dirs=20)
        nb = 2 * cutoff + 1 if d == 1 else (cutoff + 1) ** 2
        for _ in range(2 if fast else 5):
            f = rng.normal(size=nb) + 1j * rng.normal(size=nb)
            f /= np.linalg.norm(f)
            rep = tr.husimi_report(d, tau, f, quad)
            worst_mass = max(worst_mass, abs(rep["mass"] - 1.0))
            worst_min = min(worst_min, rep["min"])
    gram3, min3 = _husimi_d3(tau, 3, rng, n_states=2 if fast else 5)
    worst_mass = max(worst_mass, gram3)
    worst_min = min(worst_min, min3)
    out.append(_rec("husimi: unit mass", worst_mass, 1e-6))
    out.append(_rec("husimi: nonnegative", -worst_min, 0.0))
    return out


def _husimi_d3(tau, lmax, rng, n_states=5):
    """d=3 Husimi masses for random zonal states via the zonal Gram matrix."""
    quad = build_phase_quadrature(3, tau, lmax, n_radial=100, n_dirs=16,
                                  n_polar_dirs=8, n_polar_x=4, n_azimuth_x=4,
                                  n_chi_x=4)
    from .kernels import gegenbauer_eval

    n_chi = 2 * lmax + 6
    k = np.arange(1, n_chi + 1)
    chi = k * math.pi / (n_chi + 1)
    wchi = (math.pi / (n_chi + 1)) * np.sin(chi) ** 2 * 4.0 * math.pi
    lam = np.array([l * (l + 2.0) for l in range(lmax + 1)])
    heat = np.exp(-tau * lam / 2.0)
    norm = math.sqrt(2.0 * math.pi ** 2)
    G = np.zeros((lmax + 1, lmax + 1), dtype=np.complex128)
    min_density = 0.0
    samples = []
    for i in range(n_chi):
        x = np.array([math.cos(chi[i]), math.sin(chi[i]), 0.0, 0.0])
        labels = quad.labels_at_point(x)
        E = np.stack([gegenbauer_eval(3, l, np.conj(labels[:, 0])) * heat[l]
                      / norm for l in range(lmax + 1)], axis=1)
        G += wchi[i] * (E.conj().T @ (E * quad.p_w_resolution[:, None]))
        samples.append(E)
    worst_mass = 0.0
    for _ in range(n_states):
        c = rng.normal(size=lmax + 1) + 1j * rng.normal(size=lmax + 1)
        c /= np.linalg.norm(c)
        mass = float(np.real(np.conj(c) @ G @ c))
        worst_mass = max(worst_mass, abs(mass - 1.0))
        for E in samples:
            min_density = min(min_density, float(np.min(np.abs(E @ c) ** 2)))
    return worst_mass, min_density


SUITES = {
    "complexifier": suite_complexifier,
    "kernels": suite_kernels,
    "operators": suite_operators,
    "coherent": suite_coherent,
    "resolution": suite_resolution,
    "transform": suite_transform,
    "flat": suite_flat,
    "husimi": suite_husimi,
}


def run_suite(name, fast=False, **kw):
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    return SUITES[name](fast=fast, **kw)


def run_suites(names=None, fast=False, negative_controls=True):
    names = list(names) if names else list(SUITES)
    checks = []
    for name in names:
        if name == "resolution":
            checks.extend(suite_resolution(fast=fast,
                                           negative_controls=negative_controls))
        else:
            checks.extend(run_suite(name, fast=fast))
    return {"checks": checks,
            "passed": all(c["passed"] for c in checks)}
