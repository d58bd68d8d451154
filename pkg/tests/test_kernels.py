"""Heat-kernel evaluation against frozen high-precision references.

The reference values were computed with mpmath at 50 significant digits:
d=1 from the wrapped Gaussian image sum, d=2 from the Legendre spectral
sum (400 terms), d=3 from the closed image sum with the theta/sin(theta)
prefactor; nu_2 from its one-dimensional integral representation with the
cosh difference rewritten as 2 sinh((rho+R)/2) sinh((rho-R)/2).
"""

import math

import numpy as np
import pytest

from spherecs import TruncationSpec, nu, rho, rho_spectral, rho_theta
from spherecs.errors import ConvergenceError, UnsupportedDimension
from spherecs.kernels import (fold_angle, nu_normalization_check,
                              nu_recursion_check, rho_recursion_check)

RHO_ORACLE = {
    (1, 0.1, 1.0): 0.00850036660252034181,
    (1, 0.5, math.pi / 3): 0.188437733268338029,
    (1, 2.0, 2.5): 0.0670086467495304364,
    (1, 0.5, 0.3 + 1.5j): 3.04101886883787819 - 3.83216491729168915j,
    (2, 0.1, 1.0): 0.0118909015843708928,
    (2, 0.5, math.pi / 3): 0.127403741301840305,
    (2, 1.0, 2.5): 0.0182610401519263812,
    (2, 0.5, 0.3 + 1.5j): 1.69856239523646939 - 1.86890685449193987j,
    (2, 0.1, 2.0 + 1.0j): 4.44781419631906832e-7 - 4.13705493908173502e-7j,
    (3, 0.1, 1.0): 0.0169018158876179867,
    (3, 0.5, math.pi / 3): 0.0931300005430346011,
    (3, 2.0, 2.5): 0.0426577308419216823,
    (3, 0.5, 0.3 + 1.5j): 1.02336714135204795 - 0.988536108581543563j,
}

NU_ORACLE = {
    (1, 0.5, 0.8): 0.29749289312873448,
    (1, 2.0, 1.5): 0.160732767298801832,
    (2, 0.5, 0.8): 0.146771235651237406,
    (2, 1.0, 2.0): 0.0136682720106991088,
    (3, 0.5, 0.8): 0.0664321477842336384,
    (3, 2.0, 1.5): 0.0033148102366030346,
}


@pytest.mark.parametrize("key", sorted(RHO_ORACLE, key=repr))
def test_rho_theta_oracle(key):
    d, tau, th = key
    val = complex(rho_theta(d, tau, th))
    assert abs(val - RHO_ORACLE[key]) < 5e-13 * max(1.0, abs(RHO_ORACLE[key]))


@pytest.mark.parametrize("key", sorted(RHO_ORACLE, key=repr))
def test_rho_spectral_oracle(key):
    d, tau, th = key
    val = complex(rho_spectral(d, tau, th))
    assert abs(val - RHO_ORACLE[key]) < 5e-13 * max(1.0, abs(RHO_ORACLE[key]))


@pytest.mark.parametrize("key", sorted(NU_ORACLE, key=repr))
def test_nu_oracle(key):
    d, s, R = key
    assert abs(float(np.real(nu(d, s, R))) - NU_ORACLE[key]) \
        < 5e-13 * NU_ORACLE[key]


def test_dual_method_agreement_property():
    rng = np.random.default_rng(6)
    for d in (1, 2, 3):
        for tau in (0.1, 0.5, 2.0):
            th = rng.uniform(0.0, math.pi, 30)
            im_cap = min(2.0, math.sqrt(2.0 * tau * math.log(1e4)))
            thc = th[:10] + 1j * rng.uniform(-im_cap, im_cap, 10)
            for batch in (th, thc):
                a = rho_theta(d, tau, batch)
                b = rho_spectral(d, tau, batch)
                assert np.max(np.abs(a - b)) < 2e-8


def test_rho_recursion():
    for th in (0.3, 1.0, 2.2, 3.0):
        for tau in (0.1, 0.5, 2.0):
            rec, direct = rho_recursion_check(1, tau, th)
            assert abs(rec - direct) < 1e-12 * abs(direct)


def test_nu_recursion():
    for R in (0.2, 1.0, 3.0):
        for s in (0.1, 0.5, 2.0):
            rec, direct = nu_recursion_check(1, s, R)
            assert abs(rec - direct) < 1e-12 * abs(direct)


def test_nu_normalization():
    for d in (1, 2, 3):
        for s in (0.1, 0.5, 2.0):
            assert abs(nu_normalization_check(d, s) - 1.0) < 1e-10


def test_fold_angle_periodicity():
    # rho is 2pi-periodic and even; fold_angle maps onto [0, pi]
    for d in (1, 2, 3):
        v0 = complex(rho(d, 0.5, 1.1))
        for th in (1.1 + 2 * math.pi, -1.1, -1.1 - 4 * math.pi):
            assert abs(complex(rho(d, 0.5, th)) - v0) < 1e-13
    assert abs(complex(fold_angle(-0.4)) - 0.4) < 1e-15


def test_method_auto_dispatch_matches_both():
    for d in (1, 2, 3):
        for tau in (0.1, 0.5, 2.0):
            v = complex(rho(d, tau, 1.2))
            assert abs(v - complex(rho_theta(d, tau, 1.2))) < 2e-8
            assert abs(v - complex(rho_spectral(d, tau, 1.2))) < 2e-8


def test_spectral_rejects_tiny_tau():
    with pytest.raises(ConvergenceError):
        rho_spectral(2, 1e-3, 1.0)


def test_unsupported_dimension():
    with pytest.raises(UnsupportedDimension):
        rho(5, 0.5, 1.0)
    with pytest.raises(UnsupportedDimension):
        nu(4, 0.5, 1.0)


def test_mass_one():
    from spherecs.kernels import unit_ball_boundary_volume
    nodes, w = np.polynomial.legendre.leggauss(300)
    th = 0.5 * math.pi * (nodes + 1.0)
    wt = 0.5 * math.pi * w
    for d in (1, 2, 3):
        # surface measure of S^d: |S^{d-1}| sin^{d-1}(theta) d theta
        c = unit_ball_boundary_volume(d)
        for tau in (0.1, 0.5, 2.0):
            vals = np.real(rho(d, tau, th))
            mass = float(np.sum(wt * c * np.sin(th) ** (d - 1) * vals))
            assert abs(mass - 1.0) < 1e-10


def test_truncation_spec_override():
    # a generous explicit window must agree with the auto-resolved one
    tr = TruncationSpec(max_image_index=40)
    v1 = complex(rho_theta(1, 0.5, 1.0, tr))
    v2 = complex(rho_theta(1, 0.5, 1.0))
    assert abs(v1 - v2) < 1e-15
