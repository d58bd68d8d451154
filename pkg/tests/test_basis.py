"""Operator matrices: Euclidean-group algebra, constraints, annihilation."""

import numpy as np
import pytest

from spherecs import (BasisSpec, build_annihilation, build_basis,
                      constraint_residual, euclidean_algebra_check)
from spherecs.basis import (annihilation_apply, annihilation_checks,
                            build_annihilation_explicit,
                            build_annihilation_polar, degree_lambda,
                            lx_casimir_check_d2)
from spherecs.errors import OverflowGuard


@pytest.fixture(scope="module")
def ops_d1():
    return build_basis(BasisSpec(dim=1, cutoff=16))


@pytest.fixture(scope="module")
def ops_d2():
    return build_basis(BasisSpec(dim=2, cutoff=10))


def test_algebra_d1(ops_d1):
    rep = euclidean_algebra_check(ops_d1)
    assert max(rep.values()) <= 1e-13


def test_algebra_d2(ops_d2):
    rep = euclidean_algebra_check(ops_d2)
    assert max(rep.values()) <= 1e-10


def test_constraint_x_squared(ops_d1, ops_d2):
    assert constraint_residual(ops_d1) <= 1e-13
    assert constraint_residual(ops_d2) <= 1e-10


def test_casimir_relations_d2(ops_d2):
    rep = lx_casimir_check_d2(ops_d2)
    assert max(rep.values()) <= 1e-10


def test_annihilation_three_constructions(ops_d1, ops_d2):
    for ops, tol in ((ops_d1, 1e-13), (ops_d2, 1e-10)):
        rep = annihilation_checks(ops, tau=0.5)
        assert max(rep.values()) <= tol


def test_annihilation_sum_of_squares(ops_d2):
    # interior blocks of sum_k A_k^2 equal r^2 * Id
    aops = build_annihilation(ops_d2, tau=0.5)
    rep = annihilation_checks(ops_d2, tau=0.5)
    assert rep["A^2=r^2"] <= 1e-10
    assert len(aops.A) == 3


def test_explicit_and_polar_match_conjugation(ops_d2):
    tau = 0.7
    conj = build_annihilation(ops_d2, tau).A
    expl = build_annihilation_explicit(ops_d2, tau)
    pol = build_annihilation_polar(ops_d2, tau)
    scale = max(np.max(np.abs(m)) for m in conj)
    for c, e, p in zip(conj, expl, pol):
        assert np.max(np.abs(c - e)) <= 1e-12 * scale
        assert np.max(np.abs(c - p)) <= 1e-12 * scale


def test_degree_lambda():
    deg = np.array([0, 1, 2, 3])
    assert np.array_equal(degree_lambda(1, deg), deg * deg)
    assert np.array_equal(degree_lambda(2, deg), deg * (deg + 1))
    assert np.array_equal(degree_lambda(3, deg), deg * (deg + 2))


def test_overflow_guard():
    ops = build_basis(BasisSpec(dim=1, cutoff=16))
    with pytest.raises(OverflowGuard):
        build_annihilation(ops, tau=100.0)


def test_annihilation_apply_matches_matrix():
    rng = np.random.default_rng(21)
    for dim, cutoff in ((1, 12), (2, 8)):
        ops = build_basis(BasisSpec(dim=dim, cutoff=cutoff))
        aops = build_annihilation(ops, tau=0.5)
        n = ops.size
        c = rng.normal(size=n) + 1j * rng.normal(size=n)
        free = annihilation_apply(dim, cutoff, 0.5, c)
        for k, mat in enumerate(aops.A):
            assert np.max(np.abs(free[k] - mat @ c)) < 1e-11 * np.max(
                np.abs(mat @ c) + 1.0)
