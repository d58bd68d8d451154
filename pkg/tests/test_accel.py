"""The numba backend must agree with the pure-numpy fallback bit-for-bit
on representative inputs (both use the same fixed-order recurrences)."""

import numpy as np
import pytest

from spherecs import _accel
from spherecs._accel import _numpy_impl

try:
    _nb = _accel._build_numba_impl()
except Exception:  # pragma: no cover - exercised only without numba
    _nb = None

needs_numba = pytest.mark.skipif(_nb is None, reason="numba unavailable")


@needs_numba
def test_image_sum_backends_agree():
    rng = np.random.default_rng(10)
    th = rng.uniform(0, np.pi, 40) + 1j * rng.uniform(-1, 1, 40)
    for kind in (0, 1, 2, 3, 4):
        for tau in (0.1, 0.5, 2.0):
            a = _numpy_impl["image_sum"](th, tau, 12, kind)
            b = _nb["image_sum"](th, tau, 12, kind)
            assert np.max(np.abs(a - b)) < 5e-15 * max(1.0, np.max(np.abs(a)))


@needs_numba
def test_legendre_sum_backends_agree():
    rng = np.random.default_rng(11)
    z = rng.uniform(-1, 1, 30) + 1j * rng.uniform(-0.5, 0.5, 30)
    coefhat = np.exp(-0.25 * np.arange(40.0))
    a = _numpy_impl["legendre_sum"](z, coefhat, 0.3)
    b = _nb["legendre_sum"](z, coefhat, 0.3)
    assert np.max(np.abs(a - b)) < 5e-15 * np.max(np.abs(a))


@needs_numba
def test_chebu_sum_backends_agree():
    rng = np.random.default_rng(12)
    z = rng.uniform(-1, 1, 30) + 1j * rng.uniform(-0.5, 0.5, 30)
    coefhat = np.exp(-0.2 * np.arange(40.0))
    a = _numpy_impl["chebu_sum"](z, coefhat, 0.3)
    b = _nb["chebu_sum"](z, coefhat, 0.3)
    assert np.max(np.abs(a - b)) < 5e-15 * np.max(np.abs(a))


@needs_numba
def test_ylm_table_backends_agree():
    rng = np.random.default_rng(13)
    pts = rng.normal(size=(25, 3))
    pts /= np.linalg.norm(pts, axis=1, keepdims=True)
    ax, ay, az = (np.ascontiguousarray(pts[:, i], dtype=np.complex128)
                  for i in range(3))
    a = _numpy_impl["ylm_table"](ax, ay, az, 8)
    b = _nb["ylm_table"](ax, ay, az, 8)
    assert np.max(np.abs(a - b)) < 1e-13


def test_ylm_against_scipy():
    from scipy.special import sph_harm_y

    rng = np.random.default_rng(14)
    pts = rng.normal(size=(10, 3))
    pts /= np.linalg.norm(pts, axis=1, keepdims=True)
    theta = np.arccos(np.clip(pts[:, 2], -1, 1))
    phi = np.arctan2(pts[:, 1], pts[:, 0])
    tab = _accel.ylm_table(
        np.ascontiguousarray(pts[:, 0], dtype=np.complex128),
        np.ascontiguousarray(pts[:, 1], dtype=np.complex128),
        np.ascontiguousarray(pts[:, 2], dtype=np.complex128), 5)
    for l in range(6):
        for m in range(-l, l + 1):
            ref = sph_harm_y(l, m, theta, phi)
            got = tab[:, l * (l + 1) + m]
            assert np.max(np.abs(got - ref)) < 1e-13


def test_set_threads_is_safe():
    _accel.set_threads(2)
    _accel.set_threads(1)
