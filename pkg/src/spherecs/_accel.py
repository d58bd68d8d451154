"""Hot numerical kernels with a numba backend and a pure-numpy fallback.

The backend is chosen once at import time from the environment variable
``SPHERECS_BACKEND``:

* ``numba`` -- force the jit-compiled loops (raises if numba is unavailable);
* ``numpy`` -- force the vectorized fallback;
* ``auto`` (default, also used for unset/unknown values) -- numba when it
  imports cleanly, numpy otherwise.

Both implementations are kept importable for testing and benchmarking as
``_numpy_impl`` / ``_numba_impl`` dictionaries.  All functions are pure and
use fixed-order reductions, so results do not depend on thread counts.

Exported kernels
----------------
image_sum(theta, tau, nmax, kind)
    Sums over periodic Gaussian images u = theta - 2*pi*n, n in [-nmax, nmax]:
    kind 0: sum exp(-u^2/2tau)
    kind 1: sum u * exp(-u^2/2tau)
    kind 2: sum (-1)^n * u * exp(-u^2/2tau)
    kind 3: sum (1 - u^2/tau) * exp(-u^2/2tau)            (first derivative)
    kind 4: sum (-3/tau + 6u^2/tau^2 - u^4/tau^3) * exp(-u^2/2tau)  (third)
legendre_sum(z, coefhat, c)
    sum_l coefhat[l] * (P_l(z) * exp(-l*c)) via the scaled three-term
    recurrence; the caller folds exp(+l*c) into coefhat to avoid overflow.
chebu_sum(z, coefhat, c)
    Same with Chebyshev polynomials of the second kind.
ylm_table(ax, ay, az, lmax)
    Table of complex spherical harmonics Y_l^m at (possibly complex) points,
    shape (npts, (lmax+1)^2), index l*(l+1)+m; valid off the real sphere.
"""

from __future__ import annotations

import math
import os
import warnings

import numpy as np

__all__ = [
    "BACKEND",
    "image_sum",
    "legendre_sum",
    "chebu_sum",
    "ylm_table",
    "set_threads",
]

_TWO_PI = 2.0 * math.pi


# ---------------------------------------------------------------------------
# numpy (vectorized) implementations
# ---------------------------------------------------------------------------

def _image_sum_numpy(theta, tau, nmax, kind):
    theta = np.asarray(theta, dtype=np.complex128)
    out = np.zeros_like(theta)
    inv2t = 0.5 / tau
    for n in range(-nmax, nmax + 1):
        u = theta - _TWO_PI * n
        g = np.exp(-u * u * inv2t)
        if kind == 0:
            out += g
        elif kind == 1:
            out += u * g
        elif kind == 2:
            sgn = -1.0 if (n & 1) else 1.0
            out += sgn * u * g
        elif kind == 3:
            out += (1.0 - u * u / tau) * g
        elif kind == 4:
            u2 = u * u
            out += (-3.0 / tau + 6.0 * u2 / tau**2 - u2 * u2 / tau**3) * g
        else:
            raise ValueError(f"unknown image-sum kind {kind}")
    return out


def _legendre_sum_numpy(z, coefhat, c):
    z = np.asarray(z, dtype=np.complex128)
    L = len(coefhat) - 1
    e1 = math.exp(-c)
    e2 = e1 * e1
    q_prev = np.ones_like(z)           # P_0 * e^{0}
    out = coefhat[0] * q_prev
    if L == 0:
        return out
    q = z * e1                          # P_1 * e^{-c}
    out = out + coefhat[1] * q
    for l in range(1, L):
        q_next = ((2 * l + 1) * z * e1 * q - l * e2 * q_prev) / (l + 1)
        q_prev, q = q, q_next
        out = out + coefhat[l + 1] * q
    return out


def _chebu_sum_numpy(z, coefhat, c):
    z = np.asarray(z, dtype=np.complex128)
    L = len(coefhat) - 1
    e1 = math.exp(-c)
    e2 = e1 * e1
    q_prev = np.ones_like(z)           # U_0
    out = coefhat[0] * q_prev
    if L == 0:
        return out
    q = 2.0 * z * e1                   # U_1 * e^{-c}
    out = out + coefhat[1] * q
    for l in range(1, L):
        q_next = 2.0 * z * e1 * q - e2 * q_prev
        q_prev, q = q, q_next
        out = out + coefhat[l + 1] * q
    return out


def _ylm_norms(lmax):
    """sqrt((2l+1)/(4 pi) * (l-m)! * (l+m)!) for idx = l*(l+1)+m."""
    norms = np.empty((lmax + 1) ** 2)
    lfact = [math.lgamma(k + 1) for k in range(2 * lmax + 1)]
    for l in range(lmax + 1):
        for m in range(-l, l + 1):
            logn = 0.5 * (math.log((2 * l + 1) / (4.0 * math.pi))
                          + lfact[l - m] + lfact[l + m])
            norms[l * (l + 1) + m] = math.exp(logn)
    return norms


def _ylm_table_numpy(ax, ay, az, lmax):
    ax = np.asarray(ax, dtype=np.complex128)
    ay = np.asarray(ay, dtype=np.complex128)
    az = np.asarray(az, dtype=np.complex128)
    npts = ax.shape[0]
    dim = (lmax + 1) ** 2
    R = np.zeros((npts, dim), dtype=np.complex128)
    r2 = ax * ax + ay * ay + az * az
    xp = ax + 1j * ay
    xm = ax - 1j * ay
    R[:, 0] = 1.0
    for l in range(1, lmax + 1):
        base = l * (l + 1)
        prev = (l - 1) * l
        R[:, base + l] = -xp * R[:, prev + (l - 1)] / (2 * l)
        R[:, base - l] = xm * R[:, prev - (l - 1)] / (2 * l)
        for m in range(-(l - 1), l):
            num = (2 * l - 1) * az * R[:, prev + m]
            if abs(m) <= l - 2:
                num = num - r2 * R[:, (l - 2) * (l - 1) + m]
            R[:, base + m] = num / ((l + m) * (l - m))
    return R * _ylm_norms(lmax)[None, :]


_numpy_impl = {
    "image_sum": _image_sum_numpy,
    "legendre_sum": _legendre_sum_numpy,
    "chebu_sum": _chebu_sum_numpy,
    "ylm_table": _ylm_table_numpy,
}


# ---------------------------------------------------------------------------
# numba implementations
# ---------------------------------------------------------------------------

def _build_numba_impl():
    from numba import njit

    @njit(cache=True)
    def image_sum_nb(theta, tau, nmax, kind):  # pragma: no cover - jitted
        out = np.zeros(theta.shape[0], dtype=np.complex128)
        inv2t = 0.5 / tau
        for i in range(theta.shape[0]):
            acc = 0.0 + 0.0j
            for n in range(-nmax, nmax + 1):
                u = theta[i] - _TWO_PI * n
                g = np.exp(-u * u * inv2t)
                if kind == 0:
                    acc += g
                elif kind == 1:
                    acc += u * g
                elif kind == 2:
                    if n & 1:
                        acc -= u * g
                    else:
                        acc += u * g
                elif kind == 3:
                    acc += (1.0 - u * u / tau) * g
                else:
                    u2 = u * u
                    acc += (-3.0 / tau + 6.0 * u2 / tau**2
                            - u2 * u2 / tau**3) * g
            out[i] = acc
        return out

    @njit(cache=True)
    def legendre_sum_nb(z, coefhat, c):  # pragma: no cover - jitted
        L = coefhat.shape[0] - 1
        e1 = math.exp(-c)
        e2 = e1 * e1
        out = np.empty(z.shape[0], dtype=np.complex128)
        for i in range(z.shape[0]):
            zi = z[i]
            q_prev = 1.0 + 0.0j
            acc = coefhat[0] * q_prev
            if L > 0:
                q = zi * e1
                acc += coefhat[1] * q
                for l in range(1, L):
                    q_next = ((2 * l + 1) * zi * e1 * q
                              - l * e2 * q_prev) / (l + 1)
                    q_prev = q
                    q = q_next
                    acc += coefhat[l + 1] * q
            out[i] = acc
        return out

    @njit(cache=True)
    def chebu_sum_nb(z, coefhat, c):  # pragma: no cover - jitted
        L = coefhat.shape[0] - 1
        e1 = math.exp(-c)
        e2 = e1 * e1
        out = np.empty(z.shape[0], dtype=np.complex128)
        for i in range(z.shape[0]):
            zi = z[i]
            q_prev = 1.0 + 0.0j
            acc = coefhat[0] * q_prev
            if L > 0:
                q = 2.0 * zi * e1
                acc += coefhat[1] * q
                for l in range(1, L):
                    q_next = 2.0 * zi * e1 * q - e2 * q_prev
                    q_prev = q
                    q = q_next
                    acc += coefhat[l + 1] * q
            out[i] = acc
        return out

    @njit(cache=True)
    def ylm_table_nb(ax, ay, az, lmax, norms):  # pragma: no cover - jitted
        npts = ax.shape[0]
        dim = (lmax + 1) ** 2
        R = np.zeros((npts, dim), dtype=np.complex128)
        for i in range(npts):
            x = ax[i]
            y = ay[i]
            z = az[i]
            r2 = x * x + y * y + z * z
            xp = x + 1j * y
            xm = x - 1j * y
            R[i, 0] = 1.0
            for l in range(1, lmax + 1):
                base = l * (l + 1)
                prev = (l - 1) * l
                R[i, base + l] = -xp * R[i, prev + (l - 1)] / (2 * l)
                R[i, base - l] = xm * R[i, prev - (l - 1)] / (2 * l)
                for m in range(-(l - 1), l):
                    num = (2 * l - 1) * z * R[i, prev + m]
                    if abs(m) <= l - 2:
                        num = num - r2 * R[i, (l - 2) * (l - 1) + m]
                    R[i, base + m] = num / ((l + m) * (l - m))
            for j in range(dim):
                R[i, j] *= norms[j]
        return R

    def image_sum(theta, tau, nmax, kind):
        theta = np.ascontiguousarray(theta, dtype=np.complex128)
        return image_sum_nb(theta.ravel(), float(tau), int(nmax),
                            int(kind)).reshape(theta.shape)

    def legendre_sum(z, coefhat, c):
        z = np.ascontiguousarray(z, dtype=np.complex128)
        coefhat = np.ascontiguousarray(coefhat, dtype=np.float64)
        return legendre_sum_nb(z.ravel(), coefhat, float(c)).reshape(z.shape)

    def chebu_sum(z, coefhat, c):
        z = np.ascontiguousarray(z, dtype=np.complex128)
        coefhat = np.ascontiguousarray(coefhat, dtype=np.float64)
        return chebu_sum_nb(z.ravel(), coefhat, float(c)).reshape(z.shape)

    def ylm_table(ax, ay, az, lmax):
        ax = np.ascontiguousarray(ax, dtype=np.complex128)
        ay = np.ascontiguousarray(ay, dtype=np.complex128)
        az = np.ascontiguousarray(az, dtype=np.complex128)
        return ylm_table_nb(ax, ay, az, int(lmax), _ylm_norms(lmax))

    return {
        "image_sum": image_sum,
        "legendre_sum": legendre_sum,
        "chebu_sum": chebu_sum,
        "ylm_table": ylm_table,
    }


def _select_backend():
    choice = os.environ.get("SPHERECS_BACKEND", "auto").strip().lower()
    if choice not in ("auto", "numba", "numpy"):
        warnings.warn(f"unknown SPHERECS_BACKEND={choice!r}; using auto")
        choice = "auto"
    if choice == "numpy":
        return "numpy", _numpy_impl
    try:
        impl = _build_numba_impl()
        return "numba", impl
    except Exception:
        if choice == "numba":
            raise
        warnings.warn("numba unavailable; falling back to numpy backend")
        return "numpy", _numpy_impl


BACKEND, _impl = _select_backend()

image_sum = _impl["image_sum"]
legendre_sum = _impl["legendre_sum"]
chebu_sum = _impl["chebu_sum"]
ylm_table = _impl["ylm_table"]


def set_threads(n: int) -> None:
    """Set the numba threading layer width (no-op on the numpy backend).

    Results are independent of the thread count: every reduction in the
    package is a fixed-order numpy/loop sum.
    """
    if BACKEND != "numba":
        return
    try:
        import numba

        numba.set_num_threads(max(1, int(n)))
    except Exception:
        pass
