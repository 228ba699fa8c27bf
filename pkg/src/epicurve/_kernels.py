"""Hot numeric kernels: fixed-step 4th-order Runge-Kutta stepping.

Two interchangeable backends produce bit-identical results:

* ``numba`` (default) -- the kernels below compiled with ``@njit(cache=True)``.
* ``numpy`` -- the same source interpreted, plus a vectorized batch variant.

Set ``EPICURVE_DISABLE_NUMBA=1`` (or ``true``/``yes``/``on``) before import to
force the numpy backend.  ``benchmarks/bench_kernels.py`` times both and
asserts they agree bit-for-bit.
"""

from __future__ import annotations

import os

import numpy as np

KIND_SIR = 0
KIND_SIRS = 1
KIND_SEIR = 2
KIND_SEIRS = 3


def _deriv_impl(kind, s, e, i, r, beta, gamma, alpha, xi):
    # Rates per day for one compartment state; components sum to zero.
    ds = -beta * s * i
    de = 0.0
    di = beta * s * i - gamma * i
    dr = gamma * i
    if kind == KIND_SIRS:
        ds = -beta * s * i + xi * r
        dr = gamma * i - xi * r
    elif kind == KIND_SEIR:
        de = beta * s * i - alpha * e
        di = alpha * e - gamma * i
    elif kind == KIND_SEIRS:
        ds = -beta * s * i + xi * r
        de = beta * s * i - alpha * e
        di = alpha * e - gamma * i
        dr = gamma * i - xi * r
    return ds, de, di, dr


def _rk4_trajectory_impl(kind, beta, gamma, alpha, xi, s0, e0, i0, r0, n_steps, dt):
    # Classical fixed-step RK4; returns an (n_steps + 1, 4) array of
    # (s, e, i, r) rows.  Plain arithmetic only, so the jitted and the
    # interpreted versions produce identical bits.
    out = np.empty((n_steps + 1, 4))
    s = s0
    e = e0
    i = i0
    r = r0
    out[0, 0] = s
    out[0, 1] = e
    out[0, 2] = i
    out[0, 3] = r
    half = 0.5 * dt
    sixth = dt / 6.0
    for k in range(n_steps):
        a0, a1, a2, a3 = _deriv(kind, s, e, i, r, beta, gamma, alpha, xi)
        b0, b1, b2, b3 = _deriv(
            kind, s + half * a0, e + half * a1, i + half * a2, r + half * a3,
            beta, gamma, alpha, xi,
        )
        c0, c1, c2, c3 = _deriv(
            kind, s + half * b0, e + half * b1, i + half * b2, r + half * b3,
            beta, gamma, alpha, xi,
        )
        d0, d1, d2, d3 = _deriv(
            kind, s + dt * c0, e + dt * c1, i + dt * c2, r + dt * c3,
            beta, gamma, alpha, xi,
        )
        s += sixth * (a0 + 2.0 * (b0 + c0) + d0)
        e += sixth * (a1 + 2.0 * (b1 + c1) + d1)
        i += sixth * (a2 + 2.0 * (b2 + c2) + d2)
        r += sixth * (a3 + 2.0 * (b3 + c3) + d3)
        out[k + 1, 0] = s
        out[k + 1, 1] = e
        out[k + 1, 2] = i
        out[k + 1, 3] = r
    return out


def _sir_batch_impl(beta, gamma, i0, n_days, steps_per_day):
    # Cumulative-infected fraction i+r of the SIR system, sampled at whole
    # days, for a batch of parameter points.  Output shape (n_days, m).
    m = beta.shape[0]
    out = np.empty((n_days, m))
    dt = 1.0 / steps_per_day
    half = 0.5 * dt
    sixth = dt / 6.0
    for j in range(m):
        bt = beta[j]
        g = gamma[j]
        s = 1.0 - i0[j]
        i = i0[j]
        r = 0.0
        out[0, j] = i + r
        for d in range(1, n_days):
            for _ in range(steps_per_day):
                a0 = -bt * s * i
                a2 = bt * s * i - g * i
                a3 = g * i
                s1 = s + half * a0
                i1 = i + half * a2
                b0 = -bt * s1 * i1
                b2 = bt * s1 * i1 - g * i1
                b3 = g * i1
                s2 = s + half * b0
                i2 = i + half * b2
                c0 = -bt * s2 * i2
                c2 = bt * s2 * i2 - g * i2
                c3 = g * i2
                s3 = s + dt * c0
                i3 = i + dt * c2
                d0 = -bt * s3 * i3
                d2 = bt * s3 * i3 - g * i3
                d3 = g * i3
                s += sixth * (a0 + 2.0 * (b0 + c0) + d0)
                i += sixth * (a2 + 2.0 * (b2 + c2) + d2)
                r += sixth * (a3 + 2.0 * (b3 + c3) + d3)
            out[d, j] = i + r
    return out


def _sir_batch_numpy(beta, gamma, i0, n_days, steps_per_day):
    # Vectorized over the batch axis; the per-element expressions match
    # _sir_batch_impl token for token, so results are bit-identical.
    bt = np.asarray(beta, dtype=np.float64)
    g = np.asarray(gamma, dtype=np.float64)
    i = np.asarray(i0, dtype=np.float64).copy()
    s = 1.0 - i
    r = np.zeros_like(i)
    m = bt.shape[0]
    out = np.empty((n_days, m))
    dt = 1.0 / steps_per_day
    half = 0.5 * dt
    sixth = dt / 6.0
    out[0] = i + r
    for d in range(1, n_days):
        for _ in range(steps_per_day):
            a0 = -bt * s * i
            a2 = bt * s * i - g * i
            a3 = g * i
            s1 = s + half * a0
            i1 = i + half * a2
            b0 = -bt * s1 * i1
            b2 = bt * s1 * i1 - g * i1
            b3 = g * i1
            s2 = s + half * b0
            i2 = i + half * b2
            c0 = -bt * s2 * i2
            c2 = bt * s2 * i2 - g * i2
            c3 = g * i2
            s3 = s + dt * c0
            i3 = i + dt * c2
            d0 = -bt * s3 * i3
            d2 = bt * s3 * i3 - g * i3
            d3 = g * i3
            s = s + sixth * (a0 + 2.0 * (b0 + c0) + d0)
            i = i + sixth * (a2 + 2.0 * (b2 + c2) + d2)
            r = r + sixth * (a3 + 2.0 * (b3 + c3) + d3)
        out[d] = i + r
    return out


def _env_disables_numba() -> bool:
    flag = os.environ.get("EPICURVE_DISABLE_NUMBA", "")
    return flag.strip().lower() in {"1", "true", "yes", "on"}


BACKEND = "numpy"
_deriv = _deriv_impl

if not _env_disables_numba():
    try:
        from numba import njit
    except ImportError:
        pass
    else:
        _deriv = njit(cache=True)(_deriv_impl)
        rk4_trajectory = njit(cache=True)(_rk4_trajectory_impl)
        sir_cumulative_batch = njit(cache=True)(_sir_batch_impl)
        BACKEND = "numba"

if BACKEND == "numpy":
    rk4_trajectory = _rk4_trajectory_impl
    sir_cumulative_batch = _sir_batch_numpy


def deriv(kind, s, e, i, r, beta, gamma, alpha, xi):
    """Rate vector (ds, de, di, dr) for one state, via the active backend."""
    return _deriv(kind, s, e, i, r, beta, gamma, alpha, xi)
