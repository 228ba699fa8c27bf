"""Fit logistic-growth and SIR parameters to a cumulative case series.

Both fits minimize plain SSE on the cumulative counts and are fully
deterministic: a fixed multi-start (logistic) or a fixed parameter grid (SIR)
seeds the simplex search, so identical inputs always give identical fits.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from ._simplex import nelder_mead
from .epimodel import CompartmentState, ModelKind, ModelParams, integrate
from .errors import (
    DegenerateSeriesError,
    InsufficientDataError,
    InvalidParamsError,
    InvalidSeriesError,
)

FIT_STEPS_PER_DAY = 20  # integration resolution used while fitting SIR

# SIR search grid, scanned in lexicographic order (beta, gamma, i0).
GRID_BETA = np.linspace(0.05, 1.0, 20)
GRID_GAMMA = np.linspace(0.02, 0.5, 25)
GRID_I0 = np.array([1e-6, 1e-5, 1e-4])


@dataclass(frozen=True)
class LogisticFit:
    """Three-parameter logistic curve K / (1 + exp(-r (t - t0)))."""

    K: float
    r: float
    t0: float
    sse: float
    n_obs: int


@dataclass(frozen=True)
class SirFit:
    beta: float
    gamma: float
    i0: float
    sse: float
    n_obs: int
    population: float


def logistic_value(K: float, r: float, t0: float, t):
    """Evaluate the logistic curve at scalar or array ``t``."""
    if K <= 0 or r <= 0:
        raise InvalidParamsError(f"K and r must be > 0, got K={K}, r={r}")
    t_arr = np.asarray(t, dtype=np.float64)
    # exp argument clipped against float64 overflow; the value is unchanged.
    z = np.clip(-r * (t_arr - t0), -745.0, 709.0)
    out = K / (1.0 + np.exp(z))
    if np.ndim(t) == 0:
        return float(out)
    return out


def _check_series(series, min_points: int) -> np.ndarray:
    y = np.asarray(series, dtype=np.float64)
    if y.ndim != 1:
        raise InvalidSeriesError(f"series must be 1-d, got shape {y.shape}")
    if y.shape[0] < min_points:
        raise InsufficientDataError(
            f"need at least {min_points} points, got {y.shape[0]}"
        )
    if not np.all(np.isfinite(y)):
        raise InvalidSeriesError("series contains non-finite values")
    if np.any(y < 0):
        raise InvalidSeriesError("cumulative counts cannot be negative")
    if np.any(np.diff(y) < 0):
        raise InvalidSeriesError("cumulative series must be non-decreasing")
    if y.min() == y.max():
        raise DegenerateSeriesError("constant series cannot be fitted")
    return y


def fit_logistic(series) -> LogisticFit:
    """SSE-minimizing (K, r, t0) with K constrained to >= max(series).

    Deterministic multi-start: a fixed lattice of starting points derived
    from the data seeds a simplex search; the best final SSE wins, first
    start winning ties.
    """
    y = _check_series(series, min_points=5)
    n = y.shape[0]
    t = np.arange(n, dtype=np.float64)
    y_max = float(y.max())

    def objective(x) -> float:
        K, r, t0 = x
        if not np.all(np.isfinite(x)):
            return 1e300
        if K < y_max or r <= 0:
            violation = max(0.0, (y_max - K) / y_max) + max(0.0, -r)
            return 1e30 * (1.0 + violation)
        z = np.clip(-r * (t - t0), -745.0, 709.0)
        diff = K / (1.0 + np.exp(z)) - y
        return float(diff @ diff)

    t_half = float(np.argmax(y >= 0.5 * y_max))
    starts = []
    for k_mult in (1.05, 2.0, 5.0):
        for r0 in (0.05, 0.12, 0.25, 0.5):
            for t0 in (t_half, 0.5 * n):
                starts.append((k_mult * y_max, r0, t0))

    best_x = None
    best_f = math.inf
    for x0 in starts:
        scale = (0.2 * x0[0], 0.5 * x0[1], max(2.0, 0.1 * n))
        x, f = nelder_mead(objective, x0, scale)
        if f < best_f:
            best_x, best_f = x, f
    return LogisticFit(K=float(best_x[0]), r=float(best_x[1]),
                       t0=float(best_x[2]), sse=best_f, n_obs=n)


def _sir_predictions(beta, gamma, i0, n_days: int) -> np.ndarray:
    """(n_days, m) cumulative-infected fractions at whole days."""
    bt = np.asarray(beta, dtype=np.float64).ravel()
    g = np.asarray(gamma, dtype=np.float64).ravel()
    z = np.asarray(i0, dtype=np.float64).ravel()
    return _kernels.sir_cumulative_batch(bt, g, z, n_days, FIT_STEPS_PER_DAY)


def fit_sir(series, population: float) -> SirFit:
    """SSE-minimizing (beta, gamma, i0) for N*(i(t)+r(t)) vs the series.

    A coarse (beta, gamma, i0) grid is evaluated in lexicographic order and
    its first minimizer seeds a simplex refinement over (beta, gamma, ln i0).
    """
    y = _check_series(series, min_points=10)
    n = y.shape[0]
    if population < y.max():
        raise InvalidParamsError(
            f"population {population} is below the series maximum {y.max():g}"
        )

    bb = np.repeat(GRID_BETA, GRID_GAMMA.size * GRID_I0.size)
    gg = np.tile(np.repeat(GRID_GAMMA, GRID_I0.size), GRID_BETA.size)
    zz = np.tile(GRID_I0, GRID_BETA.size * GRID_GAMMA.size)
    preds = _sir_predictions(bb, gg, zz, n)
    sse_grid = ((population * preds - y[:, None]) ** 2).sum(axis=0)
    k = int(np.argmin(sse_grid))  # first minimum = lexicographic-first

    def objective(x) -> float:
        beta, gamma, u = x
        if not np.all(np.isfinite(x)):
            return 1e300
        i0 = math.exp(u)
        if beta <= 0 or gamma <= 0 or i0 >= 1:
            return 1e30 * (1.0 + max(0.0, -beta) + max(0.0, -gamma))
        pred = _sir_predictions(beta, gamma, i0, n)[:, 0]
        diff = population * pred - y
        return float(diff @ diff)

    x0 = (float(bb[k]), float(gg[k]), math.log(float(zz[k])))
    x, f = nelder_mead(objective, x0, scale=(0.02, 0.01, 0.5))
    return SirFit(beta=float(x[0]), gamma=float(x[1]), i0=math.exp(float(x[2])),
                  sse=f, n_obs=n, population=float(population))


def project(fit: LogisticFit | SirFit, horizon: int) -> np.ndarray:
    """Evaluate the fitted model over the ``horizon`` days after the series.

    Day indices continue the observed series: the first projected value is
    the model at the day after the last observation.
    """
    if horizon <= 0:
        raise InvalidParamsError(f"horizon must be > 0, got {horizon}")
    horizon = int(horizon)
    days = np.arange(fit.n_obs, fit.n_obs + horizon, dtype=np.float64)
    if isinstance(fit, LogisticFit):
        return logistic_value(fit.K, fit.r, fit.t0, days)
    params = ModelParams(beta=fit.beta, gamma=fit.gamma,
                         population=fit.population)
    init = CompartmentState(s=1.0 - fit.i0, e=0.0, i=fit.i0, r=0.0, t=0.0)
    step = 1.0 / FIT_STEPS_PER_DAY
    traj = integrate(ModelKind.SIR, params, horizon=fit.n_obs - 1 + horizon,
                     step=step, init=init)
    idx = np.arange(fit.n_obs, fit.n_obs + horizon) * FIT_STEPS_PER_DAY
    return fit.population * (traj.i[idx] + traj.r[idx])


def fit_report(fit: LogisticFit | SirFit, horizon: int = 0) -> dict:
    """Report dict: {model, params, sse, n_points, horizon}."""
    if isinstance(fit, LogisticFit):
        model = "logistic"
        params = {"K": fit.K, "r": fit.r, "t0": fit.t0}
    else:
        model = "sir"
        params = {"beta": fit.beta, "gamma": fit.gamma, "i0": fit.i0,
                  "population": fit.population}
    return {"model": model, "params": params, "sse": fit.sse,
            "n_points": fit.n_obs, "horizon": horizon}


def fit_report_json(fit: LogisticFit | SirFit, horizon: int = 0) -> str:
    """JSON fit report with numbers at full precision."""
    return json.dumps(fit_report(fit, horizon), indent=2) + "\n"
