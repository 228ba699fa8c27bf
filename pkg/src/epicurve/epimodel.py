"""Deterministic compartmental epidemic models: SIR, SIRS, SEIR, SEIRS.

All quantities are population fractions; rates are per day.  Trajectories
come from classical fixed-step 4th-order Runge-Kutta integration, and every
integration is checked against the conservation identity s + e + i + r = 1,
which doubles as the runtime fault detector.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import _kernels
from .errors import IntegrationFaultError, InvalidParamsError, InvalidStateError

DEFAULT_STEP = 0.05
FAULT_TOLERANCE = 1e-6

# Mean SARS-CoV-2 incubation exit rate used when no latency rate is given.
DEFAULT_ALPHA = 1.0 / 14.0


class ModelKind(Enum):
    SIR = "sir"
    SIRS = "sirs"
    SEIR = "seir"
    SEIRS = "seirs"

    @property
    def has_exposed(self) -> bool:
        return self in (ModelKind.SEIR, ModelKind.SEIRS)

    @property
    def has_waning(self) -> bool:
        return self in (ModelKind.SIRS, ModelKind.SEIRS)


_KIND_IDS = {
    ModelKind.SIR: _kernels.KIND_SIR,
    ModelKind.SIRS: _kernels.KIND_SIRS,
    ModelKind.SEIR: _kernels.KIND_SEIR,
    ModelKind.SEIRS: _kernels.KIND_SEIRS,
}


@dataclass(frozen=True)
class ModelParams:
    """Transmission/removal rates (per day) plus the population size N.

    ``alpha`` (latency exit) is required by SEIR/SEIRS, ``xi`` (immunity
    waning) by SIRS/SEIRS; both stay ``None`` for kinds that do not use them.
    """

    beta: float
    gamma: float
    alpha: float | None = None
    xi: float | None = None
    population: float = 1_000_000.0

    def __post_init__(self):
        for name in ("beta", "gamma", "alpha", "xi", "population"):
            value = getattr(self, name)
            if value is not None and not math.isfinite(value):
                raise InvalidParamsError(f"{name} must be finite, got {value!r}")
        if self.beta <= 0:
            raise InvalidParamsError(f"beta must be > 0, got {self.beta}")
        if self.gamma <= 0:
            raise InvalidParamsError(f"gamma must be > 0, got {self.gamma}")
        if self.alpha is not None and self.alpha <= 0:
            raise InvalidParamsError(f"alpha must be > 0, got {self.alpha}")
        if self.xi is not None and self.xi < 0:
            raise InvalidParamsError(f"xi must be >= 0, got {self.xi}")
        if self.population < 1:
            raise InvalidParamsError(
                f"population must be >= 1, got {self.population}"
            )

    def require_for(self, kind: ModelKind) -> None:
        """Raise unless every rate the model kind needs is present."""
        if kind.has_exposed and self.alpha is None:
            raise InvalidParamsError(f"{kind.value} requires alpha")
        if kind.has_waning and self.xi is None:
            raise InvalidParamsError(f"{kind.value} requires xi")


@dataclass(frozen=True)
class CompartmentState:
    """Population fractions (s, e, i, r) at time t (days)."""

    s: float
    e: float
    i: float
    r: float
    t: float = 0.0

    def validate(self, kind: ModelKind | None = None) -> None:
        for name in ("s", "e", "i", "r"):
            value = getattr(self, name)
            if not (0.0 <= value <= 1.0):
                raise InvalidStateError(f"{name} must lie in [0, 1], got {value}")
        total = self.s + self.e + self.i + self.r
        if abs(total - 1.0) > 1e-8:
            raise InvalidStateError(f"compartments sum to {total}, expected 1")
        if kind is not None and not kind.has_exposed and self.e != 0.0:
            raise InvalidStateError(f"{kind.value} has no exposed compartment")


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Integration output: time grid plus one (s, e, i, r) row per step."""

    kind: ModelKind
    params: ModelParams
    step: float
    t: np.ndarray
    y: np.ndarray

    @property
    def s(self) -> np.ndarray:
        return self.y[:, 0]

    @property
    def e(self) -> np.ndarray:
        return self.y[:, 1]

    @property
    def i(self) -> np.ndarray:
        return self.y[:, 2]

    @property
    def r(self) -> np.ndarray:
        return self.y[:, 3]

    def __len__(self) -> int:
        return self.t.shape[0]

    def state_at(self, index: int) -> CompartmentState:
        s, e, i, r = self.y[index]
        return CompartmentState(s=float(s), e=float(e), i=float(i), r=float(r),
                                t=float(self.t[index]))

    @property
    def final(self) -> CompartmentState:
        return self.state_at(len(self) - 1)

    def to_csv(self) -> str:
        """CSV export: header ``t,s,e,i,r``, values at 12 significant digits."""
        lines = ["t,s,e,i,r"]
        for k in range(len(self)):
            row = (self.t[k], self.y[k, 0], self.y[k, 1], self.y[k, 2], self.y[k, 3])
            lines.append(",".join(format(v, ".12g") for v in row))
        return "\n".join(lines) + "\n"


def default_initial_state(params: ModelParams) -> CompartmentState:
    """One infected individual in an otherwise susceptible population."""
    i0 = 1.0 / params.population
    return CompartmentState(s=1.0 - i0, e=0.0, i=i0, r=0.0, t=0.0)


def derivative(kind: ModelKind, state: CompartmentState,
               params: ModelParams) -> tuple[float, float, float, float]:
    """Rate vector (ds, de, di, dr) per day; components sum to zero."""
    params.require_for(kind)
    state.validate(kind)
    alpha = params.alpha if params.alpha is not None else 0.0
    xi = params.xi if params.xi is not None else 0.0
    ds, de, di, dr = _kernels.deriv(
        _KIND_IDS[kind], state.s, state.e, state.i, state.r,
        params.beta, params.gamma, alpha, xi,
    )
    return float(ds), float(de), float(di), float(dr)


def integrate(kind: ModelKind, params: ModelParams, horizon: float, *,
              step: float = DEFAULT_STEP,
              init: CompartmentState | None = None) -> Trajectory:
    """Integrate the model over ``horizon`` days at fixed ``step``.

    Pure and deterministic: identical inputs give bit-identical trajectories.
    Raises IntegrationFaultError if |s+e+i+r-1| exceeds 1e-6 at any step.
    """
    params.require_for(kind)
    if not (horizon > 0):
        raise InvalidParamsError(f"horizon must be > 0, got {horizon}")
    if not (0 < step <= 1):
        raise InvalidParamsError(f"step must lie in (0, 1], got {step}")
    if init is None:
        init = default_initial_state(params)
    init.validate(kind)

    ratio = horizon / step
    n_steps = int(round(ratio))
    if abs(ratio - n_steps) > 1e-9:
        n_steps = int(math.ceil(ratio))
    n_steps = max(n_steps, 1)

    alpha = params.alpha if params.alpha is not None else 0.0
    xi = params.xi if params.xi is not None else 0.0
    y = _kernels.rk4_trajectory(
        _KIND_IDS[kind], float(params.beta), float(params.gamma), alpha, xi,
        float(init.s), float(init.e), float(init.i), float(init.r),
        n_steps, float(step),
    )
    drift = np.abs(y.sum(axis=1) - 1.0)
    bad = ~(drift <= FAULT_TOLERANCE)  # catches NaN as well
    if bad.any():
        k = int(np.argmax(bad))
        raise IntegrationFaultError(
            f"conservation drift {drift[k]:.3e} at step {k} (t={k * step:g})"
        )
    t = init.t + np.arange(n_steps + 1, dtype=np.float64) * step
    return Trajectory(kind=kind, params=params, step=step, t=t, y=y)


def basic_reproduction_number(params: ModelParams) -> float:
    """beta / gamma."""
    return params.beta / params.gamma


def peak(traj: Trajectory) -> tuple[float, float] | None:
    """First global maximum of i(t) as (day, fraction).

    Returns None when i is monotone non-increasing from the start (no
    outbreak, or one already past its peak at t=0).
    """
    i = traj.i
    if i.shape[0] == 0:
        raise InvalidStateError("trajectory is empty")
    if np.all(np.diff(i) <= 0.0):
        return None
    k = int(np.argmax(i))
    return float(traj.t[k]), float(i[k])


def endemic_equilibrium(kind: ModelKind,
                        params: ModelParams) -> CompartmentState | None:
    """Long-run steady state sustained by waning immunity.

    Only SIRS/SEIRS with xi > 0 have one; below the R0 = 1 threshold the
    steady state is disease-free.  SIR/SEIR epidemics terminate, so None.
    """
    params.require_for(kind)
    if not kind.has_waning or params.xi == 0:
        return None
    r0 = basic_reproduction_number(params)
    if r0 <= 1:
        return CompartmentState(s=1.0, e=0.0, i=0.0, r=0.0, t=0.0)
    s_star = 1.0 / r0
    if kind is ModelKind.SIRS:
        i_star = (1.0 - s_star) / (1.0 + params.gamma / params.xi)
        e_star = 0.0
    else:
        i_star = (1.0 - s_star) / (
            1.0 + params.gamma / params.alpha + params.gamma / params.xi
        )
        e_star = (params.gamma / params.alpha) * i_star
    r_star = 1.0 - s_star - e_star - i_star
    return CompartmentState(s=s_star, e=e_star, i=i_star, r=r_star, t=0.0)
