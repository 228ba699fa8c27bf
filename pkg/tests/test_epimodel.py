import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from epicurve.epimodel import (
    CompartmentState,
    ModelKind,
    ModelParams,
    basic_reproduction_number,
    default_initial_state,
    derivative,
    endemic_equilibrium,
    integrate,
    peak,
)
from epicurve.errors import InvalidParamsError, InvalidStateError

ALL_KINDS = list(ModelKind)


def _params_for(kind, beta=0.5, gamma=0.25, alpha=0.2, xi=0.05):
    return ModelParams(
        beta=beta, gamma=gamma,
        alpha=alpha if kind.has_exposed else None,
        xi=xi if kind.has_waning else None,
    )


def _state(s, e, i, r, t=0.0):
    return CompartmentState(s=s, e=e, i=i, r=r, t=t)


# ---------------------------------------------------------------- derivative

def test_derivative_no_infected_no_dynamics():
    rates = derivative(ModelKind.SIR, _state(1.0, 0.0, 0.0, 0.0),
                       ModelParams(beta=0.7, gamma=0.2))
    assert rates == (0.0, 0.0, 0.0, 0.0)


def test_derivative_sir_hand_values():
    # direct substitution: ds = -0.5*0.9*0.1, di = 0.045 - 0.025, dr = 0.025
    ds, de, di, dr = derivative(ModelKind.SIR, _state(0.9, 0.0, 0.1, 0.0),
                                ModelParams(beta=0.5, gamma=0.25))
    assert ds == pytest.approx(-0.045, abs=1e-15)
    assert de == 0.0
    assert di == pytest.approx(0.020, abs=1e-15)
    assert dr == pytest.approx(0.025, abs=1e-15)


def test_derivative_seir_hand_values():
    # s=0.9, e=0.1, i=0: ds = 0, de = -alpha*e, di = +alpha*e, dr = 0
    ds, de, di, dr = derivative(
        ModelKind.SEIR, _state(0.9, 0.1, 0.0, 0.0),
        ModelParams(beta=0.5, gamma=0.25, alpha=0.2),
    )
    assert ds == 0.0
    assert de == pytest.approx(-0.02, abs=1e-15)
    assert di == pytest.approx(0.02, abs=1e-15)
    assert dr == 0.0


def test_derivative_sirs_waning_returns_removed_to_susceptible():
    ds, de, di, dr = derivative(
        ModelKind.SIRS, _state(0.5, 0.0, 0.2, 0.3),
        ModelParams(beta=0.5, gamma=0.25, xi=0.1),
    )
    assert ds == pytest.approx(-0.5 * 0.5 * 0.2 + 0.1 * 0.3)
    assert dr == pytest.approx(0.25 * 0.2 - 0.1 * 0.3)


def test_derivative_missing_rate_for_kind():
    params = ModelParams(beta=0.5, gamma=0.25)
    with pytest.raises(InvalidParamsError):
        derivative(ModelKind.SEIR, _state(0.9, 0.1, 0.0, 0.0), params)
    with pytest.raises(InvalidParamsError):
        derivative(ModelKind.SIRS, _state(0.9, 0.0, 0.1, 0.0), params)


@given(
    kind=st.sampled_from(ALL_KINDS),
    beta=st.floats(0.05, 1.5),
    gamma=st.floats(0.02, 0.5),
    alpha=st.floats(0.05, 1.0),
    xi=st.floats(0.0, 0.2),
    mix=st.tuples(st.floats(0.0, 1.0), st.floats(0.0, 1.0),
                  st.floats(0.0, 1.0)),
)
@settings(max_examples=200, deadline=None)
def test_derivative_components_sum_to_zero(kind, beta, gamma, alpha, xi, mix):
    a, b, c = sorted(mix)
    s, e, i, r = a, b - a, c - b, 1.0 - c
    if not kind.has_exposed:
        s, e = s + e, 0.0
    params = ModelParams(beta=beta, gamma=gamma,
                         alpha=alpha if kind.has_exposed else None,
                         xi=xi if kind.has_waning else None)
    rates = derivative(kind, _state(s, e, i, r), params)
    assert abs(sum(rates)) <= 1e-12


# ----------------------------------------------------------------- integrate

def test_integrate_disease_free_is_constant():
    params = ModelParams(beta=0.5, gamma=0.25)
    init = _state(1.0, 0.0, 0.0, 0.0)
    traj = integrate(ModelKind.SIR, params, 50, init=init)
    assert np.array_equal(traj.y, np.tile([1.0, 0.0, 0.0, 0.0], (len(traj), 1)))


def test_integrate_peak_at_inverse_r0():
    params = ModelParams(beta=0.5, gamma=0.25)
    init = _state(1 - 1e-4, 0.0, 1e-4, 0.0)
    traj = integrate(ModelKind.SIR, params, 300, step=0.005, init=init)
    day, _ = peak(traj)
    k = int(round(day / 0.005))
    assert traj.s[k] == pytest.approx(0.5, abs=1e-3)


def test_integrate_higher_r0_infects_more():
    # reference threshold values 1.99 and 2.73, same gamma and horizon
    gamma = 0.25
    final_r = {}
    for r0 in (1.99, 2.73):
        params = ModelParams(beta=gamma * r0, gamma=gamma)
        init = _state(1 - 1e-4, 0.0, 1e-4, 0.0)
        final_r[r0] = integrate(ModelKind.SIR, params, 250, init=init).r[-1]
    assert final_r[2.73] > final_r[1.99]
    assert final_r[2.73] < 1.0  # even then, not the whole population


def test_integrate_conservation_and_bounds_all_kinds():
    rng = np.random.default_rng(11)
    for kind in ALL_KINDS:
        for _ in range(3):
            params = _params_for(kind, beta=rng.uniform(0.1, 1.0),
                                 gamma=rng.uniform(0.05, 0.4),
                                 alpha=rng.uniform(0.05, 1.0),
                                 xi=rng.uniform(0.0, 0.1))
            i0 = 10.0 ** rng.uniform(-6, -3)
            init = _state(1 - i0, 0.0, i0, 0.0)
            traj = integrate(kind, params, 200, init=init)
            assert np.abs(traj.y.sum(axis=1) - 1.0).max() <= 1e-8
            assert traj.y.min() >= 0.0 and traj.y.max() <= 1.0


def test_integrate_is_deterministic():
    params = ModelParams(beta=0.6, gamma=0.2, xi=0.01)
    a = integrate(ModelKind.SIRS, params, 150)
    b = integrate(ModelKind.SIRS, params, 150)
    assert np.array_equal(a.y, b.y) and np.array_equal(a.t, b.t)


def test_integrate_step_convergence():
    params = ModelParams(beta=0.5, gamma=0.25)
    coarse = integrate(ModelKind.SIR, params, 200, step=0.05)
    fine = integrate(ModelKind.SIR, params, 200, step=0.025)
    assert abs(coarse.r[-1] - fine.r[-1]) <= 1e-5


def test_integrate_seir_fast_latency_matches_sir():
    init = _state(1 - 1e-4, 0.0, 1e-4, 0.0)
    sir = integrate(ModelKind.SIR, ModelParams(beta=0.5, gamma=0.25), 200,
                    init=init)
    seir = integrate(ModelKind.SEIR,
                     ModelParams(beta=0.5, gamma=0.25, alpha=50.0), 200,
                     init=init)
    assert np.abs(sir.i - seir.i).max() <= 1e-2


def test_integrate_validates_inputs():
    params = ModelParams(beta=0.5, gamma=0.25)
    with pytest.raises(InvalidStateError):
        integrate(ModelKind.SIR, params, 10, init=_state(0.5, 0.0, 0.1, 0.1))
    with pytest.raises(InvalidParamsError):
        integrate(ModelKind.SIR, params, -5)
    with pytest.raises(InvalidParamsError):
        integrate(ModelKind.SIR, params, 10, step=1.5)
    with pytest.raises(InvalidStateError):
        # exposed population under a kind without an E compartment
        integrate(ModelKind.SIR, params, 10, init=_state(0.9, 0.05, 0.05, 0.0))


def test_trajectory_time_grid_and_csv():
    params = ModelParams(beta=0.5, gamma=0.25)
    traj = integrate(ModelKind.SIR, params, 1, step=0.25)
    assert np.allclose(np.diff(traj.t), 0.25)
    lines = traj.to_csv().splitlines()
    assert lines[0] == "t,s,e,i,r"
    assert len(lines) == len(traj) + 1
    # 12 significant digits round-trip closely enough to re-check conservation
    parsed = np.array([[float(v) for v in line.split(",")]
                       for line in lines[1:]])
    assert np.abs(parsed[:, 1:].sum(axis=1) - 1.0).max() < 1e-8


def test_default_initial_state_is_one_case():
    params = ModelParams(beta=0.5, gamma=0.25, population=5000)
    init = default_initial_state(params)
    assert init.i == pytest.approx(1 / 5000)
    assert init.s == pytest.approx(1 - 1 / 5000)
    init.validate()


# ------------------------------------------------------- reproduction number

def test_r0_values():
    assert basic_reproduction_number(ModelParams(beta=0.5, gamma=0.25)) == 2.0
    assert basic_reproduction_number(ModelParams(beta=0.3, gamma=0.3)) == 1.0
    gamma = 0.25
    params = ModelParams(beta=gamma * 2.73, gamma=gamma)
    assert basic_reproduction_number(params) == 2.73


def test_r0_requires_positive_gamma():
    with pytest.raises(InvalidParamsError):
        ModelParams(beta=0.5, gamma=0.0)
    with pytest.raises(InvalidParamsError):
        ModelParams(beta=0.5, gamma=-0.1)


# ----------------------------------------------------------------------- peak

def test_peak_none_for_disease_free():
    params = ModelParams(beta=0.5, gamma=0.25)
    traj = integrate(ModelKind.SIR, params, 50, init=_state(1.0, 0.0, 0.0, 0.0))
    assert peak(traj) is None


def test_peak_none_below_threshold():
    params = ModelParams(beta=0.2, gamma=0.25)  # R0 = 0.8
    traj = integrate(ModelKind.SIR, params, 200,
                     init=_state(1 - 1e-3, 0.0, 1e-3, 0.0))
    assert peak(traj) is None
    assert np.all(np.diff(traj.i) <= 0)


def test_peak_above_threshold():
    params = ModelParams(beta=0.5, gamma=0.25)
    traj = integrate(ModelKind.SIR, params, 300,
                     init=_state(1 - 1e-4, 0.0, 1e-4, 0.0))
    got = peak(traj)
    assert got is not None
    day, frac = got
    assert 0 < day < 300 and 0 < frac < 1
    assert frac == traj.i.max()


# --------------------------------------------------------------- equilibrium

def test_endemic_equilibrium_sirs_value_and_convergence():
    params = ModelParams(beta=0.2, gamma=0.1, xi=0.01)
    eq = endemic_equilibrium(ModelKind.SIRS, params)
    assert eq.s == pytest.approx(0.5)
    assert eq.i == pytest.approx((1 - 0.5) / (1 + 0.1 / 0.01))  # 0.045454...
    traj = integrate(ModelKind.SIRS, params, 2000,
                     init=_state(1 - 1e-4, 0.0, 1e-4, 0.0))
    assert abs(traj.i[-1] - eq.i) <= 1e-4


def test_endemic_equilibrium_below_threshold_is_disease_free():
    eq = endemic_equilibrium(ModelKind.SIRS,
                             ModelParams(beta=0.1, gamma=0.2, xi=0.05))
    assert eq.s == 1.0 and eq.i == 0.0


def test_endemic_equilibrium_none_without_waning():
    assert endemic_equilibrium(ModelKind.SIR,
                               ModelParams(beta=0.5, gamma=0.25)) is None
    assert endemic_equilibrium(
        ModelKind.SEIR, ModelParams(beta=0.5, gamma=0.25, alpha=0.2)) is None
    # xi = 0 degenerates to permanent immunity
    assert endemic_equilibrium(
        ModelKind.SIRS, ModelParams(beta=0.5, gamma=0.25, xi=0.0)) is None


def test_endemic_equilibrium_seirs_is_a_fixed_point():
    params = ModelParams(beta=0.4, gamma=0.1, alpha=0.2, xi=0.02)
    eq = endemic_equilibrium(ModelKind.SEIRS, params)
    rates = derivative(ModelKind.SEIRS, eq, params)
    assert max(abs(v) for v in rates) <= 1e-12
    traj = integrate(ModelKind.SEIRS, params, 4000,
                     init=_state(1 - 1e-4, 0.0, 1e-4, 0.0))
    assert abs(traj.i[-1] - eq.i) <= 1e-4


# ---------------------------------------------------------------- validation

def test_state_validation():
    with pytest.raises(InvalidStateError):
        _state(0.5, 0.0, 0.6, -0.1).validate()
    with pytest.raises(InvalidStateError):
        _state(0.5, 0.0, 0.4, 0.2).validate()
    _state(0.25, 0.25, 0.25, 0.25).validate()


def test_params_validation():
    with pytest.raises(InvalidParamsError):
        ModelParams(beta=-0.1, gamma=0.2)
    with pytest.raises(InvalidParamsError):
        ModelParams(beta=float("inf"), gamma=0.2)
    with pytest.raises(InvalidParamsError):
        ModelParams(beta=0.5, gamma=0.25, alpha=0.0)
    with pytest.raises(InvalidParamsError):
        ModelParams(beta=0.5, gamma=0.25, xi=-0.01)
    with pytest.raises(InvalidParamsError):
        ModelParams(beta=0.5, gamma=0.25, population=0)
