import math

import numpy as np
import pytest

from app.core.errors import (
    EigenvalueOverflow,
    InvalidGrid,
    InvalidRateSpec,
    NegativeRate,
    NegativeTime,
    NotTlgObtainable,
    QuadratureFailure,
)
from app.models.types import PauliEigenvalues
from app.services import channels, dynamics
from app.services.dynamics import CallbackRate, ConstantRate, PiecewiseConstantRate, RateSpec


def test_semigroup_examples():
    e = dynamics.semigroup_eigenvalues((0, 0, 1), math.log(2))
    assert e.as_tuple() == pytest.approx((0.5, 0.5, 1.0))
    t = 0.7
    assert dynamics.semigroup_eigenvalues((1, 1, 1), t).as_tuple() == pytest.approx((math.exp(-2 * t),) * 3)
    assert dynamics.semigroup_eigenvalues((0.3, 2.0, 5.0), 0.0).as_tuple() == (1.0, 1.0, 1.0)


def test_semigroup_rejects_bad_input():
    with pytest.raises(NegativeRate):
        dynamics.semigroup_eigenvalues((1, -0.1, 0), 1.0)
    with pytest.raises(NegativeTime):
        dynamics.semigroup_eigenvalues((1, 1, 1), -1.0)


def test_semigroup_trajectory_stays_divisible():
    traj = dynamics.semigroup_trajectory((0.2, 0.5, 1.3), np.linspace(0, 4, 41))
    assert traj.samples[0].eigenvalues == (1.0, 1.0, 1.0)
    for point in traj.samples:
        r = point.report
        assert r.cptp and r.p_divisible and r.cp_divisible and r.l_divisible_literal and r.tlg_obtainable


def test_tanh_trajectory_matches_closed_form():
    rates = dynamics.parse_rates("1;1;-tanh(t)")
    grid = np.linspace(0.0, 3.0, 31)
    traj = dynamics.trajectory(rates, grid, tol=1e-8)
    assert [p.t for p in traj.samples] == pytest.approx(list(grid))
    for point in traj.samples:
        t = point.t
        expected = (math.exp(-t) * math.cosh(t), math.exp(-t) * math.cosh(t), math.exp(-2 * t))
        assert point.eigenvalues == pytest.approx(expected, abs=1e-8)
        assert point.report.cptp
        assert min(point.eigenvalues) > 0


def test_constant_rates_match_semigroup():
    gamma = (0.4, 0.1, 0.9)
    traj = dynamics.trajectory(RateSpec.constant(gamma), np.linspace(0, 2, 11))
    for point in traj.samples:
        assert point.eigenvalues == pytest.approx(dynamics.semigroup_eigenvalues(gamma, point.t).as_tuple(), abs=1e-10)


def test_zero_rates_give_identity():
    traj = dynamics.trajectory(dynamics.parse_rates("0;0;0"), [0.0, 1.0, 5.0])
    assert all(p.eigenvalues == (1.0, 1.0, 1.0) for p in traj.samples)


def test_grid_gets_initial_point():
    traj = dynamics.trajectory(RateSpec.constant((1, 1, 1)), [0.5, 1.0])
    assert [p.t for p in traj.samples] == [0.0, 0.5, 1.0]


@pytest.mark.parametrize(
    "grid, error",
    [([], InvalidGrid), ([0.0, 1.0, 1.0], InvalidGrid), ([-1.0, 1.0], NegativeTime), ([0.0, float("nan")], InvalidGrid)],
)
def test_bad_grids(grid, error):
    with pytest.raises(error):
        dynamics.trajectory(RateSpec.constant((1, 1, 1)), grid)


def test_piecewise_rate_integrates_exactly():
    rate = dynamics.parse_rate("steps:0=1,1=-0.5,2=0")
    assert isinstance(rate, PiecewiseConstantRate)
    assert rate(0.5) == 1 and rate(1.5) == -0.5 and rate(10.0) == 0
    assert rate.integral(0.0, 3.0, 1e-10) == pytest.approx(0.5)
    assert rate.integral(0.5, 1.5, 1e-10) == pytest.approx(0.25)


def test_parse_rate_kinds():
    assert dynamics.parse_rate("2.5") == ConstantRate(2.5)
    assert isinstance(dynamics.parse_rate("exp(-t)"), CallbackRate)
    assert dynamics.parse_rate("t^2")(3.0) == pytest.approx(9.0)
    assert dynamics.parse_rates("1;t;steps:0=1").labels == ["1", "t", "steps:0=1"]


@pytest.mark.parametrize(
    "text",
    ["", "1;2", "__import__('os')", "x + 1", "t.real", "steps:0=1,oops", "steps:1=1", "steps:0=1,0=2"],
)
def test_parse_rejects_bad_specs(text):
    with pytest.raises(InvalidRateSpec):
        if ";" in text or not text:
            dynamics.parse_rates(text)
        else:
            dynamics.parse_rate(text)


def test_quadrature_failure_is_reported():
    rates = RateSpec((ConstantRate(0.0), ConstantRate(0.0), dynamics.parse_rate("sin(1/t)/t")))
    with pytest.raises(QuadratureFailure):
        dynamics.trajectory(rates, [0.0, 1.0], tol=1e-12)


@pytest.mark.parametrize("text", ["log(t-5)", "sqrt(t-5)", "1/(t-1/2)"])
def test_rates_undefined_on_the_grid_fail_quadrature(text):
    rates = RateSpec((dynamics.parse_rate(text), ConstantRate(0.0), ConstantRate(0.0)))
    with pytest.raises(QuadratureFailure):
        dynamics.trajectory(rates, [0.0, 1.0, 2.0])


def test_complex_constant_rate_is_rejected():
    with pytest.raises(InvalidRateSpec):
        dynamics.parse_rate("log(-1)")


def test_strongly_negative_rates_overflow_as_domain_error():
    with pytest.raises(EigenvalueOverflow):
        dynamics.trajectory(dynamics.parse_rates("-1000;-1000;0"), [0.0, 1.0])


def test_large_positive_rates_decay_to_zero():
    traj = dynamics.trajectory(dynamics.parse_rates("1000;1000;1000"), [0.0, 1.0])
    assert traj.samples[-1].eigenvalues == (0.0, 0.0, 0.0)


def test_halving_tolerance_is_stable():
    rates = dynamics.parse_rates("1 + sin(3*t);exp(-t);-0.2*tanh(t)")
    grid = np.linspace(0, 2, 9)
    coarse = dynamics.trajectory(rates, grid, tol=1e-6)
    fine = dynamics.trajectory(rates, grid, tol=5e-7)
    for a, b in zip(coarse.samples, fine.samples):
        assert np.max(np.abs(np.subtract(a.eigenvalues, b.eigenvalues))) <= 1e-6


@pytest.mark.parametrize(
    "e, expected",
    [
        ((1, 1, 1), (0, 0, 0)),
        ((0.5, 0.5, 1), (0, 0, math.log(2))),
        ((0.6, 0.6, 0.36), (-0.5 * math.log(0.36), -0.5 * math.log(0.36), 0.0)),
    ],
)
def test_tlg_rates_for_target(e, expected):
    assert dynamics.tlg_rates_for_target(PauliEigenvalues(*e)) == pytest.approx(expected, abs=1e-12)


def test_tlg_rates_round_trip(rng):
    for e in rng.uniform(1e-3, 1.0, size=(10_000, 3)):
        big_gamma = dynamics.tlg_rates_for_target(PauliEigenvalues(*e))
        back = dynamics.eigenvalues_from_integrated_rates(big_gamma).as_tuple()
        assert np.max(np.abs(np.subtract(back, e))) <= 1e-12


def test_nonnegative_rates_iff_literal_l_divisible(rng):
    for e in rng.uniform(1e-3, 1.0, size=(5_000, 3)):
        e = PauliEigenvalues(*e)
        if not channels.is_cptp(e):
            continue
        big_gamma = dynamics.tlg_rates_for_target(e)
        assert (min(big_gamma) >= -1e-12) == channels.is_l_divisible(e)


def test_zero_eigenvalue_is_not_reachable():
    with pytest.raises(NotTlgObtainable):
        dynamics.tlg_rates_for_target(PauliEigenvalues(0.5, 0.0, 0.5))


def test_trajectory_csv_columns():
    traj = dynamics.semigroup_trajectory((1, 0, 0), [0.0, 1.0])
    lines = dynamics.trajectory_csv(traj).splitlines()
    assert lines[0] == "t,lambda1,lambda2,lambda3,cptp,eb,pdiv,cpdiv,ldiv"
    assert lines[1] == "0,1,1,1,True,False,True,True,True"
    assert len(lines) == 3
