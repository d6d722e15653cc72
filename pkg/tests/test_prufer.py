import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from prolate import eval_dpsi, eval_psi
from prolate.errors import DomainError
from prolate.prufer import (
    PhaseField,
    PruferMachinery,
    machinery,
    oscillatory_integral,
    phase_f,
    phase_v,
    solve_theta,
    theta_inverse,
)
from prolate.roots import psi_roots, special_points


def _field(fn):
    return PhaseField(fn.c, fn.n, fn.chi)


def closed_form_theta(fn, roots, t):
    """Phase straight from psi_n: atan(-sqrt(p/q) psi'/psi) + (root count) * pi."""
    p = 1.0 - t * t
    q = fn.chi - (fn.c * t) ** 2
    raw = math.atan(-math.sqrt(p / q) * eval_dpsi(fn, t) / eval_psi(fn, t))
    return raw + math.pi * int(np.sum(roots < t))


def test_field_values_at_origin(pswf):
    fn = pswf(10.0, 6)
    field = _field(fn)
    assert phase_f(field, 0.0) == pytest.approx(math.sqrt(fn.chi), rel=1e-15)
    assert phase_v(field, 0.0) == 0.0


def test_field_domain_error(pswf):
    fn = pswf(20.0, 9)  # below regime: domain capped at the turning point
    field = _field(fn)
    with pytest.raises(DomainError):
        phase_f(field, field.turning_point)


def test_ratio_strictly_increasing(pswf):
    fn = pswf(20.0, 14)
    field = _field(fn)
    t = np.linspace(1e-4, field.cap * 0.9999, 1000)
    ratio = field.v(t) / field.f(t)
    assert np.all(np.diff(ratio) > 0.0)


def test_crossing_is_unique_and_interior(pswf):
    # the ratio v/f rises monotonically from 0 to infinity across
    # (0, min(1, turning)), so exactly one crossing exists there; in the
    # above regime it lies below x_n = 1, while in the below regime it
    # can land between x_n and the turning point (it does for c=20, n=9)
    for c, n in ((20.0, 14), (20.0, 9), (10.0, 6)):
        fn = pswf(c, n, n_max=14)
        field = _field(fn)
        mach = machinery(field)
        assert field.f(mach.t_hat) == pytest.approx(field.v(mach.t_hat), rel=1e-10)
        sp = special_points(fn)
        assert 0.0 < mach.t_hat < field.cap
        if sp.regime.value == "above":
            assert mach.t_hat < sp.x_n
        assert mach.t_hat > sp.t_n  # always beyond the last root of psi_n


def test_phase_endpoints(pswf):
    # below regime: s(n*pi) must land on the outermost root of psi';
    # above regime: on the endpoint 1
    fn_below = pswf(20.0, 9, n_max=14)
    sol = solve_theta(_field(fn_below))
    sp = special_points(fn_below, sol)
    assert abs(sol.x_n - sp.x_n) < 1e-9
    assert theta_inverse(sol, 0.0) == pytest.approx(-sol.x_n)
    assert sol.theta(-sol.x_n) == 0.0
    assert sol.theta(sol.x_n) == pytest.approx(9 * math.pi)

    fn_above = pswf(20.0, 14)
    sol_above = solve_theta(_field(fn_above))
    assert sol_above.x_n == pytest.approx(1.0, abs=1e-6)


def test_phase_hits_half_integer_levels_at_roots(pswf):
    fn = pswf(20.0, 14)
    sol = solve_theta(_field(fn))
    roots = psi_roots(fn, sol)
    for i, t in enumerate(roots, start=1):
        assert abs(sol.theta(float(t)) - (i - 0.5) * math.pi) < 1e-9


def test_phase_matches_closed_form(pswf):
    for c, n in ((20.0, 14), (20.0, 9)):
        fn = pswf(c, n, n_max=14)
        sol = solve_theta(_field(fn))
        roots = psi_roots(fn, sol)
        for t in np.linspace(-0.8, 0.8, 37):
            if np.min(np.abs(roots - t)) < 1e-3:
                continue
            assert sol.theta(float(t)) == pytest.approx(
                closed_form_theta(fn, roots, float(t)), abs=1e-9
            )


def test_phase_ode_finite_differences(pswf):
    fn = pswf(20.0, 14)
    field = _field(fn)
    sol = solve_theta(field)
    h = 1e-6
    for t in np.linspace(-0.9, 0.9, 100):
        lhs = (sol.theta(t + h) - sol.theta(t - h)) / (2.0 * h)
        rhs = field.f(t) + field.v(t) * math.sin(2.0 * sol.theta(t))
        assert lhs == pytest.approx(rhs, abs=1e-6 * max(1.0, abs(rhs)))


def test_inverse_round_trip_and_monotone(pswf):
    fn = pswf(20.0, 14)
    sol = solve_theta(_field(fn))
    eta = np.linspace(0.0, 14 * math.pi, 57)
    s_vals = np.array([theta_inverse(sol, e) for e in eta])
    assert np.all(np.diff(s_vals) > 0.0)
    for t in np.linspace(-0.95, 0.95, 19):
        assert theta_inverse(sol, sol.theta(float(t))) == pytest.approx(float(t), abs=1e-9)
    with pytest.raises(DomainError):
        theta_inverse(sol, 14 * math.pi + 0.1)


def test_requires_oscillatory_index(pswf):
    fn = pswf(10.0, 6)
    with pytest.raises(DomainError):
        solve_theta(PhaseField(fn.c, 1, fn.chi))


def test_decay_factor_floor_and_limits():
    # floor 3/2 over a (t, a) sweep; limit 6 as a -> t^2 from above
    for t in np.linspace(0.02, 0.98, 33):
        for a in np.geomspace(t * t * (1 + 1e-9), 1e4, 60):
            assert PruferMachinery.fv_decay_factor(float(t), float(a)) >= 1.5
    lim = PruferMachinery.fv_decay_factor(0.37, 0.37**2 * (1.0 + 1e-9))
    assert abs(lim - 6.0) < 1e-3
    tail = PruferMachinery.fv_decay_factor(0.37, 1e12)
    assert tail == pytest.approx(2.0 / 0.37**2, rel=1e-3)


@settings(deadline=None, max_examples=80)
@given(t=st.floats(0.01, 0.99), bump=st.floats(1e-6, 1e4))
def test_decay_factor_floor_property(t, bump):
    assert PruferMachinery.fv_decay_factor(t, t * t + bump) >= 1.5


def test_gap_function_floor(pswf):
    mach = machinery(_field(pswf(10.0, 6)))
    deltas = np.linspace(0.0, math.pi / 4.0, 10_000)
    values = np.array([mach.gap(float(d)) for d in deltas])
    assert values.min() > 1.0 / 25.0


def test_ratio_cap_left_of_last_root(pswf):
    for c, n in ((20.0, 14), (20.0, 9), (100.0, 70)):
        fn = pswf(c, n, n_max=max(n, 14))
        field = _field(fn)
        mach = machinery(field)
        assert mach.z0 == pytest.approx(1.0 / (1.0 + 3.0 * math.pi / 8.0), rel=1e-15)
        t_n = float(psi_roots(fn)[-1])
        sample = np.linspace(1e-6, 1.0, 500) * t_n
        assert np.all(field.v(sample) < mach.z0 * field.f(sample))


def test_oscillatory_term_sign_pattern(pswf):
    # between an extremum and the next root the term integrates positive,
    # then negative up to the following extremum, with a negative sum;
    # across consecutive roots (t_i >= 0) it integrates positive
    fn = pswf(20.0, 14)
    sol = solve_theta(_field(fn))
    n = fn.n
    for i in range(n // 2 + 1, n):
        pos = oscillatory_integral(sol, i * math.pi, (i + 0.5) * math.pi)
        neg = oscillatory_integral(sol, (i + 0.5) * math.pi, (i + 1.0) * math.pi)
        assert pos > 0.0
        assert neg < 0.0
        assert pos + neg < 0.0
        root_to_root = oscillatory_integral(sol, (i - 0.5) * math.pi, (i + 0.5) * math.pi)
        assert root_to_root > 0.0
