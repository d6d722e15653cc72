import numpy as np
import pytest

from prolate import eval_dpsi, eval_psi
from prolate.core import eval_d2psi
from prolate.errors import DomainError

from oracles import integrate_prolate_ode


def test_odd_function_vanishes_at_origin(pswf):
    for c, n in ((10.0, 5), (20.0, 9)):
        fn = pswf(c, n, n_max=14)
        assert abs(fn.psi(0.0)) < 1e-13


def test_defining_ode_residual(pswf):
    # second derivative comes from its own recurrence, so the residual
    # genuinely exercises the identity
    for c, n in ((10.0, 3), (10.0, 12), (20.0, 14)):
        fn = pswf(c, n, n_max=14)
        t = np.linspace(-0.95, 0.95, 41)
        resid = (1 - t**2) * eval_d2psi(fn, t) - 2 * t * eval_dpsi(fn, t) + (
            fn.chi - (fn.c * t) ** 2
        ) * eval_psi(fn, t)
        cap = 1e-8 * (fn.chi + fn.c**2) * np.maximum(1.0, np.abs(eval_psi(fn, t)))
        assert np.all(np.abs(resid) < cap)


def test_endpoint_derivative_identity(pswf):
    fn = pswf(10.0, 6)
    psi1 = fn.psi(1.0)
    assert eval_dpsi(fn, 1.0) == pytest.approx(0.5 * (fn.chi - 100.0) * psi1, rel=1e-12)
    assert eval_dpsi(fn, -1.0) == pytest.approx(-0.5 * (fn.chi - 100.0) * fn.psi(-1.0), rel=1e-12)


def test_parity_symmetry(pswf):
    t = np.linspace(0.05, 0.995, 23)
    for n in (4, 9):
        fn = pswf(20.0, n, n_max=14)
        assert np.allclose(fn.psi(-t), (-1.0) ** n * fn.psi(t), rtol=0, atol=1e-13)


def test_matches_independent_ode_integration(pswf):
    fn = pswf(20.0, 14)
    t = np.linspace(-0.995, 0.995, 81)
    oracle = integrate_prolate_ode(fn.c, fn.chi, fn.psi(0.0), eval_dpsi(fn, 0.0), t)
    assert np.max(np.abs(fn.psi(t) - oracle)) < 1e-8


def test_rejects_points_outside_interval(pswf):
    fn = pswf(10.0, 2)
    with pytest.raises(DomainError):
        fn.psi(1.001)


def test_vectorized_and_scalar_agree(pswf):
    fn = pswf(10.0, 4)
    t = np.array([-0.5, 0.0, 0.25])
    vec = fn.psi(t)
    assert vec.shape == (3,)
    assert vec[1] == fn.psi(0.0)
