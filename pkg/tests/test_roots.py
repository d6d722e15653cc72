import math

import numpy as np
import pytest

from prolate import eval_dpsi, eval_psi
from prolate.errors import DomainError
from prolate.roots import (
    Regime,
    dpsi_roots_scan,
    psi_roots,
    psi_roots_scan,
    spacing_report,
    special_points,
)

from golden_data import TURNING_C20_N14, TURNING_C20_N9, agrees_sf


def test_roots_are_symmetric_and_simple(pswf):
    for c, n in ((10.0, 6), (20.0, 13), (20.0, 14)):
        fn = pswf(c, n, n_max=14)
        t = psi_roots(fn)
        assert t.size == n
        assert np.max(np.abs(t + t[::-1])) < 1e-12
        assert np.all(np.abs(eval_dpsi(fn, t)) > 0.0)
        assert np.all(np.abs(eval_psi(fn, t)) < 1e-12 * np.maximum(1.0, np.abs(eval_dpsi(fn, t))))


def test_phase_and_scan_paths_agree(pswf):
    fn = pswf(20.0, 11, n_max=14)
    assert np.allclose(psi_roots(fn), psi_roots_scan(fn), rtol=0, atol=1e-11)


def test_single_root_at_origin(pswf):
    fn = pswf(10.0, 1, n_max=6)
    t = psi_roots(fn)
    assert t.size == 1
    assert abs(t[0]) < 1e-14


def test_golden_gap_c100(spectra):
    fn = spectra(100.0, 87).function(87)
    t = psi_roots(fn)
    assert agrees_sf(t[44] - t[43], 2.7468e-2, 5)  # gap between roots 44 and 45


def test_special_points_below_regime(pswf):
    fn = pswf(20.0, 9, n_max=14)
    sp = special_points(fn)
    assert sp.regime is Regime.BELOW
    assert agrees_sf(sp.turning, TURNING_C20_N9, 5)
    assert sp.x_n < sp.turning < 1.0
    assert not sp.xn_is_formal
    assert dpsi_roots_scan(fn).size == 10  # n + 1 extrema
    assert sp.t_n < sp.x_n


def test_special_points_above_regime(pswf):
    fn = pswf(20.0, 14)
    sp = special_points(fn)
    assert sp.regime is Regime.ABOVE
    assert agrees_sf(sp.turning, TURNING_C20_N14, 5)
    assert sp.turning > 1.0
    assert sp.xn_is_formal and sp.x_n == 1.0
    assert dpsi_roots_scan(fn).size == 13  # n - 1 extrema


@pytest.mark.parametrize("n", [6, 10, 15])
def test_interlacing_chain(spectra, n):
    sp = special_points(spectra(10.0, 15).function(n))
    chain = [-sp.turning, -sp.x_n]
    for t_i, x_i in zip(sp.t[:-1], sp.x[:-1]):
        chain += [t_i, x_i]
    chain += [sp.t_n, sp.x_n, sp.turning]
    assert all(a < b for a, b in zip(chain, chain[1:]))


def test_spacing_flags_decreasing_above(spectra):
    sp = special_points(spectra(100.0, 87).function(87))
    report = spacing_report(sp)
    assert report.decreasing_right_half
    assert not report.increasing_right_half
    assert not report.inconclusive
    assert np.all(report.gaps < math.pi / math.sqrt(sp.chi + 1.0))


def test_spacing_flags_increasing_deep_below(spectra):
    fn = spectra(100.0, 87).function(19)
    assert fn.chi < 100.0**2 - 100.0 * math.sqrt(2.0)
    report = spacing_report(special_points(fn))
    assert report.increasing_right_half
    assert not report.decreasing_right_half


def test_spacing_report_needs_three_roots(pswf):
    with pytest.raises(DomainError):
        spacing_report(special_points(pswf(10.0, 2, n_max=6)))


def test_special_points_requires_two_roots(pswf):
    with pytest.raises(DomainError):
        special_points(pswf(10.0, 1, n_max=6))
