import math

import numpy as np
import pytest

from prolate import ProlateContext, build_spectrum, chi_sequence
from prolate.core import _parity_tridiagonal, gauss_rule
from prolate.errors import ConvergenceError, DomainError

from golden_data import CHI_C20_N14, CHI_C20_N9, agrees_sf


def test_context_validation():
    with pytest.raises(DomainError):
        ProlateContext(c=-1.0, n_max=3)
    with pytest.raises(DomainError):
        ProlateContext(c=1.0, n_max=-1)
    with pytest.raises(DomainError):
        ProlateContext(c=1.0, n_max=3, tol=1e-3)


def test_operator_entries_match_galerkin_quadrature():
    # assemble the operator densely by quadrature in the orthonormal
    # Legendre basis and compare with the closed-form tridiagonal
    c, m = 3.7, 12
    nodes, weights = gauss_rule(4 * m + 8)
    basis = np.empty((2 * m, nodes.size))
    p_prev = np.ones_like(nodes)
    p_cur = nodes.copy()
    basis[0] = p_prev
    basis[1] = p_cur
    for k in range(1, 2 * m - 1):
        p_next = ((2 * k + 1) * nodes * p_cur - k * p_prev) / (k + 1)
        basis[k + 1] = p_next
        p_prev, p_cur = p_cur, p_next
    scale = np.sqrt(np.arange(2 * m) + 0.5)
    basis *= scale[:, None]

    k_idx = np.arange(2 * m)
    operator_rows = k_idx[:, None] * (k_idx[:, None] + 1) * basis + c * c * nodes**2 * basis
    dense = (basis * weights) @ operator_rows.T

    for parity in (0, 1):
        diag, off = _parity_tridiagonal(c, parity, m)
        sub = dense[parity::2, :][:, parity::2]
        assert np.allclose(np.diag(sub), diag, rtol=1e-12, atol=1e-10)
        assert np.allclose(np.diag(sub, 1), off, rtol=1e-12, atol=1e-10)
        far = sub - np.diag(np.diag(sub)) - np.diag(np.diag(sub, 1), 1) - np.diag(np.diag(sub, -1), -1)
        assert np.max(np.abs(far)) < 1e-9


def test_vanishing_band_limit_degenerates_to_legendre():
    spec = build_spectrum(ProlateContext(c=1e-8, n_max=5))
    assert abs(spec.chi[5] - 30.0) < 1e-6
    assert abs(spec.chi[2] - 6.0) < 1e-6


def test_golden_eigenvalue_ratios(spectra):
    assert agrees_sf(spectra(10.0, 6).chi[6] / 100.0, 1.0104, 5)
    assert agrees_sf(spectra(100.0, 64).chi[64] / 1e4, 1.0066, 5)
    assert agrees_sf(spectra(20.0, 14).chi[9], CHI_C20_N9, 5)
    assert agrees_sf(spectra(20.0, 14).chi[14], CHI_C20_N14, 5)


def test_spectrum_invariants(spectra):
    for c in (0.5, 10.0, 20.0):
        spec = spectra(c, 14)
        n = np.arange(spec.context.n_max + 1)
        assert np.all(np.diff(spec.chi) > 0.0)
        assert np.all(spec.chi > n * (n + 1))
        assert np.all(spec.chi < n * (n + 1) + c * c)
        norms = np.linalg.norm(spec.coeffs, axis=1)
        assert np.max(np.abs(norms - 1.0)) < 1e-13
        endpoint = np.sqrt(np.arange(spec.coeffs.shape[1]) + 0.5)
        assert np.all(spec.coeffs @ endpoint > 0.0)  # psi_n(1) > 0
        for nn in n:
            other_parity = spec.coeffs[nn, (nn + 1) % 2 :: 2]
            assert np.all(other_parity == 0.0)


def test_truncation_doubling_stability(spectra):
    for c, n_top in ((10.0, 20), (100.0, 64)):
        ctx = ProlateContext(c=c, n_max=n_top)
        base = chi_sequence(ctx)
        finer = chi_sequence(ctx, start_dim=2 * (math.ceil(2 * c / math.pi) + n_top + 64))
        assert np.max(np.abs(base - finer) / finer) < 1e-10


def test_nonconvergence_raises_with_iterates():
    # a starting dimension far too small for the turning band cannot
    # stabilize within one doubling
    ctx = ProlateContext(c=300.0, n_max=4)
    with pytest.raises(ConvergenceError) as info:
        build_spectrum(ctx, start_dim=8, max_doublings=1)
    assert len(info.value.iterates) == 2


def test_function_accessor_bounds(spectra):
    spec = spectra(10.0, 6)
    with pytest.raises(DomainError):
        spec.function(spec.context.n_max + 1)
