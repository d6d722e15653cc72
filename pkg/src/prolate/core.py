"""Prolate spheroidal wave functions of order zero on [-1, 1].

For a band limit c > 0 the functions psi_n are the eigenfunctions of the
differential operator

    L[psi](x) = -d/dx((1 - x^2) psi'(x)) + c^2 x^2 psi(x),

with eigenvalues chi_0 < chi_1 < ...  Expanded in orthonormal Legendre
polynomials, L is symmetric and tridiagonal on each parity class, so the
spectrum comes from a symmetric tridiagonal eigensolve.  The same psi_n
are eigenfunctions of the integral operator with kernel exp(i*c*x*t); the
moduli of those eigenvalues are recovered from the integral identity by
Gauss-Legendre quadrature.

Conventions: ||psi_n||_2 = 1 on [-1, 1] and psi_n(1) > 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.linalg import eigh_tridiagonal, eigvalsh_tridiagonal

from .errors import ConvergenceError, DegenerateEvaluationError, DomainError

__all__ = [
    "ProlateContext",
    "ProlateSpectrum",
    "PswfFunction",
    "IntegralEigenvalue",
    "build_spectrum",
    "chi_sequence",
    "eval_psi",
    "eval_dpsi",
    "eval_d2psi",
    "integral_eigenvalue",
    "mu_count",
    "gauss_rule",
]

_MAX_DOUBLINGS = 12

_gauss_cache: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def gauss_rule(order: int) -> tuple[np.ndarray, np.ndarray]:
    """Cached Gauss-Legendre nodes/weights on [-1, 1]."""
    rule = _gauss_cache.get(order)
    if rule is None:
        rule = leggauss(order)
        _gauss_cache[order] = rule
    return rule


@dataclass(frozen=True)
class ProlateContext:
    """Problem statement: band limit, largest index wanted, eigenvalue tolerance."""

    c: float
    n_max: int
    tol: float = 1e-12

    def __post_init__(self):
        if not self.c > 0.0:
            raise DomainError(f"band limit c={self.c} must be positive")
        if self.n_max < 0:
            raise DomainError(f"n_max={self.n_max} must be nonnegative")
        if not 0.0 < self.tol < 1e-6:
            raise DomainError(f"tol={self.tol} outside (0, 1e-6)")


def _parity_tridiagonal(c: float, parity: int, m: int) -> tuple[np.ndarray, np.ndarray]:
    """Diagonal and off-diagonal of L restricted to one parity class.

    Row j corresponds to the orthonormal Legendre polynomial of degree
    k = 2j + parity.  Entries follow from k(k+1) for the derivative term
    and the three-term recurrence applied twice for the c^2 x^2 term.
    """
    k = 2 * np.arange(m, dtype=float) + parity
    diag = k * (k + 1) + c * c * (2 * k * (k + 1) - 1) / ((2 * k - 1) * (2 * k + 3))
    kk = k[:-1]
    off = c * c * (kk + 1) * (kk + 2) / ((2 * kk + 3) * np.sqrt((2 * kk + 1) * (2 * kk + 5)))
    return diag, off


def _start_dim(ctx: ProlateContext) -> int:
    # Generous: the coefficients decay super-exponentially past the
    # turning band, so ceil(2c/pi) + n_max + 64 rows per parity suffice.
    return math.ceil(2.0 * ctx.c / math.pi) + ctx.n_max + 64


def _chi_at_dim(ctx: ProlateContext, dim: int) -> np.ndarray:
    chi = np.empty(ctx.n_max + 1)
    for parity in (0, 1):
        count = (ctx.n_max - parity) // 2 + 1
        if count <= 0:
            continue
        diag, off = _parity_tridiagonal(ctx.c, parity, dim)
        chi[parity::2] = eigvalsh_tridiagonal(
            diag, off, select="i", select_range=(0, count - 1)
        )
    return chi


def _converged_dim(ctx: ProlateContext, start_dim: int | None, max_doublings: int) -> int:
    """Double the per-parity truncation until chi_{n_max} settles to tol."""
    dim = max(start_dim or _start_dim(ctx), ctx.n_max // 2 + 8)
    prev = _chi_at_dim(ctx, dim)
    cur = prev
    for _ in range(max_doublings):
        dim *= 2
        cur = _chi_at_dim(ctx, dim)
        # relative with a unit floor: eigenvalues below O(1) sit at the
        # eigensolver's absolute noise level, where tol stays meaningful
        if abs(cur[-1] - prev[-1]) <= ctx.tol * max(abs(cur[-1]), 1.0):
            return dim
        prev = cur
    raise ConvergenceError(
        f"chi_{ctx.n_max} not stable to rel. tol {ctx.tol} after "
        f"{max_doublings} truncation doublings (per-parity dim {dim})",
        iterates=(prev[-1], cur[-1]),
    )


@dataclass(frozen=True)
class PswfFunction:
    """One (c, n) pair: eigenvalue, Legendre coefficients, parity."""

    c: float
    n: int
    chi: float
    coeffs: np.ndarray  # full index range; zero off the parity class

    @property
    def parity(self) -> int:
        return self.n % 2

    @property
    def turning_point(self) -> float:
        return math.sqrt(self.chi) / self.c

    def psi(self, t):
        return eval_psi(self, t)

    __call__ = psi

    def dpsi(self, t):
        return eval_dpsi(self, t)

    def d2psi(self, t):
        return eval_d2psi(self, t)


@dataclass(frozen=True)
class ProlateSpectrum:
    """Eigenvalues chi_0..chi_{n_max} and Legendre coefficient vectors."""

    context: ProlateContext
    chi: np.ndarray
    coeffs: np.ndarray  # shape (n_max + 1, basis size)
    truncation: int  # per-parity basis dimension used

    def function(self, n: int) -> PswfFunction:
        if not 0 <= n <= self.context.n_max:
            raise DomainError(f"n={n} outside [0, {self.context.n_max}]")
        return PswfFunction(self.context.c, n, float(self.chi[n]), self.coeffs[n])

    def functions(self) -> list[PswfFunction]:
        return [self.function(n) for n in range(self.context.n_max + 1)]


def build_spectrum(
    ctx: ProlateContext,
    start_dim: int | None = None,
    max_doublings: int = _MAX_DOUBLINGS,
) -> ProlateSpectrum:
    """Compute chi_0..chi_{n_max} with unit-norm coefficient vectors.

    The per-parity truncation starts at ceil(2c/pi) + n_max + 64 rows and
    doubles until chi_{n_max} is stable to the relative tolerance of ``ctx``.
    Coefficient vectors are signed so that psi_n(1) > 0.
    """
    dim = _converged_dim(ctx, start_dim, max_doublings)
    n_max = ctx.n_max
    basis = 2 * dim
    chi = np.empty(n_max + 1)
    coeffs = np.zeros((n_max + 1, basis))
    endpoint = np.sqrt(np.arange(basis) + 0.5)  # orthonormal Legendre values at t=1
    for parity in (0, 1):
        count = (n_max - parity) // 2 + 1
        if count <= 0:
            continue
        diag, off = _parity_tridiagonal(ctx.c, parity, dim)
        vals, vecs = eigh_tridiagonal(diag, off, select="i", select_range=(0, count - 1))
        chi[parity::2] = vals
        for j in range(count):
            n = 2 * j + parity
            coeffs[n, parity::2] = vecs[:, j]
            if coeffs[n] @ endpoint < 0.0:
                coeffs[n] = -coeffs[n]
    return ProlateSpectrum(context=ctx, chi=chi, coeffs=coeffs, truncation=dim)


def chi_sequence(
    ctx: ProlateContext,
    start_dim: int | None = None,
    max_doublings: int = _MAX_DOUBLINGS,
) -> np.ndarray:
    """Eigenvalues only, with the same truncation-doubling convergence rule.

    Much lighter than :func:`build_spectrum` for large c since no
    eigenvectors are formed.
    """
    dim = _converged_dim(ctx, start_dim, max_doublings)
    return _chi_at_dim(ctx, dim)


def _series(fn: PswfFunction, t, order: int):
    """Evaluate the Legendre expansion of psi_n and derivatives.

    Uses the forward recurrences for P_k, P_k' and P_k'' (each derivative
    recurrence is independent of the prolate equation).  Stable on the
    whole closed interval, with exact endpoint values.
    """
    t_arr = np.atleast_1d(np.asarray(t, dtype=float))
    if np.any(np.abs(t_arr) > 1.0 + 1e-14):
        raise DomainError("psi_n is only defined for |t| <= 1")
    t_arr = np.clip(t_arr, -1.0, 1.0)

    k = np.arange(fn.coeffs.size)
    gamma = fn.coeffs * np.sqrt(k + 0.5)
    nz = np.nonzero(gamma)[0]
    kmax = int(nz[-1]) if nz.size else 0

    p_prev = np.ones_like(t_arr)
    p_cur = t_arr.copy()
    out = [np.zeros_like(t_arr) for _ in range(order + 1)]
    out[0] = gamma[0] * p_prev + (gamma[1] * p_cur if kmax >= 1 else 0.0)
    if order >= 1:
        d_prev = np.zeros_like(t_arr)
        d_cur = np.ones_like(t_arr)
        if kmax >= 1:
            out[1] = gamma[1] * d_cur
    if order >= 2:
        s_prev = np.zeros_like(t_arr)
        s_cur = np.zeros_like(t_arr)

    for kk in range(1, kmax):
        p_next = ((2 * kk + 1) * t_arr * p_cur - kk * p_prev) / (kk + 1)
        out[0] += gamma[kk + 1] * p_next
        if order >= 1:
            d_next = d_prev + (2 * kk + 1) * p_cur
            out[1] += gamma[kk + 1] * d_next
        if order >= 2:
            s_next = s_prev + (2 * kk + 1) * d_cur
            out[2] += gamma[kk + 1] * s_next
            s_prev, s_cur = s_cur, s_next
        if order >= 1:
            d_prev, d_cur = d_cur, d_next
        p_prev, p_cur = p_cur, p_next
    return t_arr, out


def _shaped(values: np.ndarray, t):
    if np.isscalar(t) or getattr(t, "ndim", 1) == 0:
        return float(values[0])
    return values


def eval_psi(fn: PswfFunction, t):
    """psi_n(t) from the stored Legendre expansion; |t| <= 1."""
    _, out = _series(fn, t, order=0)
    return _shaped(out[0], t)


def eval_dpsi(fn: PswfFunction, t):
    """psi_n'(t); at |t| = 1 the value comes from the differential
    equation, psi'(1) = (chi - c^2)/2 * psi(1), which is exact there."""
    t_arr, out = _series(fn, t, order=1)
    at_end = np.abs(t_arr) == 1.0
    if np.any(at_end):
        psi_end = out[0][at_end]
        out[1][at_end] = 0.5 * (fn.chi - fn.c**2) * psi_end * t_arr[at_end]
    return _shaped(out[1], t)


def eval_d2psi(fn: PswfFunction, t):
    """psi_n''(t) via the second-derivative Legendre recurrence (does not
    use the differential equation, so it can serve as a residual probe)."""
    _, out = _series(fn, t, order=2)
    return _shaped(out[2], t)


@dataclass(frozen=True)
class IntegralEigenvalue:
    """Modulus data for the integral-operator eigenvalue of index n.

    The eigenvalue itself is i^n * lambda_abs; mu is the eigenvalue of the
    composed (self-adjoint) operator, mu = c/(2 pi) * lambda_abs^2.
    """

    n: int
    lambda_abs: float
    phase_power: int  # n mod 4
    mu: float


def integral_eigenvalue(
    fn: PswfFunction,
    quad_order: int | None = None,
    _degenerate_threshold: float = 1e-8,
) -> IntegralEigenvalue:
    """|lambda_n| from the Fourier-kernel integral identity.

    For even n, lambda_n psi_n(0) equals the plain integral of psi_n; for
    odd n the x-derivative at 0 is used instead.  If the natural
    evaluation point is degenerate the identity is evaluated at the
    location of max |psi_n| with the complex kernel.
    """
    order = quad_order or int(math.ceil(2.0 * (fn.c + fn.n) + 50.0))
    nodes, weights = gauss_rule(order)
    psi_nodes = eval_psi(fn, nodes)

    if fn.n % 2 == 0:
        denom = eval_psi(fn, 0.0)
        numer = float(weights @ psi_nodes)
    else:
        denom = eval_dpsi(fn, 0.0)
        numer = fn.c * float(weights @ (nodes * psi_nodes))

    if abs(denom) < _degenerate_threshold:
        probe = np.linspace(-1.0, 1.0, 4001)
        probe_vals = eval_psi(fn, probe)
        x_star = float(probe[np.argmax(np.abs(probe_vals))])
        denom = eval_psi(fn, x_star)
        if abs(denom) < 1e-13:  # cannot happen for a unit-norm function
            raise DegenerateEvaluationError(
                f"no usable evaluation point for lambda_{fn.n} (c={fn.c})"
            )
        kernel = np.exp(1j * fn.c * x_star * nodes)
        numer = abs(complex(weights @ (psi_nodes * kernel)))

    lam = abs(numer / denom)
    return IntegralEigenvalue(
        n=fn.n,
        lambda_abs=lam,
        phase_power=fn.n % 4,
        mu=fn.c / (2.0 * math.pi) * lam * lam,
    )


def mu_count(spectrum: ProlateSpectrum, alpha: float) -> int:
    """Number of mu_n above alpha for the computed index range."""
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"alpha={alpha} outside (0, 1)")
    count = 0
    for fn in spectrum.functions():
        if integral_eigenvalue(fn).mu > alpha:
            count += 1
    return count
