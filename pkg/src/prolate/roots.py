"""Roots and extrema of psi_n in (-1, 1) and their spacing structure.

psi_n has exactly n simple roots t_1 < ... < t_n.  The root structure of
psi_n' depends on the sign of chi_n - c^2: below c^2 there are n + 1
roots (the outermost, x_n, sits between t_n and the turning point);
above c^2 there are n - 1 and the symbol x_n denotes the endpoint 1.

Primary root finding brackets each t_i between consecutive extrema using
the monotone Pruefer phase (theta passes (i - 1/2) pi exactly at t_i) and
polishes with bracket-safeguarded Newton iterations on psi_n.  A plain
grid-scan/bisection path is kept as an independent cross-check.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .core import PswfFunction, eval_dpsi, eval_psi
from .errors import ConsistencyError, DomainError
from .prufer import PhaseField, PhaseSolution, solve_theta, theta_inverse

__all__ = [
    "Regime",
    "SpecialPoints",
    "SpacingReport",
    "psi_roots",
    "psi_roots_scan",
    "dpsi_roots_scan",
    "special_points",
    "spacing_report",
    "phase_for",
]


class Regime(enum.Enum):
    BELOW = "below"  # chi_n < c^2
    ABOVE = "above"  # chi_n > c^2
    AMBIGUOUS = "ambiguous"  # only produced by index-based classification


@dataclass(frozen=True)
class SpecialPoints:
    """Roots of psi_n, roots/endpoint of psi_n', turning point, regime.

    ``x`` lists x_1 < ... < x_n; the last entry is the literal endpoint 1
    (not a root of psi_n') whenever ``xn_is_formal`` is set, which happens
    exactly in the ABOVE regime.
    """

    c: float
    n: int
    chi: float
    t: np.ndarray
    x: np.ndarray
    xn_is_formal: bool
    turning: float
    regime: Regime

    @property
    def t_n(self) -> float:
        return float(self.t[-1])

    @property
    def x_n(self) -> float:
        return float(self.x[-1])


def phase_for(fn: PswfFunction) -> PhaseSolution:
    """Phase solution for the (c, n, chi_n) of a built function."""
    return solve_theta(PhaseField(fn.c, fn.n, fn.chi))


def _bracketed_newton(
    fn: PswfFunction,
    guess: np.ndarray,
    lo: np.ndarray,
    hi: np.ndarray,
    use_derivative_of: str = "psi",
    max_iter: int = 80,
) -> np.ndarray:
    """Vectorized Newton on psi (or psi') with bisection safeguard.

    All targets are polished in lockstep; any Newton step leaving its
    bracket is replaced by the bracket midpoint, and brackets shrink with
    the sign of the residual.
    """
    lo = lo.copy()
    hi = hi.copy()
    t = guess.copy()
    if use_derivative_of == "psi":
        value, slope = (lambda x: eval_psi(fn, x)), (lambda x: eval_dpsi(fn, x))
    else:
        value, slope = (lambda x: eval_dpsi(fn, x)), (lambda x: fn.d2psi(x))
    sign_lo = np.sign(value(lo))
    for _ in range(max_iter):
        f = value(t)
        df = slope(t)
        same_side = np.sign(f) == sign_lo
        lo = np.where(same_side, t, lo)
        hi = np.where(same_side, hi, t)
        with np.errstate(divide="ignore", invalid="ignore"):
            step = np.where(df != 0.0, f / df, 0.0)
        t_new = t - step
        outside = (t_new < lo) | (t_new > hi) | ~np.isfinite(t_new)
        t_new = np.where(outside, 0.5 * (lo + hi), t_new)
        if np.all(np.abs(t_new - t) <= 1e-16 + 5e-16 * np.abs(t_new)):
            t = t_new
            break
        t = t_new
    return t


def psi_roots(fn: PswfFunction, phase: PhaseSolution | None = None) -> np.ndarray:
    """All n roots of psi_n in (-1, 1), ordered increasingly.

    Initial brackets come from the phase inverse at ((i-1)*pi, i*pi);
    each contains exactly one root because theta is strictly increasing.
    """
    n = fn.n
    if n < 1:
        raise DomainError("psi_roots requires n >= 1")
    if n == 1:
        # single root pinned at the origin by parity; polish from a scan
        return _polish_scan_roots(fn, np.array([0.0]))
    if phase is None:
        phase = phase_for(fn)
    levels = np.arange(n + 1) * math.pi
    walls = np.array([theta_inverse(phase, lv) for lv in levels])
    guesses = np.array(
        [theta_inverse(phase, (i - 0.5) * math.pi) for i in range(1, n + 1)]
    )
    roots = _bracketed_newton(fn, guesses, walls[:-1], walls[1:])
    resid = np.abs(eval_psi(fn, roots))
    scale = np.maximum(1.0, np.abs(eval_dpsi(fn, roots)))
    if np.any(resid > 1e-12 * scale) or np.any(np.diff(roots) <= 0.0):
        raise ConsistencyError(
            f"root polish failed for (c={fn.c}, n={n}); "
            "spectrum truncation or phase solution is suspect"
        )
    return roots


def _polish_scan_roots(fn: PswfFunction, approx: np.ndarray) -> np.ndarray:
    h = 1e-3 / (1.0 + fn.n + fn.c)
    lo = approx - h
    hi = approx + h
    return _bracketed_newton(fn, approx.copy(), lo, hi)


def _scan_brackets(values: np.ndarray, grid: np.ndarray) -> list[tuple[float, float]]:
    sign = np.sign(values)
    flips = np.nonzero(sign[:-1] * sign[1:] < 0)[0]
    return [(float(grid[i]), float(grid[i + 1])) for i in flips]


def _scan_grid(fn: PswfFunction) -> np.ndarray:
    m = max(int(math.ceil(16.0 * (fn.n + fn.c))), 64)
    if m % 2:
        m += 1  # even count keeps t = 0 off the grid, where parity pins roots
    return np.linspace(-1.0, 1.0, m)


def psi_roots_scan(fn: PswfFunction) -> np.ndarray:
    """Grid-scan/bisection fallback for the roots of psi_n (oracle path)."""
    grid = _scan_grid(fn)
    brackets = _scan_brackets(eval_psi(fn, grid), grid)
    return np.array([brentq(lambda x: eval_psi(fn, x), a, b, xtol=1e-15) for a, b in brackets])


def dpsi_roots_scan(fn: PswfFunction) -> np.ndarray:
    """All roots of psi_n' in (-1, 1) by grid scan and bisection."""
    grid = _scan_grid(fn)
    brackets = _scan_brackets(eval_dpsi(fn, grid), grid)
    return np.array([brentq(lambda x: eval_dpsi(fn, x), a, b, xtol=1e-15) for a, b in brackets])


def special_points(fn: PswfFunction, phase: PhaseSolution | None = None) -> SpecialPoints:
    """Locate all special points of psi_n (n >= 2) and tag the regime."""
    if fn.n < 2:
        raise DomainError("special_points requires n >= 2")
    if phase is None:
        phase = phase_for(fn)
    t = psi_roots(fn, phase)
    regime = Regime.BELOW if fn.chi < fn.c**2 else Regime.ABOVE

    n = fn.n
    interior_guess = np.array(
        [theta_inverse(phase, i * math.pi) for i in range(1, n)]
    )
    interior = _bracketed_newton(
        fn, interior_guess, t[:-1].copy(), t[1:].copy(), use_derivative_of="dpsi"
    )
    if regime is Regime.BELOW:
        # outermost extremum between t_n and the turning point
        x_n = brentq(lambda x: eval_dpsi(fn, x), t[-1], min(1.0, fn.turning_point))
        x = np.append(interior, x_n)
        formal = False
    else:
        x = np.append(interior, 1.0)
        formal = True
    return SpecialPoints(
        c=fn.c,
        n=n,
        chi=fn.chi,
        t=t,
        x=x,
        xn_is_formal=formal,
        turning=fn.turning_point,
        regime=regime,
    )


@dataclass(frozen=True)
class SpacingReport:
    """Consecutive-root gaps and their monotonicity over t_i >= 0.

    A strict pattern is claimed only with zero tolerance on the computed
    doubles; gaps tied within 1e-14 make the report inconclusive instead.
    """

    gaps: np.ndarray
    decreasing_right_half: bool
    increasing_right_half: bool
    inconclusive: bool


def spacing_report(sp: SpecialPoints) -> SpacingReport:
    if sp.n < 3:
        raise DomainError("spacing_report requires n >= 3")
    gaps = np.diff(sp.t)
    right = gaps[sp.t[:-1] >= 0.0]
    diffs = np.diff(right)
    ties = np.abs(diffs) <= 1e-14
    return SpacingReport(
        gaps=gaps,
        decreasing_right_half=bool(np.all(diffs < 0.0)),
        increasing_right_half=bool(np.all(diffs > 0.0)),
        inconclusive=bool(np.any(ties)),
    )
