"""Executable bounds on chi_n, root locations, spacings, and endpoint values.

Each operation returns either plain bracket values or a
:class:`BoundReport` comparing the bound against a computed truth value.
Strict inequalities are evaluated with zero slack on doubles; a violation
within 1e-13 relative is flagged as numerically inconclusive rather than
a failure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import PswfFunction, eval_d2psi, eval_dpsi, eval_psi
from .elliptic import ellint_E, ellint_Ec, ellint_F, ellint_Fc
from .errors import DomainError
from .roots import Regime, SpecialPoints
from .prufer import PhaseField, phase_f, phase_v

__all__ = [
    "BoundReport",
    "HFunction",
    "TnBracket",
    "make_report",
    "crude_chi_bracket",
    "regime_classify",
    "count_above",
    "count_below",
    "chi_square_upper",
    "h_map",
    "h_inverse",
    "chi_bounds_suite",
    "chi_lower_alpha",
    "tn_bracket",
    "spacing_bracket",
    "endpoint_bounds",
    "oscillation_envelope",
    "weighted_envelope",
    "transformed_potential",
    "transformed_ode_residual",
]

_INCONCLUSIVE_REL = 1e-13


@dataclass(frozen=True)
class BoundReport:
    """One named inequality with its computed truth and verdict.

    ``holds`` demands the strict inequalities; ``inconclusive`` marks a
    violation small enough (1e-13 relative) to be roundoff rather than a
    genuine failure.
    """

    name: str
    inputs: dict
    truth: float
    lower: float | None = None
    upper: float | None = None
    rel_err_lower: float | None = None
    rel_err_upper: float | None = None
    holds: bool = True
    inconclusive: bool = False


def make_report(
    name: str,
    inputs: dict,
    truth: float,
    lower: float | None = None,
    upper: float | None = None,
) -> BoundReport:
    scale = max(abs(truth), 1e-300)
    holds = True
    inconclusive = False
    if lower is not None and not lower < truth:
        holds = False
        inconclusive = (lower - truth) <= _INCONCLUSIVE_REL * scale
    if upper is not None and not truth < upper:
        holds = False
        inconclusive = inconclusive or (truth - upper) <= _INCONCLUSIVE_REL * scale
    return BoundReport(
        name=name,
        inputs=inputs,
        truth=truth,
        lower=lower,
        upper=upper,
        rel_err_lower=None if lower is None else (truth - lower) / scale,
        rel_err_upper=None if upper is None else (upper - truth) / scale,
        holds=holds,
        inconclusive=inconclusive,
    )


def crude_chi_bracket(n: int, c: float) -> tuple[float, float]:
    """n(n+1) < chi_n < n(n+1) + c^2, valid for every n >= 0."""
    if n < 0 or c <= 0.0:
        raise DomainError("crude_chi_bracket requires n >= 0 and c > 0")
    base = float(n) * (n + 1)
    return base, base + c * c


def regime_classify(n: int, c: float) -> Regime:
    """Index-based regime: chi_n < c^2 iff n is small relative to 2c/pi.

    For n <= 2c/pi - 1 the eigenvalue is certainly below c^2; for
    n >= 2c/pi certainly above; in the unit gap between, either is
    possible.
    """
    if n < 2:
        raise DomainError("regime_classify requires n >= 2")
    ratio = 2.0 * c / math.pi
    if n <= ratio - 1.0:
        return Regime.BELOW
    if n >= ratio:
        return Regime.ABOVE
    return Regime.AMBIGUOUS


def count_above(n: int, c: float, chi_n: float, endpoint: float) -> float:
    """Upper estimate of n: (2/pi) * integral of sqrt((chi - c^2 t^2)/(1 - t^2)).

    The range of integration is [0, endpoint]: the full half-interval
    (endpoint 1) when chi_n > c^2, and [0, T] with T the outermost root
    of psi_n' when chi_n < c^2.  Both reduce to the incomplete elliptic
    integral E(asin(endpoint), c/sqrt(chi)).
    """
    root_chi = math.sqrt(chi_n)
    cap = min(1.0, root_chi / c)
    if not 0.0 <= endpoint <= cap + 1e-12:
        raise DomainError(
            f"endpoint {endpoint} outside [0, min(1, sqrt(chi)/c) = {cap}]"
        )
    return (2.0 / math.pi) * root_chi * ellint_E(math.asin(min(endpoint, 1.0)), c / root_chi)


def count_below(n: int, c: float, chi_n: float, t_n: float) -> float:
    """Lower estimate of n: 1 + (2/pi) sqrt(chi) E(asin(t_n), c/sqrt(chi))."""
    root_chi = math.sqrt(chi_n)
    return 1.0 + (2.0 / math.pi) * root_chi * ellint_E(math.asin(t_n), c / root_chi)


def chi_square_upper(n: int) -> float:
    """chi_n < (pi (n+1) / 2)^2, intended for the chi_n > c^2 regime."""
    return (0.5 * math.pi * (n + 1)) ** 2


class HFunction:
    """The monotone map g(x) = -1 + integral of sqrt(x + cos^2 a) da over
    [0, pi/2] and its inverse.

    g has the closed form -1 + sqrt(1+x) * Ec(1/sqrt(1+x)) for x >= 0.
    For -1 < x < 0 the integrand is truncated to the region where it is
    real, which continues g monotonically down to g(-1) = -1; this is the
    turning-point-limited analogue and is what index points slightly
    below 2c/pi require.
    """

    def map(self, x: float) -> float:
        if x <= -1.0:
            raise DomainError(f"x={x} outside (-1, inf)")
        if x == 0.0:
            return 0.0
        root = math.sqrt(1.0 + x)
        if x > 0.0:
            return -1.0 + root * ellint_Ec(1.0 / root)
        return -1.0 + root * ellint_E(math.asin(root), 1.0 / root)

    def _map_derivative(self, x: float) -> float:
        root = math.sqrt(1.0 + x)
        amp = math.pi / 2.0 if x >= 0.0 else math.asin(root)
        return ellint_F(amp, 1.0 / root) / (2.0 * root)

    def inverse(self, y: float) -> float:
        """H(y): bisection to width 1e-14, then two Newton corrections."""
        if y <= -1.0:
            raise DomainError(f"y={y} outside (-1, inf)")
        if y == 0.0:
            return 0.0
        if y > 0.0:
            lo, hi = 0.0, 1.0
            while self.map(hi) < y:
                hi *= 2.0
        else:
            lo, hi = -1.0 + 1e-15, 0.0
        while hi - lo > 1e-14 * max(1.0, abs(lo)):
            mid = 0.5 * (lo + hi)
            if self.map(mid) < y:
                lo = mid
            else:
                hi = mid
        x = 0.5 * (lo + hi)
        for _ in range(2):
            x -= (self.map(x) - y) / self._map_derivative(x)
        return x


_H = HFunction()


def h_map(x: float) -> float:
    """g(x) = -1 + sqrt(1+x) * Ec(1/sqrt(1+x)); g(0) = 0, strictly increasing."""
    return _H.map(x)


def h_inverse(y: float) -> float:
    """H(y) with g(H(y)) = y."""
    return _H.inverse(y)


def chi_bounds_suite(n: int, c: float, chi_n: float) -> list[BoundReport]:
    """Reports for the six named chi_n bounds U1..U3 (upper), L1..L3 (lower).

    U1/L1 are the crude bracket halves, U2 the quarter-circle square
    bound, L2 the trivial c^2 floor, and U3/L3 the sharp H-function
    bracket in nu = n*pi/(2c) - 1.  U3/L3 assume n > 2c/pi; outside that
    regime they are still evaluated (via the continued H) but tagged.
    """
    lo_crude, up_crude = crude_chi_bracket(n, c)
    nu = n * math.pi / (2.0 * c) - 1.0
    u3 = c * c * (1.0 + h_inverse(nu + 3.0 * math.pi / (2.0 * c)))
    l3 = c * c * (1.0 + h_inverse(nu))
    inputs = {"c": c, "n": n}
    in_regime = n > 2.0 * c / math.pi
    reports = [
        make_report("U1", inputs, chi_n, upper=up_crude),
        make_report("U2", inputs, chi_n, upper=chi_square_upper(n)),
        make_report("U3", {**inputs, "valid_regime": in_regime}, chi_n, upper=u3),
        make_report("L1", inputs, chi_n, lower=lo_crude),
        make_report("L2", {**inputs, "valid_regime": in_regime}, chi_n, lower=c * c),
        make_report("L3", {**inputs, "valid_regime": in_regime}, chi_n, lower=l3),
    ]
    return reports


def chi_lower_alpha(n: int, c: float, alpha: float) -> float | None:
    """Lower bound chi_n > c^2 + alpha*c, or None when preconditions fail.

    Requires 0 < alpha < 5c and n > 2c/pi + alpha/(2 pi) * log(16 e c / alpha).
    """
    if not 0.0 < alpha < 5.0 * c:
        return None
    threshold = 2.0 * c / math.pi + alpha / (2.0 * math.pi) * math.log(
        16.0 * math.e * c / alpha
    )
    if not n > threshold:
        return None
    return c * c + alpha * c


@dataclass(frozen=True)
class TnBracket:
    """Two-sided bounds on 1 - t_n; the simplified constants-only form is
    populated only when its preconditions (c > 10/pi and
    n > 2c/pi + 1 + log(c)/4) hold."""

    lower: float
    upper: float
    simple_lower: float | None = None
    simple_upper: float | None = None


def tn_bracket(n: int, c: float, chi_n: float) -> TnBracket:
    """Bracket 1 - t_n through chi_n - c^2 (requires chi_n > c^2)."""
    gap = chi_n - c * c
    if gap <= 0.0:
        raise DomainError("tn_bracket requires chi_n > c^2")
    lower = (math.pi**2 / 8.0) / (gap + math.hypot(gap, math.pi * c / 2.0))
    upper = 4.0 * math.pi**2 / (gap + math.hypot(gap, 4.0 * math.pi * c))
    simple_lo = simple_up = None
    if c > 10.0 / math.pi and n > 2.0 * c / math.pi + 1.0 + 0.25 * math.log(c):
        simple_lo = math.pi**2 / (8.0 * (1.0 + math.sqrt(2.0))) / gap
        simple_up = 2.0 * math.pi**2 / gap
    return TnBracket(lower=lower, upper=upper, simple_lower=simple_lo, simple_upper=simple_up)


def spacing_bracket(sp: SpecialPoints, i: int) -> tuple[float, float]:
    """Bracket on t_{i+1} - t_i (1-based i, requiring 0 <= t_i < t_n).

    Lower bound pi / (f(t_{i+1}) + v(t_{i+1})/2), upper bound pi / f(t_i),
    with f, v the phase coefficients; valid in the chi_n > c^2 regime.
    """
    if sp.regime is not Regime.ABOVE:
        raise DomainError("spacing_bracket requires the chi_n > c^2 regime")
    if not 1 <= i <= sp.n - 1:
        raise DomainError(f"i={i} outside 1..n-1")
    t_i = float(sp.t[i - 1])
    t_next = float(sp.t[i])
    if t_i < 0.0:
        raise DomainError("spacing_bracket requires t_i >= 0")
    fld = PhaseField(sp.c, sp.n, sp.chi)
    lower = math.pi / (phase_f(fld, t_next) + phase_v(fld, t_next) / 2.0)
    upper = math.pi / phase_f(fld, t_i)
    return lower, upper


def oscillation_envelope(fn: PswfFunction, t):
    """psi_n^2 + (1-t^2)/(chi - c^2 t^2) * psi_n'^2; increasing on
    (0, min(sqrt(chi)/c, 1))."""
    t = np.asarray(t, dtype=float)
    p = 1.0 - t * t
    q = fn.chi - (fn.c * t) ** 2
    return eval_psi(fn, t) ** 2 + p / q * eval_dpsi(fn, t) ** 2


def weighted_envelope(fn: PswfFunction, t):
    """(1-t^2) * [ (chi - c^2 t^2) psi_n^2 + (1-t^2) psi_n'^2 ]; decreasing
    on (0, min(sqrt(chi)/c, 1))."""
    t = np.asarray(t, dtype=float)
    p = 1.0 - t * t
    q = fn.chi - (fn.c * t) ** 2
    return p * (q * eval_psi(fn, t) ** 2 + p * eval_dpsi(fn, t) ** 2)


def endpoint_bounds(fn: PswfFunction) -> list[BoundReport]:
    """Endpoint and center-value bounds, all for the chi_n > c^2 regime.

    1/2 < psi_n(1)^2 < n + 1/2 always there; additionally
    1/|psi_n(0)| <= 4 sqrt(n chi / c^2) for even n and
    1/|psi_n'(0)| <= 4 sqrt(n / c^2) for odd n.
    """
    if fn.chi <= fn.c**2:
        raise DomainError("endpoint_bounds requires chi_n > c^2")
    n, c = fn.n, fn.c
    psi1_sq = float(eval_psi(fn, 1.0)) ** 2
    reports = [
        make_report(
            "psi1-square",
            {"c": c, "n": n},
            psi1_sq,
            lower=0.5,
            upper=n + 0.5,
        )
    ]
    if n % 2 == 0:
        center = abs(float(eval_psi(fn, 0.0)))
        bound = 4.0 * math.sqrt(n * fn.chi / c**2)
        name = "inv-center-value"
    else:
        center = abs(float(eval_dpsi(fn, 0.0)))
        bound = 4.0 * math.sqrt(n / c**2)
        name = "inv-center-slope"
    reports.append(
        make_report(
            name,
            {"c": c, "n": n},
            1.0 / center,
            upper=bound * (1.0 + _INCONCLUSIVE_REL),  # bound is non-strict (<=)
        )
    )
    return reports


def transformed_potential(chi_n: float, c: float, t):
    """Potential of the first-order-free form: (chi - c^2 t^2)/(1-t^2) + (1-t^2)^-2."""
    t = np.asarray(t, dtype=float)
    p = 1.0 - t * t
    return (chi_n - (c * t) ** 2) / p + 1.0 / p**2


def transformed_ode_residual(fn: PswfFunction, t):
    """Residual of Psi'' + Q Psi = 0 for Psi = psi_n * sqrt(1-t^2), |t| < 1.

    Psi'' is assembled from the recurrence-based psi_n, psi_n', psi_n''
    values, so a near-zero residual checks the evaluation pipeline, not
    the identity.
    """
    t = np.asarray(t, dtype=float)
    if np.any(np.abs(t) >= 1.0):
        raise DomainError("transformed residual requires |t| < 1")
    p = 1.0 - t * t
    psi = eval_psi(fn, t)
    dpsi = eval_dpsi(fn, t)
    d2psi = eval_d2psi(fn, t)
    big_psi = psi * np.sqrt(p)
    d2_big = (p * d2psi - 2.0 * t * dpsi - psi / p) / np.sqrt(p)
    return d2_big + transformed_potential(fn.chi, fn.c, t) * big_psi
