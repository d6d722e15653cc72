"""Modified Pruefer phase for the prolate differential equation.

Writing the equation in Sturm-Liouville form with p(t) = 1 - t^2 and
q(t) = chi_n - c^2 t^2, the phase theta(t) defined through

    p(t) psi_n'(t) / psi_n(t) = -sqrt(p(t) q(t)) tan(theta(t))

satisfies theta'(t) = f(t) + v(t) sin(2 theta(t)) with

    f(t) = sqrt(q(t) / p(t)),
    v(t) = (t / (1 - t^2) + c^2 t / (chi_n - c^2 t^2)) / 2,

and is strictly increasing: each root of psi_n sits at a half-integer
multiple of pi, each root of psi_n' at an integer multiple.  theta runs
from 0 at -x_n to n*pi at x_n, where x_n is the largest root of psi_n'
when chi_n < c^2 and the endpoint 1 otherwise.

The solver integrates the inverse function s(eta) (ds/deta = 1/theta')
outward from the exact center value s(n*pi/2) = 0, which keeps the
problem regular even when f blows up at the endpoints; x_n is recovered
as s(n*pi) rather than supplied as an initial condition.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import brentq

from .core import gauss_rule
from .errors import ConvergenceError, DomainError

__all__ = [
    "PhaseField",
    "PhaseSolution",
    "PruferMachinery",
    "phase_f",
    "phase_v",
    "solve_theta",
    "theta_inverse",
    "oscillatory_integral",
    "machinery",
    "V_OVER_F_CAP",
]

# Cap on v/f to the left of the last root of psi_n: v < f / (1 + 3*pi/8).
V_OVER_F_CAP = 1.0 / (1.0 + 3.0 * math.pi / 8.0)


@dataclass(frozen=True)
class PhaseField:
    """Coefficient data (c, n, chi_n) for the phase equation."""

    c: float
    n: int
    chi: float

    def __post_init__(self):
        if self.c <= 0.0 or self.chi <= 0.0:
            raise DomainError("PhaseField requires c > 0 and chi > 0")

    @property
    def turning_point(self) -> float:
        return math.sqrt(self.chi) / self.c

    @property
    def cap(self) -> float:
        """Right end of the open domain of f and v."""
        return min(1.0, self.turning_point)

    def f(self, t):
        return phase_f(self, t)

    def v(self, t):
        return phase_v(self, t)


def _domain_check(field: PhaseField, t) -> np.ndarray:
    t_arr = np.atleast_1d(np.asarray(t, dtype=float))
    if np.any(np.abs(t_arr) >= field.cap):
        raise DomainError(
            f"|t| must stay below min(1, sqrt(chi)/c) = {field.cap}"
        )
    return t_arr


def _scalar_like(values: np.ndarray, t):
    if np.isscalar(t) or getattr(t, "ndim", 1) == 0:
        return float(values[0])
    return values


def phase_f(field: PhaseField, t):
    """Monotone term f(t) = sqrt((chi - c^2 t^2) / (1 - t^2))."""
    t_arr = _domain_check(field, t)
    val = np.sqrt((field.chi - (field.c * t_arr) ** 2) / (1.0 - t_arr**2))
    return _scalar_like(val, t)


def phase_v(field: PhaseField, t):
    """Oscillatory coefficient v(t) = (t/(1-t^2) + c^2 t/(chi - c^2 t^2)) / 2."""
    t_arr = _domain_check(field, t)
    val = 0.5 * (
        t_arr / (1.0 - t_arr**2)
        + field.c**2 * t_arr / (field.chi - (field.c * t_arr) ** 2)
    )
    return _scalar_like(val, t)


@dataclass(frozen=True)
class PhaseSolution:
    """theta on [-x_n, x_n] with its inverse s on [0, n*pi].

    ``grid`` holds the accepted integration steps (t_j, theta_j) over the
    right half plus mirrored left half; dense evaluation between steps
    uses the integrator's degree-7 interpolant (interpolation_order = 7).
    """

    field: PhaseField
    x_n: float
    grid_t: np.ndarray
    grid_theta: np.ndarray
    interpolation_order: int
    _dense: object = dc_field(repr=False, default=None)

    @property
    def n_pi(self) -> float:
        return self.field.n * math.pi

    def s(self, eta: float) -> float:
        """Inverse phase: the point t with theta(t) = eta."""
        return theta_inverse(self, eta)

    def theta(self, t: float) -> float:
        """Phase value at t, by monotone bracketing on the inverse."""
        if not -self.x_n - 1e-12 <= t <= self.x_n + 1e-12:
            raise DomainError(f"t={t} outside [-x_n, x_n] = [{-self.x_n}, {self.x_n}]")
        if t >= self.x_n:
            return self.n_pi
        if t <= -self.x_n:
            return 0.0
        return brentq(lambda eta: self.s(eta) - t, 0.0, self.n_pi, xtol=1e-14)


def _inverse_rhs(field: PhaseField):
    c, chi = field.c, field.chi

    def rhs(eta: float, y):
        s = y[0]
        p = 1.0 - s * s
        q = chi - (c * s) ** 2
        if p <= 0.0 or q <= 0.0:
            return (0.0,)  # beyond the open domain: theta' -> +inf there
        f = math.sqrt(q / p)
        v = 0.5 * (s / p + c * c * s / q)
        return (1.0 / (f + v * math.sin(2.0 * eta)),)

    return rhs


def solve_theta(field: PhaseField, rtol: float = 1e-13, atol: float = 1e-14) -> PhaseSolution:
    """Integrate the phase across [-x_n, x_n] for n >= 2.

    Adaptive 8th-order Runge-Kutta with dense output, applied to the
    inverse function s(eta) on [n*pi/2, n*pi] from the parity-exact
    anchor s(n*pi/2) = 0; the left half follows from s(n*pi - eta) =
    -s(eta).
    """
    n = field.n
    if n < 2:
        raise DomainError("phase solution requires n >= 2")
    half = n * math.pi / 2.0
    sol = solve_ivp(
        _inverse_rhs(field),
        (half, 2.0 * half),
        (0.0,),
        method="DOP853",
        rtol=rtol,
        atol=atol,
        dense_output=True,
    )
    if sol.status != 0:
        raise ConvergenceError(f"phase integration failed: {sol.message}")
    x_n = float(sol.y[0, -1])
    if x_n > field.cap + 1e-8:
        raise ConvergenceError(
            f"phase endpoint s(n*pi) = {x_n} overshoots min(1, turning point) = {field.cap}"
        )
    eta_right = sol.t
    t_right = sol.y[0]
    grid_theta = np.concatenate([(2.0 * half - eta_right)[::-1], eta_right[1:]])
    grid_t = np.concatenate([(-t_right)[::-1], t_right[1:]])
    return PhaseSolution(
        field=field,
        x_n=min(x_n, field.cap),
        grid_t=grid_t,
        grid_theta=grid_theta,
        interpolation_order=7,
        _dense=sol.sol,
    )


def theta_inverse(sol: PhaseSolution, eta: float) -> float:
    """s(eta) for 0 <= eta <= n*pi, from the stored dense interpolant."""
    n_pi = sol.n_pi
    if not -1e-12 <= eta <= n_pi + 1e-12:
        raise DomainError(f"eta={eta} outside [0, {n_pi}]")
    eta = min(max(eta, 0.0), n_pi)
    half = 0.5 * n_pi
    if eta >= half:
        val = float(sol._dense(eta)[0])
    else:
        val = -float(sol._dense(n_pi - eta)[0])
    return min(max(val, -sol.x_n), sol.x_n)


def oscillatory_integral(sol: PhaseSolution, eta_lo: float, eta_hi: float, order: int = 96) -> float:
    """Integral of v(t) sin(2 theta(t)) dt between the phase levels
    eta_lo and eta_hi, computed in phase coordinates where the special
    points are exact quadrature endpoints."""
    nodes, weights = gauss_rule(order)
    mid = 0.5 * (eta_hi + eta_lo)
    rad = 0.5 * (eta_hi - eta_lo)
    eta = mid + rad * nodes
    total = 0.0
    rhs = _inverse_rhs(sol.field)
    for e, w in zip(eta, weights):
        t = theta_inverse(sol, e)
        ds = rhs(e, (t,))[0]
        total += w * phase_v(sol.field, t) * math.sin(2.0 * e) * ds
    return rad * total


@dataclass(frozen=True)
class PruferMachinery:
    """Closed-form quantities controlling the decay of f/v.

    ``fv_decay_factor(t, a)`` is the factor h with -(f/v)'(t) = h * f(t)
    where a = chi/c^2; it is bounded below by 3/2 on t^2 < a.  ``z0`` caps
    v/f left of the last root of psi_n; ``z_delta`` sharpens the cap a
    quarter-turn short of a root; ``gap`` is the positive margin between
    the f/v drops over adjacent quarter-turns.
    """

    field: PhaseField
    t_hat: float  # unique crossing f(t_hat) = v(t_hat)
    z0: float = V_OVER_F_CAP

    @staticmethod
    def fv_decay_factor(t: float, a: float) -> float:
        if not 0.0 < t < 1.0 or a <= t * t:
            raise DomainError("fv_decay_factor requires 0 < t < 1 and a > t^2")
        t2 = t * t
        num = 4.0 * t2**3 + (2.0 * a - 6.0) * t2**2 + (4.0 - 8.0 * a) * t2 + 2.0 * a * (a + 1.0)
        return num / (t2 * (1.0 + a - 2.0 * t2) ** 2)

    def z_delta(self, delta: float) -> float:
        if not 0.0 <= delta <= math.pi / 4.0:
            raise DomainError("delta outside [0, pi/4]")
        inner = math.pi / 4.0 + delta / (1.0 + self.z0 * math.sin(2.0 * delta))
        return 1.0 / (1.0 + 1.5 * inner)

    def gap(self, delta: float) -> float:
        zd = self.z_delta(delta)
        return 1.5 * (math.pi / 2.0 - delta) / (1.0 + zd) + 1.5 * delta - 2.0 * math.sin(2.0 * delta)


def machinery(field: PhaseField) -> PruferMachinery:
    """Build the machinery record, locating the crossing f = v.

    v/f increases monotonically from 0 at t = 0 to +infinity at the
    domain cap, so the crossing is unique and bracketed.
    """
    cap = field.cap * (1.0 - 1e-13)
    lo = 1e-12 * cap

    def ratio_minus_one(t: float) -> float:
        return phase_v(field, t) / phase_f(field, t) - 1.0

    t_hat = brentq(ratio_minus_one, lo, cap, xtol=1e-15, rtol=8.9e-16)
    return PruferMachinery(field=field, t_hat=float(t_hat))
