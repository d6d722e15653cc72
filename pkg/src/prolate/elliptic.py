"""Elliptic integrals of the first and second kind.

Incomplete integrals are taken in the trigonometric (Legendre) form

    F(y, k) = integral of dt / sqrt(1 - k^2 sin^2 t) over [0, y],
    E(y, k) = integral of sqrt(1 - k^2 sin^2 t) dt over [0, y],

with amplitude 0 <= y <= pi/2.  Values are computed through the Carlson
symmetric forms R_F and R_D with the duplication algorithm, which is
accurate over the whole parameter domain without any quadrature.

The modulus may exceed 1 as long as k*sin(y) <= 1; the integrand then
stays real and the integrals remain finite.  This extended domain is what
turning-point-limited integrals of the prolate equation reduce to.
"""

from __future__ import annotations

import math

from .errors import DivergenceError, DomainError

__all__ = [
    "carlson_rf",
    "carlson_rd",
    "ellint_F",
    "ellint_E",
    "ellint_Fc",
    "ellint_Ec",
]

# Series cutoff per Carlson's error analysis: terminating the duplication
# once 4^-m * Q < |A_m| leaves a truncation error below machine epsilon.
_RF_SCALE = (3.0 * 2.3e-16) ** (-1.0 / 8.0)
_RD_SCALE = (2.3e-16 / 4.0) ** (-1.0 / 8.0)


def carlson_rf(x: float, y: float, z: float) -> float:
    """Carlson symmetric integral R_F(x, y, z); at most one argument zero."""
    if min(x, y, z) < 0.0 or (x == 0.0) + (y == 0.0) + (z == 0.0) > 1:
        raise DomainError("carlson_rf requires nonnegative args, at most one zero")
    xn, yn, zn = float(x), float(y), float(z)
    a0 = (xn + yn + zn) / 3.0
    q = _RF_SCALE * max(abs(a0 - xn), abs(a0 - yn), abs(a0 - zn))
    a, f = a0, 1.0
    while q * f >= abs(a):
        sx, sy, sz = math.sqrt(xn), math.sqrt(yn), math.sqrt(zn)
        lam = sx * sy + sx * sz + sy * sz
        xn, yn, zn = (xn + lam) / 4.0, (yn + lam) / 4.0, (zn + lam) / 4.0
        a = (a + lam) / 4.0
        f /= 4.0
    dx = (a0 - x) * f / a
    dy = (a0 - y) * f / a
    dz = -(dx + dy)
    e2 = dx * dy - dz * dz
    e3 = dx * dy * dz
    return (
        1.0
        - e2 / 10.0
        + e3 / 14.0
        + e2 * e2 / 24.0
        - 3.0 * e2 * e3 / 44.0
    ) / math.sqrt(a)


def carlson_rd(x: float, y: float, z: float) -> float:
    """Carlson symmetric integral R_D(x, y, z); z > 0, at most one of x, y zero."""
    if min(x, y) < 0.0 or z <= 0.0 or (x == 0.0 and y == 0.0):
        raise DomainError("carlson_rd requires x, y >= 0 (not both zero) and z > 0")
    xn, yn, zn = float(x), float(y), float(z)
    a0 = (xn + yn + 3.0 * zn) / 5.0
    q = _RD_SCALE * max(abs(a0 - xn), abs(a0 - yn), abs(a0 - zn))
    a, f, acc = a0, 1.0, 0.0
    while q * f >= abs(a):
        sx, sy, sz = math.sqrt(xn), math.sqrt(yn), math.sqrt(zn)
        lam = sx * sy + sx * sz + sy * sz
        acc += f / (sz * (zn + lam))
        xn, yn, zn = (xn + lam) / 4.0, (yn + lam) / 4.0, (zn + lam) / 4.0
        a = (a + lam) / 4.0
        f /= 4.0
    dx = (a0 - x) * f / a
    dy = (a0 - y) * f / a
    dz = -(dx + dy) / 3.0
    e2 = dx * dy - 6.0 * dz * dz
    e3 = (3.0 * dx * dy - 8.0 * dz * dz) * dz
    e4 = 3.0 * (dx * dy - dz * dz) * dz * dz
    e5 = dx * dy * dz * dz * dz
    series = (
        1.0
        - 3.0 * e2 / 14.0
        + e3 / 6.0
        + 9.0 * e2 * e2 / 88.0
        - 3.0 * e4 / 22.0
        - 9.0 * e2 * e3 / 52.0
        + 3.0 * e5 / 26.0
    )
    return f * series * a ** (-1.5) + 3.0 * acc


def _check_args(y: float, k: float) -> None:
    if not 0.0 <= y <= math.pi / 2.0 + 1e-15:
        raise DomainError(f"amplitude y={y} outside [0, pi/2]")
    if k < 0.0:
        raise DomainError(f"modulus k={k} negative")
    if k * math.sin(y) > 1.0 + 1e-12:
        raise DomainError(f"k*sin(y)={k * math.sin(y)} exceeds 1: integrand complex")


def ellint_F(y: float, k: float) -> float:
    """Incomplete elliptic integral of the first kind F(y, k)."""
    _check_args(y, k)
    s = math.sin(y)
    if k * s >= 1.0 and y >= math.pi / 2.0 - 1e-15:
        raise DivergenceError("F(pi/2, 1) diverges logarithmically")
    if s == 0.0:
        return 0.0
    c2 = math.cos(y) ** 2
    u = max(1.0 - (k * s) ** 2, 0.0)
    return s * carlson_rf(c2, u, 1.0)


def ellint_E(y: float, k: float) -> float:
    """Incomplete elliptic integral of the second kind E(y, k)."""
    _check_args(y, k)
    s = math.sin(y)
    if s == 0.0:
        return 0.0
    if k == 1.0:
        return s
    c2 = math.cos(y) ** 2
    u = max(1.0 - (k * s) ** 2, 0.0)
    return s * carlson_rf(c2, u, 1.0) - (k * k / 3.0) * s ** 3 * carlson_rd(c2, u, 1.0)


def ellint_Fc(k: float) -> float:
    """Complete elliptic integral of the first kind F(pi/2, k), k < 1."""
    return ellint_F(math.pi / 2.0, k)


def ellint_Ec(k: float) -> float:
    """Complete elliptic integral of the second kind E(pi/2, k)."""
    return ellint_E(math.pi / 2.0, k)
