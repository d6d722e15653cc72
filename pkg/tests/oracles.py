"""Independent reference computations: adaptive Simpson quadrature and a
direct initial-value integration of the prolate equation.  These stay
deliberately separate from the library's own algorithms (Carlson forms,
Legendre expansions) so agreement is a genuine cross-check."""

import numpy as np
from scipy.integrate import solve_ivp


def adaptive_simpson(f, a, b, tol=1e-12, max_depth=40):
    fa, fm, fb = f(a), f(0.5 * (a + b)), f(b)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    return _simpson_step(f, a, b, fa, fm, fb, whole, tol, max_depth)


def _simpson_step(f, a, b, fa, fm, fb, whole, tol, depth):
    m = 0.5 * (a + b)
    lm, rm = 0.5 * (a + m), 0.5 * (m + b)
    flm, frm = f(lm), f(rm)
    left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
    right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
    if depth <= 0 or abs(left + right - whole) <= 15.0 * tol:
        return left + right + (left + right - whole) / 15.0
    return _simpson_step(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) + _simpson_step(
        f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1
    )


def integrate_prolate_ode(c, chi, psi0, dpsi0, t_eval):
    """Solve (1-t^2) y'' - 2t y' + (chi - c^2 t^2) y = 0 from t = 0 with
    the given initial data, returning y on the requested points (which
    must stay inside (-1, 1))."""

    def rhs(t, y):
        return (y[1], (2.0 * t * y[1] - (chi - (c * t) ** 2) * y[0]) / (1.0 - t * t))

    t_eval = np.asarray(t_eval, dtype=float)
    out = np.empty_like(t_eval)
    for sign in (-1.0, 1.0):
        side = t_eval * sign > 0.0 if sign < 0 else t_eval * sign >= 0.0
        pts = t_eval[side]
        if pts.size == 0:
            continue
        order = np.argsort(np.abs(pts))
        sol = solve_ivp(
            rhs,
            (0.0, sign * (np.max(np.abs(pts)) + 1e-9)),
            (psi0, dpsi0),
            method="DOP853",
            rtol=1e-12,
            atol=1e-13,
            dense_output=True,
        )
        vals = np.array([float(sol.sol(p)[0]) for p in pts[order]])
        unsorted = np.empty_like(vals)
        unsorted[order] = vals
        out[side] = unsorted
    return out
