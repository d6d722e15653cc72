"""Golden reference tables and figure data as deterministic CSV.

Each dataset id names a fixed (c, index-set) job:

  77a/77b/77c  chi_n/c^2 with the Above/Below two-sided estimates of n
               (c = 10, 100, 1000; chi_n > c^2 rows),
  99           the same in the chi_n < c^2 regime (c = 100),
  80a/80b      the (pi (n+1)/2)^2 upper bound on chi_n (c = 1000, 10000),
  98a/98b      consecutive-root gaps with phase-coefficient brackets
               (c = 100 n = 87, c = 1000 n = 670),
  75a/75b      psi_n samples with marked special points (c = 20, n = 9/14),
  170          1 - t_n against its constants-only bracket (c = 200),
  171a/171b    relative errors of the three upper / lower chi_n bounds
               (c = 1000).

Table cells use the fixed-field scientific format 0.dddddE+xx so output
can be diffed by eye against 5-digit references; figure/data files use
plain shortest-roundtrip floats.  All outputs are pure functions of the
dataset id, hence byte-identical across runs.
"""

from __future__ import annotations

import math

import numpy as np

from .bounds import (
    chi_square_upper,
    count_above,
    count_below,
    h_inverse,
    spacing_bracket,
    tn_bracket,
)
from .core import ProlateContext, ProlateSpectrum, build_spectrum, chi_sequence
from .errors import DomainError, ProlateError
from .roots import Regime, dpsi_roots_scan, psi_roots, special_points
from .prufer import PhaseField, solve_theta

__all__ = [
    "TABLE_IDS",
    "FIGURE_IDS",
    "HeavyJobError",
    "fortran_sci",
    "reproduce_table",
    "reproduce_figure",
]

TABLE_IDS = ("77a", "77b", "77c", "99", "80a", "80b", "98a", "98b")
FIGURE_IDS = ("75a", "75b", "170", "171a", "171b")

_ABOVE_BELOW_ROWS = {
    "77a": (10.0, (6, 10, 15, 20, 25, 30, 35, 40, 45)),
    "77b": (100.0, (64, 70, 75, 80, 85, 90, 95, 100)),
    "77c": (1000.0, (637, 640, 645, 650, 655, 660, 665, 670, 675)),
    "99": (100.0, (1, 9, 19, 29, 39, 49, 54, 59, 63)),
}
_SQUARE_ROWS = {
    "80a": (1000.0, tuple(range(640, 821, 20))),
    "80b": (10000.0, tuple(range(6400, 8201, 200))),
}
_SPACING_ROWS = {
    "98a": (100.0, 87, (44, 46, 60, 62, 70, 72, 84, 86)),
    "98b": (1000.0, 670, (336, 338, 400, 402, 500, 502, 601, 603, 667, 669)),
}


class HeavyJobError(ProlateError):
    """Raised when a c = 10000 job is requested without the heavy opt-in."""


def fortran_sci(v: float) -> str:
    """Fixed-field scientific notation with a 0.ddddd mantissa, e.g. 0.65036E+01."""
    if v == 0.0:
        return "0.00000E+00"
    sign = "-" if v < 0.0 else ""
    a = abs(v)
    exp = math.floor(math.log10(a)) + 1
    digits = round(a / 10.0**exp * 1e5)
    if digits == 100000:  # rounding carried into a new decade
        digits = 10000
        exp += 1
    return f"{sign}0.{digits:05d}E{exp:+03d}"


# simple per-process caches; all jobs are deterministic in (c, n_max)
_spectra: dict[float, ProlateSpectrum] = {}
_chi_only: dict[float, np.ndarray] = {}


def _spectrum(c: float, n_max: int) -> ProlateSpectrum:
    cached = _spectra.get(c)
    if cached is None or cached.context.n_max < n_max:
        cached = build_spectrum(ProlateContext(c=c, n_max=n_max))
        _spectra[c] = cached
    return cached


def _chi(c: float, n_max: int) -> np.ndarray:
    cached = _chi_only.get(c)
    if cached is None or cached.size <= n_max:
        cached = chi_sequence(ProlateContext(c=c, n_max=n_max))
        _chi_only[c] = cached
    return cached


def _above_below_row(spec: ProlateSpectrum, n: int) -> tuple[float, float, float]:
    """(chi/c^2, Above(n), Below(n)) for one index."""
    fn = spec.function(n)
    c = fn.c
    if n == 1:
        # below the n >= 2 machinery: the single root is at the origin and
        # psi_1' has exactly two symmetric roots
        t_n = float(psi_roots(fn)[0])
        endpoint = float(dpsi_roots_scan(fn)[-1])
    else:
        phase = solve_theta(PhaseField(c, n, fn.chi))
        sp = special_points(fn, phase)
        t_n = sp.t_n
        endpoint = 1.0 if sp.regime is Regime.ABOVE else sp.x_n
    above = count_above(n, c, fn.chi, endpoint)
    below = count_below(n, c, fn.chi, t_n)
    return fn.chi / c**2, above, below


def _csv(header: list[str], rows: list[list[str]]) -> str:
    lines = [",".join(header)]
    lines.extend(",".join(row) for row in rows)
    return "\n".join(lines) + "\n"


def reproduce_table(table_id: str, heavy: bool = False) -> str:
    """CSV text for one golden table id."""
    if table_id in _ABOVE_BELOW_ROWS:
        c, indices = _ABOVE_BELOW_ROWS[table_id]
        spec = _spectrum(c, max(indices))
        rows = []
        for n in indices:
            ratio, above, below = _above_below_row(spec, n)
            rows.append(
                [
                    str(n),
                    fortran_sci(ratio),
                    fortran_sci(above),
                    fortran_sci(below),
                    fortran_sci((above - n) / n),
                    fortran_sci((n - below) / n),
                ]
            )
        return _csv(
            ["n", "chi_over_c2", "above", "below", "rel_err_above", "rel_err_below"],
            rows,
        )

    if table_id in _SQUARE_ROWS:
        c, indices = _SQUARE_ROWS[table_id]
        if table_id == "80b" and not heavy:
            raise HeavyJobError("table 80b runs at c = 10000; pass heavy to enable")
        chi = _chi(c, max(indices))
        rows = []
        for n in indices:
            bound = chi_square_upper(n)
            rows.append(
                [
                    str(n),
                    fortran_sci((n - 2.0 * c / math.pi - 1.0) / c),
                    fortran_sci(float(chi[n])),
                    fortran_sci(bound),
                    fortran_sci(bound / float(chi[n]) - 1.0),
                ]
            )
        return _csv(["n", "norm_distance", "chi", "square_bound", "rel_err"], rows)

    if table_id in _SPACING_ROWS:
        c, n, indices = _SPACING_ROWS[table_id]
        spec = _spectrum(c, n)
        fn = spec.function(n)
        sp = special_points(fn)
        rows = []
        for i in indices:
            gap = float(sp.t[i] - sp.t[i - 1])
            lower, upper = spacing_bracket(sp, i)
            rows.append(
                [
                    str(i),
                    fortran_sci(gap),
                    fortran_sci(lower),
                    fortran_sci(upper),
                    fortran_sci((gap - lower) / gap),
                    fortran_sci((upper - gap) / gap),
                ]
            )
        return _csv(["i", "gap", "lower", "upper", "rel_err_lower", "rel_err_upper"], rows)

    raise DomainError(f"unknown table id {table_id!r}; known: {', '.join(TABLE_IDS)}")


def _figure_psi(c: float, n: int, samples: int = 2001) -> str:
    spec = _spectrum(c, n)
    fn = spec.function(n)
    sp = special_points(fn)
    rows = []
    for t in np.linspace(-1.0, 1.0, samples):
        rows.append(["sample", repr(float(t)), repr(float(fn.psi(t)))])
    for t in sp.t:
        rows.append(["root_psi", repr(float(t)), repr(0.0)])
    for x in sp.x:
        if abs(x) < 1.0 or not sp.xn_is_formal:
            rows.append(["root_dpsi", repr(float(x)), repr(float(fn.psi(x)))])
    marker = min(sp.turning, 1.0)
    rows.append(["turning", repr(float(sp.turning)), repr(float(fn.psi(marker)))])
    rows.append(["endpoint", repr(1.0), repr(float(fn.psi(1.0)))])
    return _csv(["kind", "t", "value"], rows)


def reproduce_figure(fig_id: str) -> str:
    """CSV series for one golden figure id."""
    if fig_id == "75a":
        return _figure_psi(20.0, 9)
    if fig_id == "75b":
        return _figure_psi(20.0, 14)

    if fig_id == "170":
        c = 200.0
        indices = range(130, 231)
        spec = _spectrum(c, max(indices))
        rows = []
        for n in indices:
            fn = spec.function(n)
            t_n = float(psi_roots(fn)[-1])
            bracket = tn_bracket(n, c, fn.chi)
            rows.append(
                [
                    str(n),
                    repr(math.log(1.0 - t_n)),
                    repr(math.log(bracket.simple_lower)),
                    repr(math.log(bracket.simple_upper)),
                ]
            )
        return _csv(["n", "log_one_minus_tn", "log_lower", "log_upper"], rows)

    if fig_id in ("171a", "171b"):
        c = 1000.0
        indices = range(630, 711)
        chi = _chi(c, max(indices))
        rows = []
        for n in indices:
            ch = float(chi[n])
            nu = n * math.pi / (2.0 * c) - 1.0
            if fig_id == "171a":
                u1 = c * c + n * (n + 1.0)
                u2 = chi_square_upper(n)
                u3 = c * c * (1.0 + h_inverse(nu + 3.0 * math.pi / (2.0 * c)))
                errs = [(u - ch) / ch for u in (u1, u2, u3)]
            else:
                l1 = n * (n + 1.0)
                l2 = c * c
                l3 = c * c * (1.0 + h_inverse(nu))
                errs = [(ch - l) / ch for l in (l1, l2, l3)]
            rows.append(
                [str(n)]
                + [repr(float(e)) for e in errs]
                + [repr(math.log10(abs(e))) for e in errs]
            )
        tag = "u" if fig_id == "171a" else "l"
        header = ["n"] + [f"rel_err_{tag}{j}" for j in (1, 2, 3)] + [
            f"log10_rel_err_{tag}{j}" for j in (1, 2, 3)
        ]
        return _csv(header, rows)

    raise DomainError(f"unknown figure id {fig_id!r}; known: {', '.join(FIGURE_IDS)}")
