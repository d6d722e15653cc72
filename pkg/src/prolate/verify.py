"""Grid verification of every module-level invariant, with a CSV report.

A grid is a list of (c, indices) jobs.  For each job the spectrum is
built once and every inequality and structural invariant is checked for
each index, producing one outcome row per (c, n, check).  Strict
inequalities violated within 1e-13 relative count as "inconclusive", not
failures.  ``chi_scale`` perturbs the eigenvalue fed to the bound
formulas (the functions themselves are evaluated from the unperturbed
eigenvectors); it exists so the harness's sensitivity can be exercised
by fault injection.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from . import bounds
from .core import (
    ProlateContext,
    build_spectrum,
    eval_psi,
    gauss_rule,
    integral_eigenvalue,
)
from .errors import ProlateError
from .prufer import PhaseField, machinery, oscillatory_integral, solve_theta, theta_inverse
from .roots import Regime, dpsi_roots_scan, psi_roots_scan, spacing_report, special_points

__all__ = ["CheckOutcome", "VerifyReport", "default_grid", "run_verification"]

PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"


@dataclass(frozen=True)
class CheckOutcome:
    c: float
    n: int | None  # None for whole-spectrum or global checks
    name: str
    status: str
    margin: float  # smallest normalized slack seen; negative exactly when failing
    detail: str = ""


@dataclass(frozen=True)
class VerifyReport:
    outcomes: list[CheckOutcome]
    runtime: float

    @property
    def counts(self) -> dict[str, int]:
        tally = {PASS: 0, FAIL: 0, INCONCLUSIVE: 0}
        for o in self.outcomes:
            tally[o.status] += 1
        return tally

    @property
    def failures(self) -> list[CheckOutcome]:
        return [o for o in self.outcomes if o.status == FAIL]

    def worst_margins(self) -> dict[str, float]:
        worst: dict[str, float] = {}
        for o in self.outcomes:
            if math.isnan(o.margin):
                continue
            if o.name not in worst or o.margin < worst[o.name]:
                worst[o.name] = o.margin
        return worst

    @property
    def exit_code(self) -> int:
        return 0 if not self.failures else 1

    def to_csv(self) -> str:
        rows = sorted(
            self.outcomes, key=lambda o: (o.c, -1 if o.n is None else o.n, o.name, o.detail)
        )
        lines = ["c,n,check,status,margin,detail"]
        for o in rows:
            n_txt = "" if o.n is None else str(o.n)
            lines.append(f"{o.c!r},{n_txt},{o.name},{o.status},{o.margin!r},{o.detail}")
        return "\n".join(lines) + "\n"

    def to_log(self) -> str:
        lines = []
        for o in sorted(
            self.outcomes, key=lambda o: (o.c, -1 if o.n is None else o.n, o.name, o.detail)
        ):
            where = f"c={o.c:g}" + ("" if o.n is None else f" n={o.n}")
            extra = f" [{o.detail}]" if o.detail else ""
            lines.append(f"{o.status.upper():12s} {where:18s} {o.name}{extra}")
        tally = self.counts
        lines.append(
            f"total={len(self.outcomes)} pass={tally[PASS]} fail={tally[FAIL]} "
            f"inconclusive={tally[INCONCLUSIVE]} runtime={self.runtime:.2f}s"
        )
        return "\n".join(lines) + "\n"


def default_grid() -> list[tuple[float, range]]:
    """c in {0.5, 1, 10, 20, 100} with n from 2 to max(20, ceil(2c/pi) + 15)."""
    grid = []
    for c in (0.5, 1.0, 10.0, 20.0, 100.0):
        top = max(20, math.ceil(2.0 * c / math.pi) + 15)
        grid.append((c, range(2, top + 1)))
    return grid


class _Recorder:
    def __init__(self):
        self.outcomes: list[CheckOutcome] = []

    def _classify(self, margin: float) -> str:
        if margin > 0.0:
            return PASS
        if margin >= -1e-13:
            return INCONCLUSIVE
        return FAIL

    def strict(self, c, n, name, lower, value, upper=None, scale=None, detail=""):
        """Record lower < value (< upper); inconclusive within 1e-13 relative."""
        s = scale if scale is not None else max(abs(value), 1.0)
        margin = value - lower
        if upper is not None:
            margin = min(margin, upper - value)
        margin /= s
        self.outcomes.append(CheckOutcome(c, n, name, self._classify(margin), margin, detail))

    def positive(self, c, n, name, slack, scale=1.0, detail=""):
        """Record slack > 0 for a one-sided cap, normalized by scale."""
        margin = slack / scale
        self.outcomes.append(CheckOutcome(c, n, name, self._classify(margin), margin, detail))

    def boolean(self, c, n, name, ok, detail=""):
        self.outcomes.append(
            CheckOutcome(c, n, name, PASS if ok else FAIL, math.nan, detail)
        )

    def error(self, c, n, name, exc):
        self.outcomes.append(
            CheckOutcome(c, n, name, FAIL, math.nan, f"{type(exc).__name__}: {exc}")
        )


def _check_global_machinery(rec: _Recorder) -> None:
    """Constants of the phase machinery; independent of c and n."""
    mach = machinery(PhaseField(1.0, 2, 8.0))
    worst = math.inf
    for t in np.linspace(0.02, 0.98, 25):
        for da in np.geomspace(1e-6, 1e4, 40):
            worst = min(worst, mach.fv_decay_factor(float(t), float(t * t + da)))
    rec.strict(math.nan, None, "machinery-decay-floor", 1.5, worst, scale=1.0)
    limit = mach.fv_decay_factor(0.5, 0.25 * (1.0 + 1e-9))
    rec.strict(math.nan, None, "machinery-decay-limit", 6.0 - 1e-3, limit, 6.0 + 1e-3)
    h_min = min(mach.gap(float(d)) for d in np.linspace(0.0, math.pi / 4.0, 10_000))
    rec.strict(math.nan, None, "machinery-gap-floor", 1.0 / 25.0, h_min, scale=1.0)


def _check_spectrum_level(rec, c, spec, indices, chi_scale):
    chi = spec.chi * chi_scale
    rec.boolean(c, None, "chi-increasing", bool(np.all(np.diff(spec.chi) > 0.0)))

    # orthonormality through a rule exact for the polynomial products
    order = spec.coeffs.shape[1] + 1
    nodes, weights = gauss_rule(order)
    top = max(indices)
    values = np.vstack([eval_psi(spec.function(n), nodes) for n in range(top + 1)])
    gram = (values * weights) @ values.T
    off = gram - np.diag(np.diag(gram))
    rec.positive(c, None, "orthonormality-cross", 1e-8 - float(np.max(np.abs(off))), scale=1e-8)
    rec.positive(
        c, None, "orthonormality-self",
        1e-10 - float(np.max(np.abs(np.diag(gram) - 1.0))), scale=1e-10,
    )

    lam = np.array([integral_eigenvalue(spec.function(n)).lambda_abs for n in range(top + 1)])
    mu = c / (2.0 * math.pi) * lam**2
    rec.boolean(c, None, "mu-range", bool(np.all((mu > 0.0) & (mu < 1.0))))
    significant = np.maximum(lam[:-1], lam[1:]) > 1e-12  # below that, quadrature noise
    rec.boolean(
        c, None, "lambda-nonincreasing",
        bool(np.all(np.diff(lam)[significant] <= 0.0)),
    )

    for n in indices:
        lo, hi = bounds.crude_chi_bracket(n, c)
        rec.strict(c, n, "crude-bracket", lo, float(chi[n]), hi)


def _check_one_index(rec, c, n, fn, chi_scale):
    chi = fn.chi * chi_scale
    regime = Regime.BELOW if chi < c * c else Regime.ABOVE
    field = PhaseField(c, n, fn.chi)
    phase = solve_theta(field)
    sp = special_points(fn, phase)
    gap_sq = chi - c * c

    # --- structure: counts, interlacing, classification consistency
    rec.boolean(c, n, "psi-root-count", psi_roots_scan(fn).size == n)
    expected_dpsi = n + 1 if sp.regime is Regime.BELOW else n - 1
    rec.boolean(c, n, "dpsi-root-count", dpsi_roots_scan(fn).size == expected_dpsi)
    chain = np.concatenate(
        [
            [-sp.turning, -sp.x_n],
            np.ravel(np.column_stack([sp.t[:-1], sp.x[:-1]])),
            [sp.t[-1], sp.x_n, sp.turning],
        ]
    )
    rec.boolean(c, n, "interlacing", bool(np.all(np.diff(chain) > 0.0)))
    classified = bounds.regime_classify(n, c)
    rec.boolean(
        c, n, "regime-consistent",
        classified is Regime.AMBIGUOUS or classified is sp.regime,
        detail=classified.value,
    )

    # --- the two-sided estimate of n and its coarser consequences
    endpoint = 1.0 if regime is Regime.ABOVE else sp.x_n
    try:
        above = bounds.count_above(n, c, chi, endpoint)
        below = bounds.count_below(n, c, chi, sp.t_n)
        rec.strict(c, n, "sandwich", below, float(n), above, scale=float(n))
        if regime is Regime.ABOVE:
            rec.positive(c, n, "above-minus-n", 3.0 - (above - n))
            rec.positive(c, n, "outer-integral-cap", 4.0 - (above - below + 1.0))
    except ProlateError as exc:
        rec.error(c, n, "sandwich", exc)

    if n > 2.0 * c / math.pi:
        nu = n * math.pi / (2.0 * c) - 1.0
        rec.strict(
            c, n, "h-bracket",
            bounds.h_inverse(nu), gap_sq / (c * c),
            bounds.h_inverse(nu + 3.0 * math.pi / (2.0 * c)),
        )

    # --- root locations and spacings
    if regime is Regime.ABOVE:
        br = bounds.tn_bracket(n, c, chi)
        one_minus = 1.0 - sp.t_n
        rec.strict(c, n, "tn-bracket", br.lower, one_minus, br.upper, scale=one_minus)
        if br.simple_lower is not None:
            rec.strict(
                c, n, "tn-bracket-simple", br.simple_lower, one_minus, br.simple_upper,
                scale=one_minus,
            )
        rec.positive(c, n, "tn-edge-cap", math.pi / c - one_minus, scale=math.pi / c)

        gaps = np.diff(sp.t)
        for idx in range(1, n):
            if sp.t[idx - 1] < 0.0:
                continue
            lo, hi = bounds.spacing_bracket(sp, idx)
            rec.strict(
                c, n, "spacing-bracket", lo, float(gaps[idx - 1]), hi,
                scale=float(gaps[idx - 1]), detail=f"i={idx}",
            )
        cap = math.pi / math.sqrt(chi + 1.0)
        rec.positive(c, n, "spacing-cap-chi", cap - float(np.max(gaps)), scale=cap)
        rec.positive(c, n, "spacing-cap-c", math.pi / c - float(np.max(gaps)), scale=math.pi / c)

    if n >= 3:
        report = spacing_report(sp)
        if regime is Regime.ABOVE:
            rec.boolean(
                c, n, "gap-monotone-decreasing",
                report.decreasing_right_half or report.inconclusive,
            )
        elif chi < c * c - c * math.sqrt(2.0):
            rec.boolean(
                c, n, "gap-monotone-increasing",
                report.increasing_right_half or report.inconclusive,
            )

    # --- endpoint growth bounds (chi_n > c^2 only)
    if regime is Regime.ABOVE and chi_scale == 1.0:
        for rep in bounds.endpoint_bounds(fn):
            rec.boolean(c, n, f"endpoint-{rep.name}", rep.holds or rep.inconclusive)

    # extrema grow toward the edge regardless of regime
    ext = sp.x[:-1] if sp.xn_is_formal else sp.x
    ext = ext[ext >= 0.0]
    ext_vals = np.abs(eval_psi(fn, ext))
    ordered = bool(np.all(np.diff(ext_vals) > 0.0)) if ext_vals.size > 1 else True
    if regime is Regime.ABOVE and ext_vals.size:
        ordered = ordered and bool(ext_vals[-1] < abs(eval_psi(fn, 1.0)))
    rec.boolean(c, n, "extrema-monotone", ordered)

    interior = np.linspace(0.02, 0.98, 33) * min(1.0, sp.turning)
    env = bounds.oscillation_envelope(fn, interior)
    wenv = bounds.weighted_envelope(fn, interior)
    rec.boolean(
        c, n, "envelope-monotone",
        bool(np.all(np.diff(env) > 0.0) and np.all(np.diff(wenv) < 0.0)),
    )

    # --- transformed-equation identities
    probes = np.array([-0.7, -0.3, 0.11, 0.42, 0.77])
    resid = np.abs(bounds.transformed_ode_residual(fn, probes))
    pot = np.abs(bounds.transformed_potential(fn.chi, c, probes))
    rec.positive(
        c, n, "transformed-residual",
        float(np.min(pot * 1e-7 - resid)), scale=float(np.max(pot)) * 1e-7,
    )
    if regime is Regime.ABOVE:
        rec.boolean(
            c, n, "transformed-potential-floor",
            bool(np.all(bounds.transformed_potential(chi, c, probes) > chi + 1.0)),
        )

    # --- phase solution consistency
    s_grid = np.array(
        [theta_inverse(phase, e) for e in np.linspace(0.0, n * math.pi, 4 * n + 9)]
    )
    rec.boolean(c, n, "phase-monotone", bool(np.all(np.diff(s_grid) > 0.0)))
    worst_phase = max(
        abs(phase.theta(float(t)) - (i + 0.5) * math.pi) for i, t in enumerate(sp.t)
    )
    rec.positive(c, n, "phase-at-roots", 1e-8 - worst_phase, scale=1e-8)

    mach = machinery(field)
    sample = np.linspace(1e-3, 1.0, 40) * sp.t_n
    fvals = field.f(sample)
    vvals = field.v(sample)
    rec.positive(
        c, n, "machinery-vf-cap",
        float(np.min(mach.z0 * fvals - vvals)),
        scale=float(np.max(mach.z0 * fvals)),
    )
    # the crossing always sits beyond the last root; the sharper cap x_n
    # applies when x_n is the endpoint 1 (above regime)
    crossing_ok = sp.t_n < mach.t_hat < field.cap
    if regime is Regime.ABOVE:
        crossing_ok = crossing_ok and mach.t_hat < sp.x_n
    rec.boolean(c, n, "machinery-crossing", crossing_ok)

    # oscillatory-term integrals between special points (sampled levels)
    half_up = [i for i in range(1, n) if theta_inverse(phase, i * math.pi) >= 0.0]
    for i in sorted(set(half_up[:2] + half_up[-2:])):
        pos = oscillatory_integral(phase, i * math.pi, (i + 0.5) * math.pi)
        neg = oscillatory_integral(phase, (i + 0.5) * math.pi, (i + 1.0) * math.pi)
        rec.boolean(
            c, n, "oscillatory-signs",
            pos > 0.0 > neg and (pos + neg) < 0.0, detail=f"i={i}",
        )


def run_verification(
    grid: list[tuple[float, range]] | None = None,
    chi_scale: float = 1.0,
) -> VerifyReport:
    """Run every check over the grid; chi_scale != 1 injects a fault."""
    start = time.perf_counter()
    rec = _Recorder()
    if grid is None:
        grid = default_grid()
    if grid:
        _check_global_machinery(rec)
    for c, indices in grid:
        indices = sorted(indices)
        if not indices:
            continue
        spec = build_spectrum(ProlateContext(c=c, n_max=max(indices)))
        _check_spectrum_level(rec, c, spec, indices, chi_scale)
        for n in indices:
            if n < 2:
                continue
            try:
                _check_one_index(rec, c, n, spec.function(n), chi_scale)
            except ProlateError as exc:
                rec.error(c, n, "index-checks", exc)
    return VerifyReport(outcomes=rec.outcomes, runtime=time.perf_counter() - start)
