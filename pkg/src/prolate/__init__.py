"""Numerics for prolate spheroidal wave functions of order zero.

The package covers: the eigenvalues chi_n and eigenfunctions psi_n of the
prolate differential operator with band limit c (``core``), elliptic
integrals (``elliptic``), the modified Pruefer phase of the oscillation
region (``prufer``), roots and extrema of psi_n (``roots``), explicit
two-sided bounds on eigenvalues, root locations and endpoint values
(``bounds``), golden reference tables/figures as CSV (``tables``), and a
grid verification harness (``verify``, CLI ``prolate``).
"""

from .bounds import (
    BoundReport,
    HFunction,
    TnBracket,
    chi_bounds_suite,
    chi_lower_alpha,
    chi_square_upper,
    count_above,
    count_below,
    crude_chi_bracket,
    endpoint_bounds,
    h_inverse,
    h_map,
    regime_classify,
    spacing_bracket,
    tn_bracket,
    transformed_ode_residual,
)
from .core import (
    IntegralEigenvalue,
    ProlateContext,
    ProlateSpectrum,
    PswfFunction,
    build_spectrum,
    chi_sequence,
    eval_dpsi,
    eval_psi,
    integral_eigenvalue,
    mu_count,
)
from .elliptic import ellint_E, ellint_Ec, ellint_F, ellint_Fc
from .errors import (
    ConsistencyError,
    ConvergenceError,
    DegenerateEvaluationError,
    DivergenceError,
    DomainError,
    ProlateError,
)
from .prufer import (
    PhaseField,
    PhaseSolution,
    PruferMachinery,
    machinery,
    phase_f,
    phase_v,
    solve_theta,
    theta_inverse,
)
from .roots import (
    Regime,
    SpacingReport,
    SpecialPoints,
    psi_roots,
    spacing_report,
    special_points,
)
from .tables import FIGURE_IDS, TABLE_IDS, fortran_sci, reproduce_figure, reproduce_table
from .verify import VerifyReport, default_grid, run_verification

__version__ = "0.1.0"
