"""Certified theta-function evaluation and vanishing-theta-null stratum tests.

Thin re-export of the compiled core.  Characteristics are strings of the form
"eps/del" (two rows of g bits, e.g. "10010/10110"), period matrices are
complex numpy arrays validated on entry, and the analysis entry points
(`stratum`, `genus5_verdict`) return plain dicts mirroring the CLI JSON
reports.  Input errors raise ValueError; numerical failures (non-convergent
series, points off the divisor, ...) raise ArithmeticError.
"""

from ._core import (
    __version__,
    bordered_gauss,
    boundary_stratum_check,
    characteristics,
    find_divisor_point,
    gauss_diff_rank,
    gauss_map,
    genus5_verdict,
    is_even,
    null_candidate,
    numerical_rank,
    random_siegel,
    reduce_argument,
    sign,
    stratum,
    theta,
    theta_constants,
    theta_jet,
    two_torsion_point,
    validate_period_matrix,
    vanishing_nulls,
)

__all__ = [
    "__version__",
    "bordered_gauss",
    "boundary_stratum_check",
    "characteristics",
    "find_divisor_point",
    "gauss_diff_rank",
    "gauss_map",
    "genus5_verdict",
    "is_even",
    "null_candidate",
    "numerical_rank",
    "random_siegel",
    "reduce_argument",
    "sign",
    "stratum",
    "theta",
    "theta_constants",
    "theta_jet",
    "two_torsion_point",
    "validate_period_matrix",
    "vanishing_nulls",
]
