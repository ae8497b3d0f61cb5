"""Turning-point connection toolkit for eps^2 x'' + mu(t) x = 0.

Thin Python layer over the C++ core: problem specs, Airy evaluation, the
uniform three-interval approximant, the reference integrator, Bohr-Sommerfeld
eigenvalues, and the validation criteria.
"""

from ._tpwkb import (
    AiryQuad,
    ApproxValue,
    CriterionResult,
    Direction2,
    EigenResult,
    LogScaledState,
    ProblemSpec,
    action,
    airy_eval,
    bs_energies,
    direction_angle_distance,
    eigen_compare,
    ell_riccati_coeffs,
    hyp_riccati_coeffs,
    integrate,
    reference_energies,
    run_criteria,
    turning_points,
    uniform_wu_solution,
    wu_direction,
)

__all__ = [
    "AiryQuad",
    "ApproxValue",
    "CriterionResult",
    "Direction2",
    "EigenResult",
    "LogScaledState",
    "ProblemSpec",
    "action",
    "airy_eval",
    "bs_energies",
    "direction_angle_distance",
    "eigen_compare",
    "ell_riccati_coeffs",
    "hyp_riccati_coeffs",
    "integrate",
    "reference_energies",
    "run_criteria",
    "turning_points",
    "uniform_wu_solution",
    "wu_direction",
]
