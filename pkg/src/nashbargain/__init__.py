"""Exact solvers for 2-player Nash and nonsymmetric bargaining games.

The generic solver handles any game whose feasible utility set is a
polytope given by linear constraints; every quantity it returns is an
exact :class:`fractions.Fraction`. Specialized front ends cover
two-commodity flow games, bargaining over divisible goods and the
quarter-disk game.
"""
from .bargain import (
    AlphaInterval,
    AlphaRange,
    Face,
    Feasibility,
    Game2,
    NormalizedGame,
    SearchState,
    Solution,
    VerificationReport,
    alpha_range_at_point,
    check_feasible,
    compute_alpha_interval,
    compute_extremes,
    find_face_by_alpha,
    find_face_by_point,
    iteration_cap,
    kappa,
    normalize,
    solve,
    truncate,
    verify_solution,
)
from .errors import (
    BargainError,
    BargainInternalError,
    GameInputError,
    InfeasibleGameError,
    NonCompactGameError,
)
from .lp import LpOutcome, LpProblem, certificate_violations, solve_lp

__version__ = "0.1.0"

__all__ = [
    "AlphaInterval",
    "AlphaRange",
    "Face",
    "Feasibility",
    "Game2",
    "NormalizedGame",
    "SearchState",
    "Solution",
    "VerificationReport",
    "alpha_range_at_point",
    "check_feasible",
    "compute_alpha_interval",
    "compute_extremes",
    "find_face_by_alpha",
    "find_face_by_point",
    "iteration_cap",
    "kappa",
    "normalize",
    "solve",
    "truncate",
    "verify_solution",
    "BargainError",
    "BargainInternalError",
    "GameInputError",
    "InfeasibleGameError",
    "NonCompactGameError",
    "LpOutcome",
    "LpProblem",
    "certificate_violations",
    "solve_lp",
]
