from __future__ import annotations


class BargainError(Exception):
    """Base class for every error raised by this package."""


class GameInputError(BargainError, ValueError):
    """The instance is malformed or violates a precondition."""


class NonCompactGameError(GameInputError):
    """The feasible utility set is unbounded, so it is not a bargaining game."""


class InfeasibleGameError(BargainError):
    """No utility pair strictly dominates the disagreement point.

    ``diagnostic`` carries whatever the failing test computed (the optimum
    of the feasibility LP, or the sweep indices of a market).
    """

    def __init__(self, message: str, **diagnostic):
        super().__init__(message)
        self.diagnostic = diagnostic


class BargainInternalError(BargainError, RuntimeError):
    """An invariant that the theory guarantees did not hold (a bug)."""
