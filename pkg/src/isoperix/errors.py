"""Exception types shared across the package."""


class NotConvexError(ValueError):
    """Raised when an operation needs a strictly convex curve (min rho > 0)."""

    def __init__(self, min_rho: float, theta: float):
        super().__init__(
            f"curve is not strictly convex: min rho = {min_rho!r} at theta = {theta!r}"
        )
        self.min_rho = min_rho
        self.theta = theta


class ConeConditionError(ValueError):
    """Raised when inequality parameters violate a required cone condition."""


class ConsistencyError(ArithmeticError):
    """Two independent computations of the same quantity disagree."""
