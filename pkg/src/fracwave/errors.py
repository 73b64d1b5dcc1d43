"""Exception types shared across the package."""


class FracwaveError(Exception):
    """Base class for all package-specific errors."""


class NonConvergent(FracwaveError):
    """A series or quadrature could not be certified to the requested tolerance.

    Raised when the Wright-series truncation bound cannot reach ``tol``
    within the configured term cap, when the double-precision roundoff
    floor exceeds ``tol`` (cancellation-dominated regime), or when an
    adaptive quadrature fails to meet its budget.
    """


class UnstableGrid(FracwaveError):
    """The finite-difference grid violates the scheme's stability predicate."""


class DeltaNotRepresentable(FracwaveError):
    """A delta signal cannot be placed on the grid as 1/dx at a single node."""


class ScenarioError(FracwaveError):
    """A scenario description failed validation."""
