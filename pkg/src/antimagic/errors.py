"""Exception types shared across the package."""


class NonexistentDesign(ValueError):
    """Raised when the requested array cannot exist for the given parameters."""


class ConstructionError(RuntimeError):
    """Raised when a construction route fails its own internal checks."""


class ShapeMismatch(ValueError):
    """Raised when a matrix does not fit the graph it is meant to label."""


class OutOfScope(ValueError):
    """Raised when no known construction covers the requested parameters."""


class BudgetExceeded(RuntimeError):
    """Raised when an exhaustive search would exceed its edge budget."""
