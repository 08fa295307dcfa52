"""Exception hierarchy shared by the library and the command-line tool."""


class OrderMotionError(Exception):
    """Base class for all library errors."""


class PreconditionError(OrderMotionError, ValueError):
    """An operation was called on inputs that violate its contract."""


class DimensionMismatchError(PreconditionError):
    """Points or tuples with inconsistent dimensions."""


class ShapeMismatchError(PreconditionError):
    """Order types or tuples with different (n, d) shapes."""


class DegenerateTupleError(PreconditionError):
    """A tuple required to be in general position has a degenerate subset."""

    def __init__(self, message: str, subset: tuple[int, ...] | None = None):
        super().__init__(message)
        self.subset = subset


class ParityError(PreconditionError):
    """A diagonal scaling with an odd number of negative entries."""


class ZeroPolynomialError(PreconditionError):
    """The zero polynomial was passed where a nonzero one is required."""


class EndpointRootError(PreconditionError):
    """A polynomial vanishes at an interval endpoint where it must not."""


class OrderTypeMismatchError(PreconditionError):
    """Two tuples required to share an order type do not."""


class RetryBudgetError(OrderMotionError):
    """A deterministic retry scheme exhausted its budget."""


class InternalInvariantError(OrderMotionError):
    """A guarantee the library promises was violated; signals a bug."""
