"""Exception hierarchy shared by the hyperlap modules."""


class HyperlapError(Exception):
    """Base class for all library errors."""


class GeometryError(HyperlapError, ValueError):
    """A point or coordinate tuple violates the hyperboloid model."""


class ConvergenceError(HyperlapError, ArithmeticError):
    """A series or quadrature failed to reach its tolerance.

    ``best`` carries the last partial sum (or best estimate) and ``error``
    its estimated absolute error, so callers can still inspect them.
    """

    def __init__(self, message, best=float("nan"), error=float("inf")):
        super().__init__(message)
        self.best = best
        self.error = error


class KernelError(HyperlapError):
    """Kernel evaluation failed."""


class RouteUnavailable(KernelError):
    """The requested evaluation route is outside its domain of validity."""


class SingularityError(KernelError, ValueError):
    """Evaluation requested at (or too close to) the pole of the kernel."""
