"""Exception hierarchy shared by every module of the package."""


class WSNError(Exception):
    """Base class for all errors raised by wsnlife."""


class InvalidSizeError(WSNError, ValueError):
    pass


class DomainError(WSNError, ValueError):
    """An argument lies outside the domain of a function (r <= 0, i == j, ...)."""


class ResourceLimitError(WSNError):
    pass


class BoundaryNodeError(WSNError, ValueError):
    pass


class InterferenceSetError(WSNError, ValueError):
    pass


class ApproximationDomainError(WSNError, ValueError):
    pass


class ConsistencyError(WSNError, ValueError):
    """A schedule or plan refers to nodes or links the network does not have."""


class NotScaleInvariantError(WSNError, ValueError):
    pass


class ClosedFormInapplicableError(WSNError):
    """A closed-form duration or weight came out negative; use the LP oracle."""


class UndeliverableError(WSNError):
    pass


class InfeasibleError(WSNError):
    """The LP has no feasible point.

    ``certificate`` holds a Farkas vector y (one entry per equality row of the
    standard-form problem) with y.A <= 0 and y.b > 0, when one is available.
    """

    def __init__(self, message, certificate=None):
        super().__init__(message)
        self.certificate = certificate


class UnboundedError(WSNError):
    pass


class SolverError(WSNError):
    """The simplex result failed its own optimality certificate."""


class ConfigError(WSNError, ValueError):
    """Malformed or inconsistent run configuration."""
