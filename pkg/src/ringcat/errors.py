"""Error taxonomy shared by all modules.

Three CLI-visible buckets: configuration/validation problems, numerical
failures, and I/O. Everything raised by the library derives from
RingcatError so callers can catch one base type.
"""


class RingcatError(Exception):
    """Base class for all errors raised by this package."""


class ConfigError(RingcatError):
    """Invalid or inconsistent run configuration (aggregated message)."""


class DomainError(RingcatError):
    """An argument lies outside the operation's domain."""


class SizingError(RingcatError):
    """A requested Hilbert-space dimension exceeds the configured cap."""


class UnsupportedConfigurationError(RingcatError):
    """The requested configuration is valid but not supported by this
    operation (e.g. the 3-site flow-representation builder on non-uniform
    bonds)."""


class ContractError(RingcatError):
    """An input violates a documented precondition (e.g. an unnormalized
    state vector)."""


class ConvergenceError(RingcatError):
    """An iterative solver failed to converge."""

    def __init__(self, message: str, iterations: int | None = None):
        super().__init__(message)
        self.iterations = iterations


class BracketingError(RingcatError):
    """A scalar minimization bracket does not contain a local minimum."""


class OptimizationError(RingcatError):
    """A multistart optimization produced no converged restart."""


class NumericalIntegrityError(RingcatError):
    """A numerical invariant (norm conservation, residual bound,
    variational bound) was violated at runtime."""
