"""Exception hierarchy shared by every module of the package."""


class PolyaError(Exception):
    """Base class for all errors raised by polya_bernstein."""


class InvalidInputError(PolyaError, ValueError):
    """Arguments violate a documented precondition."""


class DegenerateParametersError(PolyaError, ValueError):
    """The urn normalizing constant vanishes."""


class DomainError(PolyaError, ValueError):
    """A point lies outside the domain of the function being evaluated."""


class TooLargeError(PolyaError, ValueError):
    """A brute-force computation was asked to exceed its size cap."""


class ModeError(PolyaError, TypeError):
    """Exact rationals and floats were mixed in a single computation."""


class GenerationFailure(PolyaError, RuntimeError):
    """A rejection sampler ran out of retries."""


class InternalInconsistencyError(PolyaError, RuntimeError):
    """A mathematically guaranteed condition failed to hold."""
