"""Exception types shared across the package."""


class BlockforestError(Exception):
    pass


class DomainError(BlockforestError, ValueError):
    """Input outside the domain of an operation (bad distribution, zero constant term, ...)."""


class OrderMismatchError(BlockforestError, ValueError):
    """Two series with different truncation orders were combined."""


class StructureError(BlockforestError, ValueError):
    """A block set does not describe a valid Husimi graph."""


class DecodeError(BlockforestError, ValueError):
    """A Pruefer-type code is internally inconsistent."""


class OracleLimitError(BlockforestError, ValueError):
    """Requested size is above the configured brute-force limit."""


class ConsistencyError(BlockforestError, AssertionError):
    """Two independent computation routes disagree.

    Raised when a published recurrence and the functional equation it was
    derived from give different coefficients.
    """
