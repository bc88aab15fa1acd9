"""Exception types shared across the package."""


class DomainError(ValueError):
    """An input lies outside the domain of the requested operation."""


class RamifiedPrimeError(DomainError):
    """The prime divides the discriminant of a configuration polynomial."""


class DepthCapExceeded(RuntimeError):
    """Local search went deeper than its proven bound; an invariant is broken."""


class SearchLimitError(RuntimeError):
    """An enumeration bound is too large to search in reasonable time."""
