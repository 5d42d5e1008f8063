"""Exception types shared across the package."""


class DomainError(ValueError):
    """An input is outside the mathematical domain of the operation."""


class ResourceLimitError(RuntimeError):
    """An enumeration would exceed its configured size limit."""
