"""Exception types shared across the package."""


class ValidationError(ValueError):
    """An input violates a documented precondition."""


class SizeLimitError(ValidationError):
    """A brute-force guard was exceeded (exponential or combinatorial blowup)."""


class DegenerateNetworkError(ValidationError):
    """The network carries no rate at all, so a requested ratio is undefined."""
