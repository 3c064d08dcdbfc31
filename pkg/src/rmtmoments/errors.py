"""Exception types shared across the package."""


class ContractViolation(ValueError):
    """An operation was called outside its documented domain."""


class BudgetExceeded(RuntimeError):
    """A brute-force computation would exceed its configured size bound."""

    def __init__(self, what: str, size: int, bound: int):
        self.what = what
        self.size = size
        self.bound = bound
        super().__init__(f"{what}: size {size} exceeds bound {bound}")


class CacheVersionError(ValueError):
    """A persisted cache file was written by an incompatible version."""
