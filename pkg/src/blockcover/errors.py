"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class BlockcoverError(Exception):
    """Base class for every error raised by this package."""


class MalformedElementError(BlockcoverError, ValueError):
    pass


class FieldDivisionError(BlockcoverError, ZeroDivisionError):
    pass


class InvalidFieldError(BlockcoverError, ValueError):
    pass


class DimensionMismatchError(BlockcoverError, ValueError):
    pass


class FieldMismatchError(BlockcoverError, ValueError):
    pass


class ZeroVectorError(BlockcoverError, ValueError):
    pass


class ResourceGuardError(BlockcoverError):
    """Enumeration would exceed the configured bound on q**(n+1)."""

    def __init__(self, size: int, bound: int):
        super().__init__(
            f"refusing to enumerate: q^(n+1) = {size} exceeds bound {bound} "
            f"(raise it with --bound)"
        )
        self.size = size
        self.bound = bound


class NotBlockingError(BlockcoverError, ValueError):
    def __init__(self, message: str, hyperplane=None):
        super().__init__(message)
        self.hyperplane = hyperplane


class NotMinimalError(BlockcoverError, ValueError):
    def __init__(self, message: str, point=None):
        super().__init__(message)
        self.point = point


class GroupError(BlockcoverError, ValueError):
    """Malformed group table, subgroup or cover."""


class PreconditionError(BlockcoverError, ValueError):
    """A hypothesis of the composition construction does not hold.

    ``hypothesis`` names the violated condition, e.g. ``"normal"``,
    ``"equal-coset-order"``, ``"prime-order"``, ``"outside-member"``,
    ``"irredundant"``, ``"minimal"``, ``"field"``.
    """

    def __init__(self, hypothesis: str, message: str):
        super().__init__(f"[{hypothesis}] {message}")
        self.hypothesis = hypothesis
