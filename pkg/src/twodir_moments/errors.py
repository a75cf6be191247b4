"""Exception types raised by the package."""


class MomentError(Exception):
    """Base class for all errors raised here."""


class ConditionEError(MomentError):
    """The eigenvalue-1 prerequisite of a moment recursion does not hold."""


class EigenvalueError(MomentError):
    """The eigenvalue iteration did not converge."""


class SingularSystemError(MomentError):
    def __init__(self, message: str, pivot: float):
        super().__init__(f"{message} (smallest pivot {pivot:.3e})")
        self.pivot = pivot


class ExprError(MomentError, ValueError):
    def __init__(self, message: str, position: int | None = None):
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)
        self.position = position


class MaskFormatError(MomentError):
    """A mask file could not be read, parsed or validated."""
