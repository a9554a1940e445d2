"""Exception types raised across the package."""


class MultitoricError(Exception):
    """Base class for all library errors."""


class CycleDetected(MultitoricError):
    pass


class IndexOutOfRange(MultitoricError):
    pass


class InvalidOrderHint(MultitoricError):
    pass


class SizeLimitExceeded(MultitoricError):
    pass


class InvalidInnerEdge(MultitoricError):
    pass


class InhomogeneousRevlex(MultitoricError):
    pass


class NotChordal(MultitoricError):
    pass


class FiberTooLarge(MultitoricError):
    pass


class PreconditionViolated(MultitoricError):
    pass


class NotInducedEvenCycle(MultitoricError):
    pass


class NotConnected(MultitoricError):
    pass


class ParseError(MultitoricError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class SunSearchLimitExceeded(UserWarning):
    """Issued (not raised) when the sun search is skipped for a large graph."""
