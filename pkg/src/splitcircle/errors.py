"""Exception types raised across the package."""


class SplitCircleError(Exception):
    """Base class for all package errors."""


class InvalidVertex(SplitCircleError):
    pass


class NotAnEdge(SplitCircleError):
    pass


class FactorTooSmall(SplitCircleError):
    pass


class NotSplit(SplitCircleError):
    pass


class NotDecomposable(SplitCircleError):
    pass


class WrongCase(SplitCircleError):
    pass


class InvalidParameter(SplitCircleError):
    pass


class NoScript(SplitCircleError):
    pass


class NotDoubleOccurrence(SplitCircleError):
    pass


class InvalidState(SplitCircleError):
    pass


class TooLarge(SplitCircleError):
    pass


class InternalInconsistency(SplitCircleError):
    """A structural guarantee failed; indicates a bug, not bad input."""


class ParseError(SplitCircleError):
    pass


class ForbiddenFound(SplitCircleError):
    """A partition step met a configuration that only occurs in non-circle graphs."""
