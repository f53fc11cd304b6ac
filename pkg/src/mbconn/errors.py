"""Exception hierarchy shared by the parser, the engines and the CLI."""

from __future__ import annotations


class MbconnError(Exception):
    """Base class for every error raised by this package."""


class MBCError(MbconnError, ValueError):
    """An MBC document was rejected."""


class MalformedSyntax(MBCError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class InvalidNode(MbconnError, ValueError):
    pass


class InvalidPatch(MbconnError, ValueError):
    """An interface patch violates its invariants against a grid."""


# The patch-level failures double as parse errors so that the parser and the
# pair expansion report them under one class name.
class UnknownBlockId(MBCError, InvalidPatch):
    pass


class RangeOutOfBounds(MBCError, InvalidPatch):
    pass


class BadTransform(MBCError, InvalidPatch):
    pass


class ExtentMismatch(MBCError, InvalidPatch):
    pass


class InvalidSpec(MbconnError, ValueError):
    pass


class InsufficientPoints(MbconnError, ValueError):
    pass


class EngineFailure(MbconnError, RuntimeError):
    pass
