"""Exception hierarchy shared by every orbikit module."""


class OrbikitError(Exception):
    """Base class for all errors raised by orbikit."""


class EmptyInput(OrbikitError):
    pass


class InvalidComplex(OrbikitError):
    pass


class InvalidAction(OrbikitError):
    pass


class ActionNotSimplicial(InvalidAction):
    pass


class NoSuchVertex(OrbikitError):
    pass


class InvalidTable(OrbikitError):
    pass


class NotAChainComplex(OrbikitError):
    pass


class TruncationError(OrbikitError):
    """A statement was requested above the valid degree of a truncated model."""


class TruncationTooLow(TruncationError):
    pass


class TruncationMismatch(TruncationError):
    pass


class OrderBoundExceeded(OrbikitError):
    pass


class Disconnected(OrbikitError):
    pass


class BoundExceeded(OrbikitError):
    pass


class InfiniteOrUnresolvedPi1(OrbikitError):
    pass


class UnresolvedPi1(InfiniteOrUnresolvedPi1):
    pass


class NotEquivariant(OrbikitError):
    pass


class NotSimplicial(OrbikitError):
    """A putative simplicial map does not commute with face operators."""


class CheckFailed(OrbikitError):
    pass


class InconsistentSpec(OrbikitError):
    pass


class ExplicitFormUnsupported(OrbikitError):
    pass


class ParseError(OrbikitError):
    def __init__(self, message, line=None, field=None):
        self.line = line
        self.field = field
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field:
            where.append(field)
        super().__init__(f"{', '.join(where)}: {message}" if where else message)


class UnresolvedName(ParseError):
    pass
