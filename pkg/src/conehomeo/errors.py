"""Exception hierarchy.  Every library error derives from ConeHomeoError."""


class ConeHomeoError(ValueError):
    pass


# piecewise-linear maps
class NonMonotone(ConeHomeoError):
    pass


class EmptyDomain(ConeHomeoError):
    pass


class OutOfDomain(ConeHomeoError):
    pass


class DomainMismatch(ConeHomeoError):
    pass


class NonPositiveR(ConeHomeoError):
    pass


class InvalidK(ConeHomeoError):
    pass


# bases
class WrongGraph(ConeHomeoError):
    pass


class NonPL(ConeHomeoError):
    pass


class InvalidGraph(ConeHomeoError):
    pass


# charts
class WrongBase(ConeHomeoError):
    pass


class AmbientMismatch(ConeHomeoError):
    pass


class InvalidChart(ConeHomeoError):
    pass


class OffsetTooLarge(ConeHomeoError):
    pass


class TargetTooShallow(ConeHomeoError):
    pass


# swindle / promotion
class NotInterlaced(ConeHomeoError):
    pass


class NotKInterlaced(NotInterlaced):
    pass


class NoSlack(ConeHomeoError):
    pass


class InvalidR(ConeHomeoError):
    pass


class OutsideChart(ConeHomeoError):
    pass


class ShiftOutOfRange(ConeHomeoError):
    pass


class TowerBoundExceeded(ConeHomeoError):
    pass


# moves
class VertexInput(ConeHomeoError):
    pass


class Unsupported(ConeHomeoError):
    pass


class BaseTooSmall(ConeHomeoError):
    pass


class EndpointInF(ConeHomeoError):
    pass


class NoDetour(ConeHomeoError):
    pass


class ChainBroken(ConeHomeoError):
    pass


class ChartMeetsF(ConeHomeoError):
    pass


class DuplicatePoint(ConeHomeoError):
    pass


class UnsupportedAmbient(ConeHomeoError):
    pass


# scenarios
class ParseError(ConeHomeoError):
    def __init__(self, message, line=None, column=None):
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)
        self.line = line
        self.column = column


class UnknownReference(ConeHomeoError):
    def __init__(self, name, kind="chart"):
        super().__init__(f"unknown {kind} reference {name!r}")
        self.name = name


class CommandFailed(ConeHomeoError):
    pass
