"""Exception types raised across the package."""


class QGroupoidError(Exception):
    pass


class MismatchedField(QGroupoidError):
    pass


class DivisionByZero(QGroupoidError, ZeroDivisionError):
    pass


class UnsupportedIndex(QGroupoidError):
    pass


class TooManyStrands(QGroupoidError):
    pass


class ActionMismatch(QGroupoidError):
    pass


class IllDefined(QGroupoidError):
    """A formula evaluated on representatives did not descend to the quotient."""


class InvalidGroupoid(QGroupoidError):
    pass


class EmbeddingFailure(QGroupoidError):
    pass


class BaseMismatch(QGroupoidError):
    pass


class NotSingleBlock(QGroupoidError):
    pass


class InconsistentRanks(QGroupoidError):
    pass


class FloorMismatch(QGroupoidError):
    pass


class NoSolution(QGroupoidError):
    pass


class NotInSpan(QGroupoidError):
    pass
