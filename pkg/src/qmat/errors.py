"""Exception hierarchy shared by every qmat module."""


class QMatError(Exception):
    """Base class for all domain errors raised by qmat."""


# fields
class NonPrimeCharacteristic(QMatError, ValueError):
    pass


class ReducibleModulus(QMatError, ValueError):
    pass


class SizeCapExceeded(QMatError, ValueError):
    pass


class DivisionByZero(QMatError, ZeroDivisionError):
    pass


class MixedFields(QMatError, ValueError):
    pass


# lattices
class LatticeTooLarge(QMatError, ValueError):
    pass


class ColumnCountMismatch(QMatError, ValueError):
    pass


class MixedLattices(QMatError, ValueError):
    pass


class SingularMatrix(QMatError, ValueError):
    pass


class NotNested(QMatError, ValueError):
    pass


class OutOfRange(QMatError, ValueError):
    pass


# q-matroids
class TableSizeMismatch(QMatError, ValueError):
    pass


class AxiomsFailed(QMatError, ValueError):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class SubspaceNotInLattice(QMatError, ValueError):
    pass


class SearchCapExceeded(QMatError, RuntimeError):
    pass


class FlagsMissing(QMatError, ValueError):
    pass


# representations
class DimensionMismatch(QMatError, ValueError):
    pass


class ElementInBaseField(QMatError, ValueError):
    pass


class WrongAmbient(QMatError, ValueError):
    pass


# files / cli
class ParseError(QMatError, ValueError):
    pass


class TooLargeForDiagram(QMatError, ValueError):
    pass
