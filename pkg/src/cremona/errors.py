"""Exception hierarchy.

Every error carries an ``exit_code`` used by the command line front end:
2 for input/validation problems, 3 for failures of a computation on valid
input.
"""


class CremonaError(Exception):
    exit_code = 2


class ValidationError(CremonaError):
    exit_code = 2


class ComputationError(CremonaError):
    exit_code = 3


class ParseError(ValidationError):
    pass


class FieldMismatch(ValidationError):
    pass


class DivisionByZero(ValidationError, ZeroDivisionError):
    pass


class DomainMismatch(ValidationError):
    pass


class ArityMismatch(ValidationError):
    pass


class DimensionMismatch(ValidationError):
    pass


class SizeMismatch(ValidationError):
    pass


class InvalidParameter(ValidationError):
    pass


class ZeroTuple(ValidationError):
    pass


class MissingInverse(ValidationError):
    pass


class NotFixed(ValidationError):
    pass


class IndeterminateAtPoint(ValidationError):
    pass


class NotLocalIso(ValidationError):
    pass


class DeterminantNotOne(ValidationError):
    pass


class UnsupportedFieldSize(ValidationError):
    pass


class UnsupportedField(ValidationError):
    pass


class DegenerateComposition(ComputationError):
    pass


class DegenerateSpecialization(ComputationError):
    pass


class FactorizationOverflow(ComputationError):
    pass


class SearchExhausted(ComputationError):
    pass


class NoSuitableAlpha(ComputationError):
    pass
