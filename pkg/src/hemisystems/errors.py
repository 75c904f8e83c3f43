"""Exception hierarchy."""


class HemisystemError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInput(HemisystemError, ValueError):
    pass


class NonPrime(InvalidInput):
    pass


class BadCongruence(InvalidInput):
    pass


class InvalidD0(InvalidInput):
    pass


class NotADivisor(InvalidInput):
    pass


class LevelMismatch(InvalidInput):
    pass


class NotInSubfield(InvalidInput):
    pass


class ZeroInput(InvalidInput):
    pass


class DivisionByZero(HemisystemError, ZeroDivisionError):
    pass


class BudgetExceeded(HemisystemError):
    pass


class TableBudgetExceeded(BudgetExceeded):
    pass


class NoPrimitivePolynomialFound(HemisystemError, AssertionError):
    pass


class CollisionDetected(HemisystemError, AssertionError):
    pass


class ScalarOrbitNotClosed(HemisystemError, AssertionError):
    pass


class NonIntegerCharacterValue(HemisystemError, AssertionError):
    pass


class NotApplicable(HemisystemError):
    pass


class VerificationFailure(HemisystemError):
    def __init__(self, check, message, witness=None):
        super().__init__(f"{check}: {message}")
        self.check = check
        self.witness = witness
