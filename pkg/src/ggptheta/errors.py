"""Exception hierarchy. Everything a caller can trigger by bad input derives from UsageError."""


class UsageError(ValueError):
    pass


class FieldMismatchError(UsageError):
    pass


class MalformedParameterError(UsageError):
    pass


class ClassificationError(UsageError):
    def __init__(self, message, reason=None):
        super().__init__(message)
        self.reason = reason


class UnsupportedConstituentError(UsageError):
    pass


class DomainError(UsageError):
    pass


class NonGenericError(UsageError):
    def __init__(self, message, pole=None):
        super().__init__(message)
        self.pole = pole


class DSLSyntaxError(UsageError):
    def __init__(self, message, offset):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset


class SnapError(ArithmeticError):
    """A floating value is not close enough to any element of the exact ring."""


class InconsistentValueError(ArithmeticError):
    """An exact computation produced a value outside the set the theory allows (e.g. a root number not in {+1, -1})."""
