"""Exception hierarchy. Cap violations share a base so the CLI can map them to one exit code."""


class LangWeilError(Exception):
    pass


class CapExceeded(LangWeilError):
    pass


class NonPrimeCharacteristic(LangWeilError, ValueError):
    pass


class OrderTooLarge(CapExceeded):
    pass


OrderCapExceeded = OrderTooLarge


class DivisionByZero(LangWeilError, ZeroDivisionError):
    pass


class MixedFields(LangWeilError, TypeError):
    pass


class NoEmbedding(LangWeilError, ValueError):
    pass


class ParseError(LangWeilError, ValueError):
    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


class ArityMismatch(LangWeilError, ValueError):
    pass


class DimensionMismatch(LangWeilError, ValueError):
    pass


class NotHomogeneous(LangWeilError, ValueError):
    pass


class WorkCapExceeded(CapExceeded):
    def __init__(self, estimated, cap):
        super().__init__(f"estimated work {estimated} exceeds cap {cap}")
        self.estimated = estimated
        self.cap = cap


class DegreeCapExceeded(CapExceeded):
    pass


class IntervalOverlap(LangWeilError):
    pass


class NonUnitLeading(LangWeilError, ArithmeticError):
    pass


class InsufficientOrder(LangWeilError, ArithmeticError):
    pass
