"""Exception hierarchy shared by every module of the engine."""


class CRJetError(Exception):
    """Base class for all engine errors."""


class InputError(CRJetError):
    """Problem input is malformed or violates a structural precondition."""


class BudgetError(CRJetError):
    """A computation needs more jet order or search depth than supplied."""


class VariableMismatch(InputError):
    pass


class NotAUnit(CRJetError):
    pass


class OrderTooLow(BudgetError):
    def __init__(self, needed, have, what="jet order"):
        self.needed = needed
        self.have = have
        super().__init__(f"{what} too low: need {needed}, have {have}")


class NotReal(InputError):
    pass


class NotCharacteristic(InputError):
    pass


class NotHolomorphic(InputError):
    pass


class DegenerateCoframe(InputError):
    pass


class NotAnnihilated(CRJetError):
    pass


class OutOfTable(BudgetError):
    pass


class SizeMismatch(InputError):
    pass


class DepthExceeded(BudgetError):
    pass


class NotElliptic(CRJetError):
    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


class PoleAtXi(CRJetError):
    pass


class NotDivisible(CRJetError):
    pass


class FlatInput(CRJetError):
    pass


class ParseError(InputError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)


class ExpressionSyntaxError(ParseError):
    def __init__(self, line, column, expected):
        self.expected = expected
        super().__init__(f"syntax error: expected {expected}", line, column)


class UnknownVariable(ParseError):
    def __init__(self, name, line=None, column=None):
        self.name = name
        super().__init__(f"unknown variable {name!r}", line, column)
