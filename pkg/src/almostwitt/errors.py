"""Exception types shared across the workbench."""


class WorkbenchError(Exception):
    pass


class StructureError(WorkbenchError, TypeError):
    """Operands live in different rings/modules, or an input is malformed."""


class IndivisibleError(WorkbenchError, ArithmeticError):
    def __init__(self, monomial, coefficient, divisor):
        self.monomial = monomial
        self.coefficient = coefficient
        self.divisor = divisor
        super().__init__(
            f"coefficient {coefficient} of monomial {monomial} is not divisible by {divisor}")


class UnsupportedError(WorkbenchError, NotImplementedError):
    pass


class LengthError(WorkbenchError, ValueError):
    pass


class PreconditionError(WorkbenchError, ValueError):
    def __init__(self, message, hypothesis=None):
        self.hypothesis = hypothesis
        super().__init__(message)


class InternalError(WorkbenchError, RuntimeError):
    pass


class InconclusiveAtWindow(WorkbenchError):
    """Raised when a finite level window cannot decide a colimit statement."""

    def __init__(self, message, window=None):
        self.window = window
        super().__init__(message)


class PrecisionError(WorkbenchError, ArithmeticError):
    pass


class ParseError(WorkbenchError, ValueError):
    def __init__(self, message, text="", pos=0, line=None, col=None):
        self.message = message
        self.text = text
        self.pos = pos
        if line is None and text:
            before = text[:pos]
            line = before.count("\n") + 1
            col = pos - (before.rfind("\n") + 1) + 1
        self.line = line
        self.col = col
        where = "" if line is None else f" (line {line}, column {col})"
        super().__init__(message + where)
