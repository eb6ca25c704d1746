"""Exception hierarchy shared by all modules."""


class CliffHeckeError(Exception):
    """Base class for every error raised by this package."""


class ZeroSubstitutionForLaurentVariable(CliffHeckeError, ZeroDivisionError):
    pass


class ContextMismatch(CliffHeckeError, ValueError):
    pass


class IndexOutOfRange(CliffHeckeError, IndexError):
    pass


class NotGradeOne(CliffHeckeError, ValueError):
    pass


class GradeOutOfRange(CliffHeckeError, ValueError):
    pass


class InvalidBranch(CliffHeckeError, ValueError):
    pass


class NOutOfRange(CliffHeckeError, ValueError):
    pass


class NotInSpanOfUnitAndGenerator(CliffHeckeError, ValueError):
    pass


class UnsubstitutedSymbol(CliffHeckeError, ValueError):
    pass


class BoundExceeded(CliffHeckeError, ValueError):
    pass


class ExprSyntaxError(CliffHeckeError, SyntaxError):
    """Parse failure carrying a 1-based line and column."""

    def __init__(self, message, text="", line=1, column=1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.msg = message
        self.text = text
        self.lineno = line
        self.offset = column
        self.line = line
        self.column = column

    def __str__(self):
        return f"{self.msg} (line {self.line}, column {self.column})"


class MixedProductsWithoutParens(ExprSyntaxError):
    pass
