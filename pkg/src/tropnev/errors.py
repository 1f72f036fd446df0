"""Exception hierarchy shared by all tropnev modules."""

from __future__ import annotations


class TropError(Exception):
    """Base class for every error raised by tropnev."""


# scalar arithmetic
class DivisionByBottom(TropError, ZeroDivisionError):
    pass


class UndefinedPower(TropError, ValueError):
    pass


# piecewise-linear functions
class OutOfWindow(TropError, ValueError):
    pass


class WindowMismatch(TropError, ValueError):
    pass


class WindowTooSmall(TropError, ValueError):
    pass


class AllBottom(TropError, ValueError):
    pass


class WindowedForm(TropError, ValueError):
    pass


class BottomConstantError(TropError, ValueError):
    pass


class InconsistentGenerator(TropError, ValueError):
    pass


# linear algebra
class TooLarge(TropError, ValueError):
    pass


class TooSmall(TropError, ValueError):
    pass


class SingularMatrix(TropError, ValueError):
    pass


class DimensionMismatch(TropError, ValueError):
    pass


class NotSquareFamily(TropError, ValueError):
    pass


class TooFew(TropError, ValueError):
    pass


# curves and functionals
class NotReduced(TropError, ValueError):
    pass


class DegenerateComposition(TropError, ValueError):
    pass


class AllBottomWitness(TropError, ValueError):
    pass


class ZeroCharacteristic(TropError, ValueError):
    pass


# harness
class NonConstant(TropError, AssertionError):
    """A quantity that must be exactly r-independent was not."""


class NotGeneralPosition(TropError, ValueError):
    pass


class DegenerateCurve(TropError, ValueError):
    pass


class WindowedCurve(TropError, ValueError):
    pass


class NotComplete(TropError, ValueError):
    pass


class DuplicateValues(TropError, ValueError):
    pass


class NoIndependentSubset(TropError, ValueError):
    pass


# parsing and io
class ScenarioSyntaxError(TropError, SyntaxError):
    def __init__(self, message: str, line: int = 1, col: int = 1, text: str | None = None):
        super().__init__(f"{message} (line {line}, col {col})")
        self.message = message
        self.line = line
        self.col = col
        self.text = text
        self.lineno = line
        self.offset = col

    def __str__(self) -> str:
        return self.args[0]


class UnknownName(TropError, KeyError):
    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "unknown name"


class ValidationErrors(TropError, ValueError):
    """Aggregated scenario validation problems."""

    def __init__(self, problems: list[str]):
        super().__init__("; ".join(problems))
        self.problems = list(problems)


class MissingBundle(TropError, FileNotFoundError):
    pass
