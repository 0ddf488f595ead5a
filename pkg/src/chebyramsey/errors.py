"""Exception hierarchy shared by every module of the package."""


class ChebyRamseyError(Exception):
    """Base class for all errors raised by chebyramsey."""


class NonPositiveSide(ChebyRamseyError, ValueError):
    pass


class TriangleInequalityViolated(ChebyRamseyError, ValueError):
    pass


class DegenerateTriangleUnsupported(ChebyRamseyError, ValueError):
    pass


class NonPositiveScale(ChebyRamseyError, ValueError):
    pass


class DuplicatePoint(ChebyRamseyError, ValueError):
    pass


class ZeroDistance(ChebyRamseyError, ValueError):
    pass


class ZeroDistanceWithNonemptyColoring(ChebyRamseyError, ValueError):
    """0 is in the distance set, so every point clashes with itself."""


class WindowTooSmall(ChebyRamseyError, ValueError):
    pass


class NoColoringWithinBudget(ChebyRamseyError):
    def __init__(self, message, best_k=None):
        super().__init__(message)
        self.best_k = best_k


class DegenerateDiagonalRoute(ChebyRamseyError, ValueError):
    pass


class EmptyGrid(ChebyRamseyError, ValueError):
    pass


class UndecidableForOpaqueColoring(ChebyRamseyError, TypeError):
    pass


class UnlabeledInput(ChebyRamseyError, ValueError):
    pass


class PairDoesNotMatchCase(ChebyRamseyError, ValueError):
    pass


class HypothesisViolated(ChebyRamseyError, ValueError):
    pass


class BudgetExhausted(ChebyRamseyError):
    def __init__(self, message, best_observed=None):
        super().__init__(message)
        self.best_observed = best_observed


class NonIntegralSides(ChebyRamseyError, ValueError):
    pass


class ProductNotCopyFree(ChebyRamseyError):
    def __init__(self, message, copy=None):
        super().__init__(message)
        self.copy = copy


class ParseError(ChebyRamseyError, ValueError):
    """Malformed input; ``line``/``column`` are 1-based when known."""

    def __init__(self, message, line=None, column=None):
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
        self.line = line
        self.column = column
