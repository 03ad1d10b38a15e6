# core/errors.py
from __future__ import annotations


class FrobsplitError(Exception):
    """Base for every domain error the engine raises."""


class FieldError(FrobsplitError, ValueError):
    """Bad characteristic, or operands living in different contexts."""


class ParseError(FrobsplitError, ValueError):
    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} at position {position}")
        self.position = position


class UnknownVariableError(FrobsplitError, ValueError):
    def __init__(self, name: str, position: int = -1) -> None:
        super().__init__(f"unknown variable '{name}'")
        self.name = name
        self.position = position


class ExponentOverflowError(FrobsplitError, OverflowError):
    pass


class FrobeniusBoundError(FrobsplitError, ValueError):
    """q = p^e outside the guard, or q not a power of p."""


class DegreeCapExceeded(FrobsplitError, RuntimeError):
    pass


class NotCompleteIntersectionError(FrobsplitError, ValueError):
    pass


class ZeroPolynomialError(FrobsplitError, ValueError):
    pass


class NotInMaximalIdealError(FrobsplitError, ValueError):
    pass


class ZeroSplittingError(FrobsplitError, ArithmeticError):
    """The restricted splitting vanishes (h̄ = 0)."""


class DegenerateFiberError(FrobsplitError, ValueError):
    pass


class UnsupportedCharacteristicError(FrobsplitError, ValueError):
    pass


class NotGenericallySplitError(FrobsplitError, ArithmeticError):
    pass


class WildRamificationError(FrobsplitError, ValueError):
    pass


class OracleMismatchError(FrobsplitError, AssertionError):
    pass


class PthRootError(FrobsplitError, ValueError):
    pass


class NotWeierstrassError(FrobsplitError, ValueError):
    pass


class BoundaryCoefficientError(FrobsplitError, ValueError):
    """A boundary coefficient is negative or (q-1)·c is not an integer."""


class ConfigError(FrobsplitError, ValueError):
    """Bad configuration value (file, environment or flag)."""
