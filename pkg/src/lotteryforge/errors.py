"""Exception types raised across the package."""
from __future__ import annotations


class LotteryForgeError(Exception):
    """Base class for all package errors."""


class ParameterError(LotteryForgeError, ValueError):
    """An argument is out of range or inconsistent with another argument."""


class PreconditionError(ParameterError):
    """A construction precondition (congruence, size) does not hold.

    ``required_modulus`` is set when the failure is a violated ``N = 1 mod M``
    condition, so callers can report the modulus the user needs.
    """

    def __init__(self, message: str, required_modulus: int | None = None):
        super().__init__(message)
        self.required_modulus = required_modulus


class CapacityError(LotteryForgeError):
    """The requested search exceeds a hard size budget."""


class NonUnitError(LotteryForgeError, ArithmeticError):
    """A value that must be invertible modulo N is not."""

    def __init__(self, value: int, modulus: int):
        super().__init__(f"{value} is not a unit modulo {modulus}")
        self.value = value
        self.modulus = modulus


class StructuralError(LotteryForgeError, ValueError):
    """A set system does not have the shape an operation requires."""

    def __init__(self, message: str, block: tuple[int, ...] | None = None):
        super().__init__(message)
        self.block = block


class ParseError(LotteryForgeError, ValueError):
    """A system file could not be parsed. Carries the 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        where = f"line {line}: " if line is not None else ""
        super().__init__(where + message)
        self.line = line


class ConstructionDefect(LotteryForgeError, AssertionError):
    """A proven-correct construction produced an invalid result."""
