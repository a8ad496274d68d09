"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes, so keep the hierarchy shallow.
"""


class IsopadeError(Exception):
    """Base class for all package errors."""


class UsageError(IsopadeError, ValueError):
    """Caller passed arguments that violate an operation's preconditions."""


class ParseError(UsageError):
    """Malformed serialized input (rational strings, JSON payloads)."""


class SingularInputError(IsopadeError, ArithmeticError):
    """A required inverse does not exist (zero constant term, zero pivot)."""


class NonGenericError(IsopadeError):
    """The input sits on the exceptional locus the constructions exclude."""


class BreakdownError(NonGenericError):
    """Vector continued fraction step with a vanishing constant term."""

    def __init__(self, message, step=None, index=None):
        super().__init__(message)
        self.step = step
        self.index = index


class ParameterError(NonGenericError):
    """Hypergeometric parameters hit a pole or a resonance."""


class InvariantViolation(IsopadeError, AssertionError):
    """An identity that must hold exactly was found to fail."""
