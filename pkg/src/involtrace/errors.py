"""Exception types raised by involtrace."""


class InvoltraceError(Exception):
    """Base class for every error raised by the library."""


class FieldError(InvoltraceError, ValueError):
    pass


class NonPrimeCharacteristic(FieldError):
    pass


class ReducibleModulus(FieldError):
    pass


class DegreeMismatch(FieldError):
    pass


class FieldMismatch(FieldError, TypeError):
    pass


class ZeroInverse(FieldError, ZeroDivisionError):
    pass


class NonDivisorDegree(FieldError):
    pass


class NoPrimitiveFound(FieldError):
    pass


class FieldSpecParseError(FieldError):
    pass


class ZeroParameter(InvoltraceError, ValueError):
    pass


class NonRealResult(InvoltraceError, ArithmeticError):
    """A character sum evaluated to a non-real number (arithmetic bug)."""


class NonIntegerCollapse(InvoltraceError, ArithmeticError):
    """An exact cyclotomic assembly failed to reduce to an integer."""


class EntropyExhausted(InvoltraceError):
    pass


class RejectionLimitExceeded(InvoltraceError):
    pass


class SearchLimitExceeded(InvoltraceError):
    pass


class OutOfDomain(InvoltraceError, ValueError):
    pass


class SizeMismatch(InvoltraceError, ValueError):
    pass


class InsufficientSamples(InvoltraceError, ValueError):
    pass
