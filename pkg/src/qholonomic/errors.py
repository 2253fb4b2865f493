"""Exception taxonomy for the whole package.

Two families matter to callers: InputError means an argument, file, or
parameter was malformed before any real work started (CLI exit code 1);
ComputeError means a value turned out to be unusable mid-computation,
such as a vanishing leading coefficient or a pole hit by an evaluation
point (CLI exit code 2).
"""


class QHolonomicError(Exception):
    """Base class for every error raised by this package."""


class InputError(QHolonomicError):
    """Malformed argument, parameter, or input file."""


class ComputeError(QHolonomicError):
    """A computation became impossible at some concrete index or point."""


# ---------------------------------------------------------------- input


class ParameterDomain(InputError):
    """A numeric parameter lies outside its documented domain."""


class CompositeN(InputError):
    """A number required to be prime is not."""


class ContextMismatch(InputError):
    """Operands belong to different field contexts."""


class DimensionMismatch(InputError):
    """Matrix dimensions are incompatible."""


class ZeroRatio(InputError):
    """The geometric ratio Q of a chirp evaluation is zero."""


class IndexOutOfRange(InputError):
    """An index argument violates its documented range."""


class ArityMismatch(InputError):
    """A recurrence has the wrong number of coefficients or initials."""


class ZeroLeadingCoefficient(InputError):
    """The leading recurrence coefficient c_r is identically zero."""


class UnsortedIndices(InputError):
    """terms_multi requires strictly increasing non-negative indices."""


class TooManyIndices(InputError):
    """terms_multi allows at most floor(sqrt(max index)) indices."""


class ParseError(InputError):
    """A recurrence or system file failed to parse; message has context."""


class BadPrime(InputError):
    """The prime divides q's numerator/denominator or a leading content."""


# -------------------------------------------------------------- compute


class ZeroInversion(ComputeError):
    """Attempted to invert zero."""


class DegenerateLeading(ComputeError):
    """c_r(q, y) is identically zero after specializing x = q."""


class SingularLeading(ComputeError):
    """c_r(q, q^k) = 0 at the reported index k."""

    def __init__(self, index: int, message: str | None = None):
        self.index = index
        super().__init__(message or f"leading coefficient vanishes at k={index}")


class NonInvertibleBracket(ComputeError):
    """Some q-bracket [k]_q is zero, so the q-exponential is undefined."""


class NonInvertibleDenominator(ComputeError):
    """A q-factorial in a Gaussian binomial denominator is zero mod p."""


class PoleHit(ComputeError):
    """A system denominator vanishes at the reported factor index k."""

    def __init__(self, index: int, message: str | None = None):
        self.index = index
        super().__init__(message or f"denominator vanishes at factor index k={index}")
