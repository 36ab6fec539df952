"""Exception types shared by every module in the package."""

from __future__ import annotations


class FrameToolError(Exception):
    """Base class for all errors raised by framemult."""


class DimensionMismatch(FrameToolError):
    """Operands have incompatible dimensions or lengths."""


class NotHermitian(FrameToolError):
    """A matrix expected to be Hermitian deviates beyond tolerance."""


class NotInvertible(FrameToolError):
    """A matrix failed the condition-number invertibility test.

    Carries the extreme singular values so callers can report how close
    the matrix came to the threshold.
    """

    def __init__(self, message: str, sigma_min: float = 0.0, sigma_max: float = 0.0):
        super().__init__(message)
        self.sigma_min = float(sigma_min)
        self.sigma_max = float(sigma_max)

    @property
    def sigma_ratio(self) -> float:
        """sigma_min / sigma_max, or 0.0 for the zero matrix."""
        if self.sigma_max == 0.0:
            return 0.0
        return self.sigma_min / self.sigma_max


class NotAFrame(FrameToolError):
    """The vector sequence does not span, so frame bounds do not exist."""


class NotEquivalent(FrameToolError):
    """No invertible operator maps one sequence onto the other, vector by vector.

    ``reason`` is ``"no_linear_map"`` when no linear operator achieves the
    mapping at all, or ``"not_invertible"`` when one exists but is singular.
    """

    def __init__(self, message: str, reason: str = "no_linear_map", residual: float | None = None):
        super().__init__(message)
        self.reason = reason
        self.residual = residual


class ZeroSymbolEntry(FrameToolError):
    """A weight sequence contains an exact zero where a reciprocal is needed."""


class NotADual(FrameToolError):
    """The supplied sequence is not a dual (or pseudo-dual) of the reference frame."""


class IdentityDoesNotHold(FrameToolError):
    """An operator identity assumed by a recovery check fails beyond tolerance."""

    def __init__(self, message: str, residual: float | None = None):
        super().__init__(message)
        self.residual = residual


class ImplicationViolated(FrameToolError):
    """A logical implication that must hold between computed booleans failed.

    This signals an implementation bug, not a property of the input data.
    """


class PreconditionFailed(FrameToolError):
    """Input data does not satisfy a documented precondition of the check."""


class MetadataMissing(FrameToolError):
    """No closed-form metadata is available and the finite horizon is inconclusive."""


class RatioNotCertified(FrameToolError):
    """The declared geometric tail ratio is >= 1 or fails the prefix spot check."""


class ParseError(FrameToolError):
    """Malformed JSON input (structure, types, or values)."""


class UnknownExample(FrameToolError):
    """Requested name is not in the example registry."""
