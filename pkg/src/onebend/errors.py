"""Exception types raised across the pipeline."""


class OneBendError(Exception):
    """Base class for all library errors."""


class ValidationError(OneBendError):
    """Input document or graph violates a structural invariant."""


class EdgeCrossedTwice(ValidationError):
    pass


class AdjacentCrossing(ValidationError):
    pass


class BadRotation(ValidationError):
    pass


class DensityExceeded(ValidationError):
    pass


class NotTriangulated(OneBendError):
    pass


class CrossingOnBigFace(OneBendError):
    pass


class DegreeMismatch(OneBendError):
    pass


class NoValidConfiguration(OneBendError):
    pass


class GeometryViolation(OneBendError):
    pass


class ZeroClearance(OneBendError):
    pass


class MissingGeometry(OneBendError):
    pass


class AssertionFailure(OneBendError):
    """A lemma-backed runtime assertion failed; indicates upstream corruption."""


class ParseError(OneBendError):
    pass
