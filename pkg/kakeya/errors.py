class KakeyaError(Exception):
    "Base class of every error raised by the kakeya package."


class DegenerateShape(KakeyaError):
    "Raised when a computation needs interior (positive area or volume) and the shape has none."


class InvalidDirection(KakeyaError):
    "Raised when a support direction is the zero vector."


class DimensionMismatch(KakeyaError):
    "Raised when shapes, rotations or vectors of different dimensions are combined."


class InvalidParameter(KakeyaError, ValueError):
    "Raised when a numeric parameter lies outside its admissible range."


class InvalidShape(KakeyaError, ValueError):
    "Raised when a carrier cannot represent a convex body (non-convex, non-finite, malformed)."


class NumericalFailure(KakeyaError):
    "Raised when the simplex solver breaks down; ``diagnostics`` describes the state."

    def __init__(self, message: str, diagnostics: dict | None = None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class Unbounded(KakeyaError):
    "Raised when a body that must be bounded is not."


class NotAMuPolygon(KakeyaError):
    "Raised when a polygon has an edge normal outside the normals of the regular mu-gon."


class NotClosed(KakeyaError):
    "Raised when a mu-vector's edges do not close up into a polygon."


class UnsupportedCertification(KakeyaError):
    "Raised when a certified sweep is requested outside the plane."


class UnknownScenario(KakeyaError):
    "Raised when a reproduction scenario or verification suite name is not known."


class ShapeParseError(KakeyaError):
    "Raised when a JSON shape document cannot be decoded; ``offset`` is a byte offset."

    def __init__(self, message: str, offset: int | None = None):
        super().__init__(message)
        self.offset = offset
