"""Exception hierarchy.

Every error raised for bad input derives from :class:`CoherenceError`, which
the CLI maps to exit code 2.
"""


class CoherenceError(ValueError):
    pass


class NotHermitianError(CoherenceError):
    pass


class NotPositiveError(CoherenceError):
    pass


class TraceNotOneError(CoherenceError):
    pass


class NotNormalizedError(CoherenceError):
    pass


class DimMismatchError(CoherenceError):
    pass


class RankOutOfRangeError(CoherenceError):
    pass


class IndexOrderError(CoherenceError):
    pass


class IndexOutOfRangeError(CoherenceError):
    pass


class OutOfRangeError(CoherenceError):
    pass


class BadObjectiveError(CoherenceError):
    pass


class NotIsometryError(CoherenceError):
    pass


class NotCompleteError(CoherenceError):
    pass


class ShapeMismatchError(CoherenceError):
    pass


class AncillaTooSmallError(CoherenceError):
    pass


class ChannelNotIncoherentError(CoherenceError):
    pass


class BadParamsError(CoherenceError):
    pass


class FormatError(CoherenceError):
    pass
