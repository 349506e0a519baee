"""Exception types shared across the package."""


class PadeTilingsError(Exception):
    """Base class for every error raised by this package."""


class SingularMatrix(PadeTilingsError):
    """Elimination found no pivot: the linear problem has no unique solution."""


class PreconditionViolation(PadeTilingsError, ValueError):
    """Parameters fall outside the admissible range of an operation."""


class DegenerateRatio(PadeTilingsError):
    """A leading coefficient vanished, so the requested ratio is undefined."""


class NonIntegerResult(PadeTilingsError):
    """A quantity that must be an integer came out fractional."""


class CapacityExceeded(PadeTilingsError):
    """The transfer-matrix frontier is wider than the configured limit."""


class TooMany(PadeTilingsError):
    """Refusing to enumerate: the region has too many tilings."""


class Untileable(PadeTilingsError):
    """The region admits no tiling."""


class InvalidTiling(PadeTilingsError):
    """A tiling does not cover its region exactly once, or a path is malformed."""


class NoConvergence(PadeTilingsError):
    """Quadrature did not settle before the node cap."""


class ZeroConditioningProbability(PadeTilingsError):
    """Conditioning on an event of probability zero."""
