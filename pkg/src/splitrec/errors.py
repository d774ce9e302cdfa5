"""Exception hierarchy shared by all modules."""


class SplitRecError(Exception):
    """Base class for domain errors raised by this package."""


class InsufficientCoefficients(SplitRecError):
    """The coefficient window does not cover the requested sweep."""


class IndexOutOfRange(SplitRecError, IndexError):
    """An absolute index falls outside a grid function's window."""


class SingularBoundarySystem(SplitRecError):
    """The 2x2 boundary system for the basis weights is singular."""


class DegenerateSplit(SplitRecError):
    """The two splitting values coincide (within tolerance) at some index."""


class SingularScatterDenominator(SplitRecError):
    """A scatter-form step has a vanishing denominator."""


class StarProductSingular(SplitRecError):
    """Two cascaded scatter blocks have a singular coupling factor."""


class PoleHit(SplitRecError):
    """The downward Riccati iteration hit a zero denominator."""


class NoPhysicalRoot(SplitRecError):
    """The cavity design recurrence has no positive real continuation."""
