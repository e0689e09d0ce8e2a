"""Exception hierarchy shared by the numeric pipeline."""


class WeierquarticError(Exception):
    """Base class for all package errors."""


class NumericalInconsistency(WeierquarticError):
    """Two computations that must agree did not."""


class NonConvergence(NumericalInconsistency):
    """An iteration hit its cap. ``best`` holds the last iterates."""

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class PolishDivergence(NumericalInconsistency):
    def __init__(self, message, last=None):
        super().__init__(message)
        self.last = last


class ClusterAmbiguity(NumericalInconsistency):
    """Two clusters sit closer than the separation margin."""


class ChartDegenerate(WeierquarticError):
    """The chosen affine chart collapses degrees; rotate coordinates."""


class SharedComponent(WeierquarticError):
    """The two curves (or a curve and a line) share a component."""


class IncompleteIntersection(NumericalInconsistency):
    """Total multiplicity does not match the Bezout count."""


class SetNotInvariant(WeierquarticError):
    """A group element maps a point outside the given set."""


class NotClosedWithinCap(WeierquarticError):
    pass


class SingularPointError(WeierquarticError):
    """Gradient vanishes where a smooth point was required."""


class SingularCurveError(WeierquarticError):
    """The input curve is singular."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness
