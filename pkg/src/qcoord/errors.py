"""Exception types shared across the package."""


class QCoordError(Exception):
    """Base class for domain errors."""


class NonGCM(QCoordError):
    pass


class NotSymmetrizable(QCoordError):
    pass


class DegenerateRootDatum(QCoordError):
    """Simple roots are linearly dependent in the (h, d) coordinates."""


class NotFiniteType(QCoordError):
    pass


class NotAffine(QCoordError):
    pass


class NotDominant(QCoordError):
    pass


class NotRegular(QCoordError):
    """Laurent polynomial has a pole at q = 0."""


class IntegralityViolation(QCoordError):
    """A path has a non-integral i-height minimum."""


class NotInCrystal(QCoordError):
    pass


class BudgetExceeded(QCoordError):
    def __init__(self, msg, partial=None):
        super().__init__(msg)
        self.partial = partial


class NotStabilized(QCoordError):
    def __init__(self, msg, counts=None):
        super().__init__(msg)
        self.counts = counts or []


class MarginViolation(QCoordError):
    pass
