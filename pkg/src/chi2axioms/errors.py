"""Exception hierarchy shared by every module of the package."""


class Chi2Error(ValueError):
    """Base class for all domain errors raised by :mod:`chi2axioms`."""


class ZeroSize(Chi2Error):
    """An observed distribution with no observations was supplied."""


class DimensionMismatch(Chi2Error):
    pass


class IndexOutOfRange(Chi2Error):
    pass


class EqualIndices(Chi2Error):
    pass


class NotIntegral(Chi2Error):
    """``k * pi`` has a non-integer component."""


class NegativeEntry(Chi2Error):
    pass


class PhiUndefined(Chi2Error):
    """The phi table of a weighted measure has no entry for the reference point."""


class OutOfSimplex(Chi2Error):
    pass


class DomainExceeded(Chi2Error):
    pass


class SingularSystem(Chi2Error):
    """The sampled values do not determine (or do not fit) a quadratic form."""


class MissingCoefficient(Chi2Error):
    pass


class InvalidDF(Chi2Error):
    pass


class NegativeStatistic(Chi2Error):
    pass
