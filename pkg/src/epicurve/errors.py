"""Exception hierarchy shared across the package."""


class EpicurveError(Exception):
    """Base class for all errors raised by this package."""


class InvalidParamsError(EpicurveError):
    """Model or fit parameters are missing, out of range, or non-finite."""


class InvalidStateError(EpicurveError):
    """A compartment state violates its bounds or conservation constraint."""


class IntegrationFaultError(EpicurveError):
    """Conservation drifted beyond tolerance during integration."""


class InsufficientDataError(EpicurveError):
    """Too few data points for the requested operation."""


class DegenerateSeriesError(EpicurveError):
    """A series is constant (or all zero) and cannot be fitted."""


class InvalidSeriesError(EpicurveError):
    """A series violates a precondition (negative, non-cumulative, non-finite)."""


class ParseError(EpicurveError):
    """A document could not be parsed; the message names the offending line."""


class ConsistencyError(EpicurveError):
    """Daily and cumulative columns disagree, or dates are not consecutive."""


class NoCasesError(EpicurveError):
    """A series has no recorded cases, so first-case alignment is undefined."""


class InvalidCountError(EpicurveError):
    """A count value is negative."""


class NoDataError(EpicurveError):
    """A chart references a series that is missing or empty."""


class NonpositiveLogError(EpicurveError):
    """A nonpositive value cannot be placed on a log10 axis."""
