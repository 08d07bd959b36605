"""Exception hierarchy. Every domain failure is a ``HarmdensError``."""


class HarmdensError(Exception):
    """Base class; the CLI maps these to exit status 1."""


class ParityError(HarmdensError, ValueError):
    """A parity tag disagrees with the coefficients, or a series that must be even is not."""


class CompositionDomainError(HarmdensError, ValueError):
    pass


class ReversionDomainError(HarmdensError, ValueError):
    pass


class PowerDomainError(HarmdensError, ValueError):
    pass


class NormalizationError(HarmdensError, ValueError):
    """Density series without constant term 1."""


class UndefinedSpaceError(HarmdensError, ValueError):
    pass


class DomainError(HarmdensError, ValueError):
    """Argument outside the region where a closed form or construction is defined."""


class UnsupportedOrderError(HarmdensError, ValueError):
    pass


class IncompleteTableError(HarmdensError, KeyError):
    pass


class InvalidTargetError(HarmdensError, ValueError):
    pass


class PositivityError(HarmdensError, ValueError):
    pass


class ContinuationError(HarmdensError, RuntimeError):
    """Newton continuation failed; ``last_good_r`` is the last solved grid point."""

    def __init__(self, message, last_good_r=None):
        super().__init__(message)
        self.last_good_r = last_good_r


class WeylUndefinedError(HarmdensError, ValueError):
    pass


class ConfigError(HarmdensError, ValueError):
    """Command-line options that break a documented precondition."""
