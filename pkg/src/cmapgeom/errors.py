"""Exception hierarchy shared by every layer of the engine."""


class CMapError(ValueError):
    """Base class; every failure raised by the engine derives from it."""


class ConfigurationError(CMapError):
    pass


class SingularEvaluationError(CMapError):
    """A function evaluation produced a non-finite value.

    ``index`` is the 0-based storage slot of the offending coordinate.
    """

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class ConsistencyError(CMapError):
    pass


class DegeneratePointError(CMapError):
    pass


class OutsideDomainError(CMapError):
    """Raised when a point leaves the positivity domain.

    ``verdict`` names the failing check (``positivity``, ``kahler_block_negdef``
    or ``curlyN_sum_negdef``).
    """

    def __init__(self, message, verdict=None):
        super().__init__(message)
        self.verdict = verdict


class PoleError(CMapError):
    pass


class ContourPlacementError(CMapError):
    pass


class OutsideConeError(CMapError):
    pass


class NumericalError(CMapError):
    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual
