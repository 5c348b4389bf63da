"""Exception types shared across the package."""


class BicriticalError(Exception):
    """Base class; the CLI maps these to exit code 1."""


class PrecisionExhausted(BicriticalError):
    pass


class RationalAlpha(BicriticalError):
    pass


class DomainError(BicriticalError, ValueError):
    pass


class NoConvergence(BicriticalError):
    pass


class SingularPoint(BicriticalError):
    pass


class GridTooCoarse(BicriticalError):
    pass


class NotInSet(BicriticalError):
    pass


class DepthExhausted(BicriticalError):
    pass


class ReturnNotFound(BicriticalError):
    pass


class NotBrjuno(BicriticalError):
    pass


class AlphaLooksBrjuno(BicriticalError):
    pass
