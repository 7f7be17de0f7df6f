from __future__ import annotations


class WheelWatchError(Exception):
    """Base class for every error raised on purpose by Wheel Watch."""


class GraphError(WheelWatchError, ValueError):
    pass


class ParameterError(WheelWatchError, ValueError):
    pass


class FormulaError(WheelWatchError, ValueError):
    pass


class GraphFormatError(WheelWatchError, ValueError):
    pass


class CertificateError(WheelWatchError, ValueError):
    pass


class InvariantViolation(WheelWatchError, AssertionError):
    """A construction or detector postcondition did not hold."""


class CommandTimeout(WheelWatchError, TimeoutError):
    pass
