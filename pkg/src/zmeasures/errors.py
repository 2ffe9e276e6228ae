class ZMeasureError(Exception):
    """Base class for domain errors raised by this package."""


class PoleError(ZMeasureError, ZeroDivisionError):
    """A normalizing Pochhammer factor vanishes, so the measure is undefined."""


class CapacityError(ZMeasureError, ValueError):
    """The requested size exceeds a configured enumeration bound."""


class LevelMismatchError(ZMeasureError, ValueError):
    """Objects living on different levels X(n) / S(2n) were combined."""
