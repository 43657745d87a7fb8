"""Exception hierarchy shared by every ringstore module."""


class RingStoreError(Exception):
    """Base class for all ringstore errors."""


class FieldError(RingStoreError, ValueError):
    """Order mismatch, non-prime order, or inverting zero."""


class DimensionError(RingStoreError, ValueError):
    """Matrix or vector shapes are incompatible."""


class SpanError(RingStoreError, ValueError):
    """A vector or target rank is unreachable from the given columns."""


class InfeasibleParameters(RingStoreError, ValueError):
    """Ring parameters (n, alpha, M) admit no scheme."""


class NotOrdssError(RingStoreError, ValueError):
    """A scheme fails the adjacent-node independence conditions."""


class SimulationError(RingStoreError, RuntimeError):
    """An event sequence is illegal or a plan failed to verify."""
