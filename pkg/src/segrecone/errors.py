"""Exception types shared across the engine."""


class EngineError(Exception):
    """Internal inconsistency or unusable configuration."""


class BoxInstabilityError(EngineError):
    """A character/degree box was too small: enlarging it changed an answer."""


class CrossCheckError(EngineError):
    """Two independent computations of the same quantity disagree."""
