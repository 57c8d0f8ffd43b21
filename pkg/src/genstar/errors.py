"""Exception types shared across the engine."""


class EngineError(Exception):
    """Base class for all errors raised by genstar."""


class ValidationError(EngineError):
    """An input failed validation (non-finite value, bad field, bad kind)."""


class FrameMismatchError(EngineError):
    """Operands live in different coordinate frames (cartesian vs complex)."""


class SingularParameterError(EngineError):
    """A parameter value makes the requested operation singular (theta = 0
    in the complex frame, theta <= 0 for Fock-space constructions)."""


class DimensionMismatchError(EngineError):
    """Fock-space objects with unequal truncation dimensions were combined."""


class DivergentIntegralError(EngineError):
    """A plane integral was requested for a non-oscillatory exponential."""
