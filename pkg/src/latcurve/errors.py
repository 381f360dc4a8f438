"""Exception hierarchy shared by all modules."""


class LatticeError(Exception):
    """Base class for every error raised by latcurve."""


class DegenerateError(LatticeError):
    """A triangle, frame or series collapsed (zero area, zero term)."""


class ConfigurationError(LatticeError):
    """Points do not satisfy the incidence/convexity preconditions."""


class CircumscriptionError(ConfigurationError):
    """A broken line is not circumscribed around the inscribed one."""


class ConstructionError(LatticeError):
    """A deterministic construction found no valid candidate."""


class SearchExhausted(ConstructionError):
    """A bounded search ran out of candidates.

    ``attempted`` holds a (first, last) pair describing the range tried.
    """

    def __init__(self, message, attempted=None):
        super().__init__(message)
        self.attempted = attempted


class PrecisionExhausted(LatticeError):
    """The input real is not known precisely enough for the requested depth."""


class NoCrossingError(ConfigurationError):
    """The ray does not cross the fan of a noses stretch."""
