"""Exception types raised by the library."""


class BaryevalError(Exception):
    """Base class for all library errors."""


class InvalidSizeError(BaryevalError, ValueError):
    """Node count outside the supported range."""


class DegenerateNodesError(BaryevalError, ValueError):
    """Duplicate interpolation nodes."""


class ConvergenceError(BaryevalError, RuntimeError):
    """An internal iteration (e.g. Newton root finding) failed to converge."""


class CollocationError(BaryevalError, ValueError):
    """A point coincides with an interpolation node where the regular
    formula divides by zero; callers must use the collocated branch."""


class InvalidInputError(BaryevalError, ValueError):
    """Mismatched array lengths or otherwise malformed input."""


class OutOfRegionError(BaryevalError, ValueError):
    """Query point lies outside the reference region beyond tolerance."""


class SingularCollapseError(BaryevalError, ValueError):
    """Operation requested at a singular face of the coordinate collapse."""


class ConfigError(BaryevalError, ValueError):
    """Invalid solver configuration."""


class ReportError(BaryevalError, ValueError):
    """Benchmark report cannot be assembled from the given records."""
