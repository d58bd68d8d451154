"""Exception types shared across the package."""


class SphereCSError(Exception):
    """Base class for all package-specific errors."""


class ConstraintViolation(SphereCSError):
    """A phase-space or complex-sphere point fails its defining constraint."""


class UnsupportedDimension(SphereCSError):
    """Requested dimension is outside the implemented range."""


class ConvergenceError(SphereCSError):
    """A series/quadrature cannot reach the requested accuracy in its regime."""


class CutoffInsufficient(SphereCSError):
    """A truncation certificate shows the configured cutoff cannot meet tolerance."""


class OverflowGuard(SphereCSError):
    """An exponential scaling factor would overflow double precision."""
