"""Physical parameter records and unit conventions.

All numerical work in the package is done in dimensionless internal units
x/r and p/(m*omega*r), in which the only surviving parameters are the
dimension d and tau = hbar / (m * omega * r**2).  The records here hold the
physical constants and expose the derived dimensionless quantities.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import UnsupportedDimension

__all__ = ["ModelParams", "FlatParams"]


@dataclass(frozen=True)
class ModelParams:
    """Constants for a quantum particle on the d-sphere.

    Parameters
    ----------
    d : int
        Sphere dimension; full kernel support for d in {1, 2, 3}.
    r : float
        Sphere radius.
    m : float
        Particle mass.
    omega : float
        Frequency entering the complexifier (kinetic energy / omega).
    hbar : float
        Reduced Planck constant.
    """

    d: int
    r: float = 1.0
    m: float = 1.0
    omega: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        if self.d not in (1, 2, 3):
            raise UnsupportedDimension(f"d must be 1, 2 or 3, got {self.d}")
        for name in ("r", "m", "omega", "hbar"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")

    @property
    def tau(self) -> float:
        """Dimensionless hbar / (m * omega * r**2)."""
        return self.hbar / (self.m * self.omega * self.r**2)

    @property
    def momentum_scale(self) -> float:
        """m * omega * r, the unit of momentum in internal coordinates."""
        return self.m * self.omega * self.r

    @classmethod
    def from_tau(cls, d: int, tau: float) -> "ModelParams":
        """Convenience constructor in internal units (r = m = omega = 1)."""
        if tau <= 0:
            raise ValueError("tau must be positive")
        return cls(d=d, r=1.0, m=1.0, omega=1.0, hbar=tau)


@dataclass(frozen=True)
class FlatParams:
    """Constants for the flat (R^d) reference model."""

    d: int
    m: float = 1.0
    omega: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        if self.d < 1:
            raise UnsupportedDimension("d must be >= 1")
        for name in ("m", "omega", "hbar"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")

    @property
    def sigma(self) -> float:
        """Squared width hbar / (m * omega) of the ground Gaussian."""
        return self.hbar / (self.m * self.omega)
