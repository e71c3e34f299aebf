"""Torus bundles over closed surfaces: monodromy, Euler classes, isomorphism and symplectic tests."""

from .bundles import IsoVerdict, TorusBundle, iso, verify_certificate
from .sl2z import Mat

__all__ = ["IsoVerdict", "Mat", "TorusBundle", "iso", "verify_certificate"]
