"""Exact Chern-character calculus and tilt-stability numerics on a
principally polarized abelian threefold of Picard rank one."""

from .chern import ChernVector, apply, derived_dual, fmt_phi, shift, tensor_L
from .numerics import DISTINGUISHED, StabilityParams
from .scalar import ExactComplex, ExtSlope, QuadScalar

__all__ = [
    "ChernVector",
    "DISTINGUISHED",
    "ExactComplex",
    "ExtSlope",
    "QuadScalar",
    "StabilityParams",
    "apply",
    "derived_dual",
    "fmt_phi",
    "shift",
    "tensor_L",
]
