"""Mechanical network constructions: radial approximators and exact polynomial nets."""

from .factorization import (
    MultiPolySpec,
    SeparableSpec,
    build_factorization_trainable,
    build_poly_net,
    build_separable_net,
    multipoly_net_size,
    quadratic_coefficients,
)
from .radial import (
    RadialPartition,
    build_deep_radial,
    build_parabola_module,
    build_shallow_radial,
    delta_for_target_error,
    plateau_interval,
    radial_profile,
)

__all__ = [
    "MultiPolySpec",
    "RadialPartition",
    "SeparableSpec",
    "build_deep_radial",
    "build_factorization_trainable",
    "build_parabola_module",
    "build_poly_net",
    "build_separable_net",
    "build_shallow_radial",
    "delta_for_target_error",
    "multipoly_net_size",
    "plateau_interval",
    "quadratic_coefficients",
    "radial_profile",
]
