"""Exact computations with toric boundary cycles, Chow rings and localization."""
from .arith import LaurentPoly2, Rat, UniPoly, gcd_free_basis
from .chow import (
    BundleClass,
    ChowRingPresentation,
    GradedClass,
    projective_bundle,
    projective_space,
    pushforward_pb,
    segre_class,
    theta_assemble,
    theta_decompose,
    weighted_projective_line,
)
from .cycles import (
    Certificate,
    HigherChowClass,
    ZeroCycleOnR,
    boundary_rho,
    class_of,
    norm,
    reduce_to_point,
    total_boundary,
    verify_certificate,
)
from .equivariant import FixedComponentData, LaurentT, check_t_independence, localize_integrate
from .toric import Fan2D, Polygon2, edge_data, edge_polynomial, newton_polygon, smooth_complete_fan

__version__ = "0.1.0"

__all__ = [
    "BundleClass",
    "Certificate",
    "ChowRingPresentation",
    "Fan2D",
    "FixedComponentData",
    "GradedClass",
    "HigherChowClass",
    "LaurentPoly2",
    "LaurentT",
    "Polygon2",
    "Rat",
    "UniPoly",
    "ZeroCycleOnR",
    "boundary_rho",
    "check_t_independence",
    "class_of",
    "edge_data",
    "edge_polynomial",
    "gcd_free_basis",
    "localize_integrate",
    "newton_polygon",
    "norm",
    "projective_bundle",
    "projective_space",
    "pushforward_pb",
    "reduce_to_point",
    "segre_class",
    "smooth_complete_fan",
    "theta_assemble",
    "theta_decompose",
    "total_boundary",
    "verify_certificate",
    "weighted_projective_line",
]
