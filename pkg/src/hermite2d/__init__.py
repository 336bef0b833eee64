"""Exact construction and verification of deformed complex Hermite polynomials."""
from .exact import ExactScalar, GaussianRational, NotRealError, parse_scalar
from .hermite import (
    TEST_G_SET,
    GMatrix,
    complex_hermite,
    deformation_matrix,
    deformed_sum,
    real_basis_matrix,
    real_hermite,
)
from .polyring import SparsePoly
from .report import ScaledExact, VerificationReport

__version__ = "0.1.0"

__all__ = [
    "ExactScalar",
    "GaussianRational",
    "NotRealError",
    "parse_scalar",
    "SparsePoly",
    "GMatrix",
    "TEST_G_SET",
    "complex_hermite",
    "deformed_sum",
    "deformation_matrix",
    "real_basis_matrix",
    "real_hermite",
    "ScaledExact",
    "VerificationReport",
]
