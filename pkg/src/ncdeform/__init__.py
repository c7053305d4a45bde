"""Deformed noncommutative torus and sphere algebras.

Exact rewriting with a confluence certificate, the T/S basis, matrix
representations, the embedding into the noncommutative torus and the
projective module with its constant-curvature connection.
"""

from .basis import BasisIndex, S, T, basis_product, casimir_reduce, to_basis
from .errors import (
    AlphabetMismatch,
    BoxTooLarge,
    DegenerateFit,
    DomainError,
    DomainMismatch,
    IncompatibleRule,
    InadmissibleParams,
    NCDeformError,
    NotClosed,
    NotConfluent,
    NotPositive,
    ParseError,
    PoleError,
    SpectralViolation,
    StepCapExceeded,
)
from .params import DeformParams, derive_params
from .polynomial import NCPolynomial
from .rewrite import ReductionSystem, check_confluence, normal_form
from .syntax import format_polynomial, parse_expression

__all__ = [
    "AlphabetMismatch",
    "BasisIndex",
    "BoxTooLarge",
    "DeformParams",
    "DegenerateFit",
    "DomainError",
    "DomainMismatch",
    "IncompatibleRule",
    "InadmissibleParams",
    "NCDeformError",
    "NCPolynomial",
    "NotClosed",
    "NotConfluent",
    "NotPositive",
    "ParseError",
    "PoleError",
    "ReductionSystem",
    "S",
    "SpectralViolation",
    "StepCapExceeded",
    "T",
    "basis_product",
    "casimir_reduce",
    "check_confluence",
    "derive_params",
    "format_polynomial",
    "normal_form",
    "parse_expression",
    "to_basis",
]
