"""Exact computations with hypertoric cohomology presentations, Orlik-Terao
algebras and the map from equivariant cohomology to the q = 1 quotient of
quantum cohomology."""

from .errors import (
    InvalidConfig,
    NotDivisible,
    OTKError,
    ParseError,
    PsiIllDefined,
    SpanFailure,
    UsageError,
)
from .matroid import VectorConfig
from .polyring import MonomialOrder, Polynomial, Ring

__version__ = "0.1.0"

__all__ = [
    "InvalidConfig",
    "MonomialOrder",
    "NotDivisible",
    "OTKError",
    "ParseError",
    "Polynomial",
    "PsiIllDefined",
    "Ring",
    "SpanFailure",
    "UsageError",
    "VectorConfig",
]
