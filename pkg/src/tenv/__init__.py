"""Exact computations with relations in FinSetOp and FinVectFq and their tensor envelopes."""

from .backend import FinSetOp, FinVectFq, Morphism, Subobject, make_backend
from .config import Bounds, ContractViolation, ResourceBoundError, SchemaError
from .degree import DegreeFunction, natural_degree, validate_degree_axioms
from .relations import Relation, classical_compose, weighted_compose
from .scalars import Poly, RatFunc, T

__version__ = "0.1.0"

__all__ = [
    "Bounds",
    "ContractViolation",
    "DegreeFunction",
    "FinSetOp",
    "FinVectFq",
    "Morphism",
    "Poly",
    "RatFunc",
    "Relation",
    "ResourceBoundError",
    "SchemaError",
    "Subobject",
    "T",
    "classical_compose",
    "make_backend",
    "natural_degree",
    "validate_degree_axioms",
    "weighted_compose",
]
