"""tensoradj: exact computation with fusion categories, module categories,
and the adjoint algebra in the Drinfeld center.

The package builds skeletal fusion categories and semisimple module
categories from finite structure data, synthesizes duals and adjunctions,
materializes the adjoint algebra of a module category by two independent
routes, and verifies the structural identities relating them with exact
cyclotomic arithmetic.
"""

from .errors import (
    AdjunctionError,
    CocycleError,
    DivisionByZero,
    EquivalenceError,
    IndecomposabilityError,
    InvalidRescale,
    RigidityError,
    SchemaError,
    ShapeError,
    TensorAdjError,
    TheoremViolation,
    UnsupportedConductor,
)
from .exact_scalar import ExactMatrix, ExactScalar, sc

__version__ = "0.1.0"

__all__ = [
    "ExactMatrix",
    "ExactScalar",
    "sc",
    "TensorAdjError",
    "DivisionByZero",
    "UnsupportedConductor",
    "ShapeError",
    "SchemaError",
    "RigidityError",
    "AdjunctionError",
    "CocycleError",
    "IndecomposabilityError",
    "TheoremViolation",
    "InvalidRescale",
    "EquivalenceError",
]
