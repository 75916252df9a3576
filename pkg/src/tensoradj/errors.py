"""Shared exception taxonomy for the engine.

Every failure mode that callers are expected to catch gets its own class so
that the CLI can map mathematical failures and input problems to distinct
exit codes.
"""


class TensorAdjError(Exception):
    """Base class for all engine errors."""


class DivisionByZero(TensorAdjError):
    """Inverting the zero scalar or dividing by it."""


class UnsupportedConductor(TensorAdjError):
    """A cyclotomic conductor outside the supported range was requested."""


class ShapeError(TensorAdjError):
    """Matrix or morphism shapes do not line up."""


class SchemaError(TensorAdjError):
    """A JSON artifact does not match its declared format."""


class RigidityError(TensorAdjError):
    """Dual data could not be synthesized (degenerate evaluation candidate)."""


class AdjunctionError(TensorAdjError):
    """Functor-level adjunction synthesis failed (no solution or non-unique)."""


class CocycleError(TensorAdjError):
    """A 3-cocycle condition or cocycle/module compatibility fails."""


class IndecomposabilityError(TensorAdjError):
    """A module category required to be indecomposable is not."""


class TheoremViolation(TensorAdjError):
    """A structural identity the engine verifies came out nonzero."""


class InvalidRescale(TensorAdjError):
    """A dinatural rescaling contains a zero scalar."""


class EquivalenceError(TensorAdjError):
    """Supplied equivalence data is not an equivalence."""
