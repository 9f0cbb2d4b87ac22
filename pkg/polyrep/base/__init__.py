from .scalar import Number, Param, Scalar, ScalarField, make_field
from .free_algebra import AlgElement, FreeAlgebra, Generator, Word
from .presentation import ModuleSpec, Presentation, build_algebra
from .module import ActionBand, RepresentationModule, StateCombo, StateIndex
from .differential import (
    DiffOp,
    OdeReduction,
    PairState,
    Realization,
    anticommutator,
    commutator,
    coordinate_field,
    express_in_basis,
    momentum_sign,
)

__all__ = [
    "Number",
    "Param",
    "Scalar",
    "ScalarField",
    "make_field",
    "AlgElement",
    "FreeAlgebra",
    "Generator",
    "Word",
    "ModuleSpec",
    "Presentation",
    "build_algebra",
    "ActionBand",
    "RepresentationModule",
    "StateCombo",
    "StateIndex",
    "DiffOp",
    "OdeReduction",
    "PairState",
    "Realization",
    "anticommutator",
    "commutator",
    "coordinate_field",
    "express_in_basis",
    "momentum_sign",
]
