"""Higher categorical Galois theory over finite quandles, racks and groups."""

from .algebra import (
    Congruence,
    FibreProduct,
    FiniteAlgebra,
    Hom,
    Variety,
    coequalizer,
    congruence_closure,
    kernel_congruence,
    kernel_pair,
    pullback,
    quotient,
)
from .errors import InputError, PropertyViolation

__all__ = [
    "Congruence",
    "FibreProduct",
    "FiniteAlgebra",
    "Hom",
    "InputError",
    "PropertyViolation",
    "Variety",
    "coequalizer",
    "congruence_closure",
    "kernel_congruence",
    "kernel_pair",
    "pullback",
    "quotient",
]
