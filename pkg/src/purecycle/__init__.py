"""Pure-cycle Hurwitz factorizations: enumeration, braid orbits, closed forms and monodromy groups."""

from .enumeration import Bounds, EquivalenceClass, enumerate_classes, hurwitz_number
from .factorization import Factorization, HurwitzProblem, canonical_form, is_hurwitz_factorization
from .perm import Permutation, compose, conjugate, inverse, parse_cycles, perm_from_cycles

__all__ = [
    "Bounds", "EquivalenceClass", "Factorization", "HurwitzProblem", "Permutation",
    "canonical_form", "compose", "conjugate", "enumerate_classes", "hurwitz_number",
    "inverse", "is_hurwitz_factorization", "parse_cycles", "perm_from_cycles",
]

__version__ = "0.1.0"
