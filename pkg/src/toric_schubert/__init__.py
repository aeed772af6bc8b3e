"""Toric Schubert varieties: words, digraphs, fans, cohomology and recovery."""

from .errors import (BoundTooSmallError, ComputationError, PreconditionError,
                     StepError, ToricSchubertError)
from .root_data import CartanDatum, bond_label, cartan_matrix, diagram_automorphisms, parse_type
from .weyl_words import ToricWord, commutation_equal, is_toric, make_word, parse_word

__version__ = "0.1.0"

__all__ = [
    "BoundTooSmallError", "CartanDatum", "ComputationError", "PreconditionError", "StepError",
    "ToricSchubertError", "ToricWord", "bond_label", "cartan_matrix", "commutation_equal",
    "diagram_automorphisms", "is_toric", "make_word", "parse_type", "parse_word",
]
