"""Ext^1-quivers for reduced enveloping algebras of the Witt algebra W(1,1)."""

from .ext1 import EngineDisagreement, SizeCapExceeded, ext1, hom_dim, hom_space, is_isomorphic, verify_cocycle
from .gf import ArtinSchreierField, ExtFieldElem, FieldElem, PrimeField
from .quiver import Quiver, build_quiver, diff, emit, expected_quiver, is_connected
from .rep import Representation, dual, induce, one_dim_rep, validate, verma
from .witt import Character, WittAlgebra, height, representative, witt

__version__ = "0.1.0"

__all__ = [
    "ArtinSchreierField", "Character", "EngineDisagreement", "ExtFieldElem", "FieldElem", "PrimeField",
    "Quiver", "Representation", "SizeCapExceeded", "WittAlgebra", "build_quiver", "diff", "dual", "emit",
    "expected_quiver", "ext1", "height", "hom_dim", "hom_space", "induce", "is_connected", "is_isomorphic",
    "one_dim_rep", "representative", "validate", "verify_cocycle", "verma", "witt",
]
