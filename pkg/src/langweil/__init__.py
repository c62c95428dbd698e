"""Exact point counts of hypersurfaces over small finite fields, random plane
slicing statistics, explicit point-count bounds and asymptotic constant refinement."""
from .gf import FieldDescriptor, FieldElement, Embedding, make_field, embed, apply, frobenius, enumerate_field
from .mpoly import MultiPoly, Hypersurface, parse

__all__ = [
    "FieldDescriptor",
    "FieldElement",
    "Embedding",
    "make_field",
    "embed",
    "apply",
    "frobenius",
    "enumerate_field",
    "MultiPoly",
    "Hypersurface",
    "parse",
]
__version__ = "0.1.0"
