"""Exact linear algebra over F_p, Z and finite chain rings."""

from .fp import FpMatrix, charpoly, nullspace, rref
from .howell import ChainMatrix, HowellSpan, chain_inverse, chain_kernel, howell_form
from .poly import FpPoly, companion, factor_poly
from .rings import ChainRing, PrimeField, is_field
from .snf import IntMatrix, determinant, integer_kernel, smith_normal_form

__all__ = [
    "ChainMatrix",
    "ChainRing",
    "FpMatrix",
    "FpPoly",
    "HowellSpan",
    "IntMatrix",
    "PrimeField",
    "chain_inverse",
    "chain_kernel",
    "charpoly",
    "companion",
    "determinant",
    "factor_poly",
    "howell_form",
    "integer_kernel",
    "is_field",
    "nullspace",
    "rref",
    "smith_normal_form",
]
