from .cyclotomic import cyclotomic_poly, euler_phi, mobius, prime_factors
from .factor import (
    count_irreducibles,
    irreducibles_stream,
    is_irreducible,
    poly_factor,
    radical,
    smallest_factors,
    squarefree_decomposition,
)
from .field import ExtensionField, FieldSpec, field_make, fq_arith, fq_is_square
from .poly import NEG_INF, Poly
from .ratfunc import RatFunc

__all__ = [
    "ExtensionField",
    "FieldSpec",
    "NEG_INF",
    "Poly",
    "RatFunc",
    "count_irreducibles",
    "cyclotomic_poly",
    "euler_phi",
    "field_make",
    "fq_arith",
    "fq_is_square",
    "irreducibles_stream",
    "is_irreducible",
    "mobius",
    "poly_factor",
    "prime_factors",
    "radical",
    "smallest_factors",
    "squarefree_decomposition",
]
