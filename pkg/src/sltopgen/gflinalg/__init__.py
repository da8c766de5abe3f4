"""Exact linear algebra over finite fields GF(p^k)."""

from .elements import (
    assign_values,
    element_order,
    embedding,
    group_exponent,
    is_strongly_regular,
    random_conjugate,
    random_special_linear,
    realize,
    representative_matrix,
)
from .field import FieldElement, FieldSpec, extension_field, field_create, field_of_order, parse_field_order, prime_field
from .matrix import FieldMatrix, companion_matrix, jordan_block
from .meataxe import (
    Irreducibility,
    IrreducibilityResult,
    endomorphism_dimension,
    irreducibility_test,
    is_absolutely_irreducible,
    spin,
)
from .polynomial import Poly, factor_poly, gcd, is_irreducible, roots

Polynomial = Poly

__all__ = [
    "FieldSpec",
    "FieldElement",
    "FieldMatrix",
    "Poly",
    "Polynomial",
    "field_create",
    "prime_field",
    "extension_field",
    "field_of_order",
    "parse_field_order",
    "factor_poly",
    "gcd",
    "is_irreducible",
    "roots",
    "companion_matrix",
    "jordan_block",
    "representative_matrix",
    "assign_values",
    "realize",
    "random_special_linear",
    "random_conjugate",
    "element_order",
    "group_exponent",
    "embedding",
    "is_strongly_regular",
    "irreducibility_test",
    "is_absolutely_irreducible",
    "endomorphism_dimension",
    "spin",
    "Irreducibility",
    "IrreducibilityResult",
]
