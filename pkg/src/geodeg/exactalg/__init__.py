"""Exact fields, sparse polynomials and ideal decision procedures."""

from .field import (AlgebraicNumber, ExtensionDescriptor, FieldError, IncompatibleFieldError,
                    field_arithmetic, field_enumerate, field_index)
from .groebner import (IdealPresentation, buchberger, groebner_basis, ideal_intersect,
                       ideal_member, ideal_quotient, ideals_equal, normal_form, poly_divide,
                       radical_member, univariate_rational_roots)
from .poly import SparsePolynomial, format_polynomial, parse_polynomial

__all__ = [
    "AlgebraicNumber", "ExtensionDescriptor", "FieldError", "IncompatibleFieldError",
    "IdealPresentation", "SparsePolynomial", "buchberger", "field_arithmetic",
    "field_enumerate", "field_index", "format_polynomial", "groebner_basis",
    "ideal_intersect", "ideal_member", "ideal_quotient", "ideals_equal", "normal_form",
    "parse_polynomial", "poly_divide", "radical_member", "univariate_rational_roots",
]
