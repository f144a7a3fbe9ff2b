"""Exact construction and verification of Z2xZ2-graded matrix Lie algebras.

Scalars live in Q(i, sqrt2); matrices are immutable and compared exactly.
"""

from .scalar import FieldElem, parse_field
from .gmatrix import Matrix, SpanBasis, elementary, span_equal, span_of
from .graded import (
    D00,
    D01,
    D10,
    D11,
    DEGREES,
    Degree,
    GradedBasis,
    GradingConflict,
    HomogeneousElement,
    check_closure,
    check_jacobi,
    generate,
    graded_bracket,
    pairing,
    permute_grading,
    structure_constants,
)
from .families import AlgebraSpec, Family, InvalidSpec, build, dims_formula, parse_spec

__version__ = "0.1.0"
