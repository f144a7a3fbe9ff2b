"""Shared helpers.  sympy acts as an independent oracle for field and
matrix arithmetic."""

from __future__ import annotations

import random

import pytest
import sympy

from zzlie.gmatrix import Matrix
from zzlie.scalar import FieldElem

SQ2 = sympy.sqrt(2)


def to_sympy(x: FieldElem):
    a, b, c, d = x.coefficients()
    r = sympy.Rational
    return r(a.numerator, a.denominator) + r(b.numerator, b.denominator) * sympy.I \
        + r(c.numerator, c.denominator) * SQ2 + r(d.numerator, d.denominator) * sympy.I * SQ2


def mat_to_sympy(m: Matrix) -> sympy.Matrix:
    return sympy.Matrix([[to_sympy(v) for v in row] for row in m.to_rows()])


def sympy_is_zero(expr) -> bool:
    return sympy.simplify(sympy.expand(expr)) == 0


def random_elem(rng: random.Random, span: int = 5, den: int = 4) -> FieldElem:
    from fractions import Fraction

    return FieldElem(*(Fraction(rng.randint(-span, span), rng.randint(1, den)) for _ in range(4)))


@pytest.fixture
def rng():
    return random.Random(20261015)
