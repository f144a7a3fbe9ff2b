"""Exact arithmetic in the number field Q(i, sqrt2).

Elements are stored as four integer numerators over one shared positive
denominator, always in lowest terms, so equality and hashing are plain
tuple comparisons.  The rational coefficients are exposed as
:class:`fractions.Fraction` through :attr:`FieldElem.a` .. :attr:`FieldElem.d`.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd

Rational = Fraction

__all__ = [
    "FieldElem",
    "Rational",
    "ZeroInversion",
    "ZERO",
    "ONE",
    "I",
    "SQRT2",
    "field_add",
    "field_mul",
    "field_inv",
    "parse_field",
]


class ZeroInversion(ZeroDivisionError):
    """Raised when inverting the zero element."""


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


class FieldElem:
    """a + b*i + c*sqrt2 + d*i*sqrt2 with rational a, b, c, d."""

    __slots__ = ("_n", "_den", "_hash")

    def __init__(self, a=0, b=0, c=0, d=0):
        fa, fb, fc, fd = (_as_fraction(v) for v in (a, b, c, d))
        den = fa.denominator * fb.denominator * fc.denominator * fd.denominator
        nums = (
            fa.numerator * (den // fa.denominator),
            fb.numerator * (den // fb.denominator),
            fc.numerator * (den // fc.denominator),
            fd.numerator * (den // fd.denominator),
        )
        self._set(nums, den)

    def _set(self, nums, den):
        if den != 1:
            g = gcd(nums[0], nums[1], nums[2], nums[3], den)
            if g != 1:
                nums = (nums[0] // g, nums[1] // g, nums[2] // g, nums[3] // g)
                den //= g
        self._n = nums
        self._den = den
        self._hash = None

    @classmethod
    def _raw(cls, nums, den) -> FieldElem:
        obj = object.__new__(cls)
        if den < 0:
            nums = (-nums[0], -nums[1], -nums[2], -nums[3])
            den = -den
        if nums == (0, 0, 0, 0):
            den = 1
        obj._set(nums, den)
        return obj

    # -- coefficients -------------------------------------------------
    @property
    def a(self) -> Fraction:
        return Fraction(self._n[0], self._den)

    @property
    def b(self) -> Fraction:
        return Fraction(self._n[1], self._den)

    @property
    def c(self) -> Fraction:
        return Fraction(self._n[2], self._den)

    @property
    def d(self) -> Fraction:
        return Fraction(self._n[3], self._den)

    def coefficients(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.a, self.b, self.c, self.d)

    def is_zero(self) -> bool:
        return self._n == (0, 0, 0, 0)

    def is_rational(self) -> bool:
        return self._n[1] == 0 and self._n[2] == 0 and self._n[3] == 0

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, FieldElem):
            try:
                other = FieldElem(other)
            except TypeError:
                return NotImplemented
        x, y = self._n, other._n
        if self._den == other._den:
            return FieldElem._raw(
                (x[0] + y[0], x[1] + y[1], x[2] + y[2], x[3] + y[3]), self._den
            )
        p, q = self._den, other._den
        return FieldElem._raw(
            (x[0] * q + y[0] * p, x[1] * q + y[1] * p, x[2] * q + y[2] * p, x[3] * q + y[3] * p),
            p * q,
        )

    __radd__ = __add__

    def __neg__(self):
        x = self._n
        return FieldElem._raw((-x[0], -x[1], -x[2], -x[3]), self._den)

    def __pos__(self):
        return self

    def __sub__(self, other):
        if not isinstance(other, FieldElem):
            try:
                other = FieldElem(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, FieldElem):
            try:
                other = FieldElem(other)
            except TypeError:
                return NotImplemented
        a1, b1, c1, d1 = self._n
        a2, b2, c2, d2 = other._n
        if b1 == 0 and c1 == 0 and d1 == 0:
            nums = (a1 * a2, a1 * b2, a1 * c2, a1 * d2)
        elif b2 == 0 and c2 == 0 and d2 == 0:
            nums = (a2 * a1, a2 * b1, a2 * c1, a2 * d1)
        else:
            # i^2 = -1, sqrt2^2 = 2, (i sqrt2)^2 = -2
            nums = (
                a1 * a2 - b1 * b2 + 2 * c1 * c2 - 2 * d1 * d2,
                a1 * b2 + b1 * a2 + 2 * c1 * d2 + 2 * d1 * c2,
                a1 * c2 + c1 * a2 - b1 * d2 - d1 * b2,
                a1 * d2 + d1 * a2 + b1 * c2 + c1 * b2,
            )
        return FieldElem._raw(nums, self._den * other._den)

    __rmul__ = __mul__

    def conjugate_i(self) -> FieldElem:
        """Image under i -> -i."""
        x = self._n
        return FieldElem._raw((x[0], -x[1], x[2], -x[3]), self._den)

    def conjugate_sqrt2(self) -> FieldElem:
        """Image under sqrt2 -> -sqrt2."""
        x = self._n
        return FieldElem._raw((x[0], x[1], -x[2], -x[3]), self._den)

    def inverse(self) -> FieldElem:
        if self.is_zero():
            raise ZeroInversion("cannot invert zero in Q(i, sqrt2)")
        s1 = self.conjugate_i()
        s2 = self.conjugate_sqrt2()
        s3 = s1.conjugate_sqrt2()
        cofactor = s1 * s2 * s3
        norm = self * cofactor
        if not norm.is_rational():
            raise ArithmeticError("norm of a field element must be rational")  # pragma: no cover
        return cofactor * FieldElem(1 / norm.a)

    def __truediv__(self, other):
        if not isinstance(other, FieldElem):
            try:
                other = FieldElem(other)
            except TypeError:
                return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return FieldElem(other) * self.inverse()

    # -- comparison / hashing ----------------------------------------
    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self._den == other._den and self._n == other._n
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.a == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            # agree with int/Fraction hashing since __eq__ does
            self._hash = hash(self.a) if self.is_rational() else hash((self._n, self._den))
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    def __reduce__(self):
        return (FieldElem, self.coefficients())

    # -- text ---------------------------------------------------------
    def canonical(self) -> str:
        """Serialization form, all four terms: ``"1/2 + 0*i + -3/1*r2 + 0*i*r2"``."""

        def fmt(q: Fraction) -> str:
            return "0" if q == 0 else f"{q.numerator}/{q.denominator}"

        a, b, c, d = self.coefficients()
        return f"{fmt(a)} + {fmt(b)}*i + {fmt(c)}*r2 + {fmt(d)}*i*r2"

    def __str__(self):
        terms = []
        for q, unit in zip(self.coefficients(), ("", "*i", "*r2", "*i*r2")):
            if q != 0:
                terms.append(f"{q}{unit}")
        return " + ".join(terms) if terms else "0"

    def __repr__(self):
        return f"FieldElem({str(self)!r})"


_TERM = re.compile(r"^([+-]?(?:\d+(?:/\d+)?)?)\s*(?:\*?\s*(i\s*\*\s*r2|r2\s*\*\s*i|i|r2))?$")
_UNIT_INDEX = {None: 0, "i": 1, "r2": 2, "i*r2": 3, "r2*i": 3}


def parse_field(text: str) -> FieldElem:
    """Parse the canonical form or any subset of its terms.

    Accepts e.g. ``"1/2 + 0*i + -3/1*r2 + 0*i*r2"``, ``"-3*r2"``, ``"i"``,
    ``"1 + -1*i"``.  Raises ``ValueError`` on anything else.
    """
    src = text.strip()
    if not src:
        raise ValueError("empty field element")
    coeffs = [Fraction(0)] * 4
    seen = set()
    for raw in src.split("+"):
        term = raw.strip()
        if not term:
            raise ValueError(f"malformed field element {text!r}")
        m = _TERM.match(term)
        if m is None or (m.group(1) in ("", "+", "-") and m.group(2) is None):
            raise ValueError(f"malformed term {term!r} in {text!r}")
        unit = m.group(2)
        if unit is not None:
            unit = re.sub(r"\s+", "", unit)
        idx = _UNIT_INDEX[unit]
        if idx in seen:
            raise ValueError(f"repeated term for unit {unit or '1'} in {text!r}")
        seen.add(idx)
        coeff = m.group(1)
        if not coeff or coeff == "+":
            value = Fraction(1)
        elif coeff == "-":
            value = Fraction(-1)
        else:
            value = Fraction(coeff)
        coeffs[idx] = value
    return FieldElem(*coeffs)


def field_add(x: FieldElem, y: FieldElem) -> FieldElem:
    return x + y


def field_mul(x: FieldElem, y: FieldElem) -> FieldElem:
    return x * y


def field_inv(x: FieldElem) -> FieldElem:
    return x.inverse()


ZERO = FieldElem()
ONE = FieldElem(1)
I = FieldElem(0, 1)
SQRT2 = FieldElem(0, 0, 1)
