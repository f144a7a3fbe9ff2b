"""Matrices over Q(i, sqrt2) and exact subspace arithmetic.

A :class:`Matrix` behaves as a dense ``rows x cols`` array but only the
nonzero entries are stored; every family basis element has one or two
nonzero entries, so products stay cheap without a separate sparse API.

Subspaces of the vectorized matrix space (row-major, coordinate
``i * cols + j``) are held by :class:`SpanBasis` in reduced row-echelon
form, which makes span equality a plain comparison.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .scalar import ONE, ZERO, FieldElem, parse_field

__all__ = [
    "Matrix",
    "ShapeMismatch",
    "IndexOutOfRange",
    "NotInSpan",
    "SpanBasis",
    "Expander",
    "elementary",
    "zeros",
    "identity",
    "commutator",
    "anticommutator",
    "span_insert",
    "span_contains",
    "span_equal",
    "span_of",
]


class ShapeMismatch(ValueError):
    pass


class IndexOutOfRange(IndexError):
    pass


class NotInSpan(ValueError):
    pass


def _field(x) -> FieldElem:
    return x if isinstance(x, FieldElem) else FieldElem(x)


class Matrix:
    """Immutable matrix with FieldElem entries."""

    __slots__ = ("rows", "cols", "_e", "_by_row", "_hash")

    def __init__(self, rows: int, cols: int, entries: Mapping[tuple[int, int], object] | None = None):
        if rows < 0 or cols < 0:
            raise ShapeMismatch(f"negative shape {rows}x{cols}")
        self.rows = rows
        self.cols = cols
        e = {}
        if entries:
            for (i, j), v in entries.items():
                if not (0 <= i < rows and 0 <= j < cols):
                    raise IndexOutOfRange(f"entry ({i},{j}) outside {rows}x{cols}")
                v = _field(v)
                if not v.is_zero():
                    e[(i, j)] = v
        self._e = e
        self._by_row = None
        self._hash = None

    @classmethod
    def _wrap(cls, rows, cols, e) -> Matrix:
        # e must already be free of zeros
        m = object.__new__(cls)
        m.rows = rows
        m.cols = cols
        m._e = e
        m._by_row = None
        m._hash = None
        return m

    @classmethod
    def from_rows(cls, data: Sequence[Sequence[object]]) -> Matrix:
        rows = len(data)
        cols = len(data[0]) if rows else 0
        entries = {}
        for i, row in enumerate(data):
            if len(row) != cols:
                raise ShapeMismatch("ragged rows")
            for j, v in enumerate(row):
                entries[(i, j)] = v
        return cls(rows, cols, entries)

    # -- access -------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, key: tuple[int, int]) -> FieldElem:
        i, j = key
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexOutOfRange(f"({i},{j}) outside {self.rows}x{self.cols}")
        return self._e.get((i, j), ZERO)

    def items(self):
        """Nonzero entries as ``((i, j), value)`` pairs (0-based)."""
        return self._e.items()

    def nnz(self) -> int:
        return len(self._e)

    def to_rows(self) -> list[list[FieldElem]]:
        return [[self._e.get((i, j), ZERO) for j in range(self.cols)] for i in range(self.rows)]

    def is_zero(self) -> bool:
        return not self._e

    def _rows_index(self):
        if self._by_row is None:
            idx = defaultdict(list)
            for (i, j), v in self._e.items():
                idx[i].append((j, v))
            self._by_row = idx
        return self._by_row

    # -- arithmetic ---------------------------------------------------
    def _check_same(self, other: Matrix):
        if self.shape != other.shape:
            raise ShapeMismatch(f"{self.shape} vs {other.shape}")

    def __add__(self, other: Matrix) -> Matrix:
        self._check_same(other)
        e = dict(self._e)
        for k, v in other._e.items():
            w = e.get(k)
            if w is None:
                e[k] = v
            else:
                s = w + v
                if s.is_zero():
                    del e[k]
                else:
                    e[k] = s
        return Matrix._wrap(self.rows, self.cols, e)

    def __neg__(self) -> Matrix:
        return Matrix._wrap(self.rows, self.cols, {k: -v for k, v in self._e.items()})

    def __sub__(self, other: Matrix) -> Matrix:
        return self + (-other)

    def scale(self, c) -> Matrix:
        c = _field(c)
        if c.is_zero():
            return Matrix._wrap(self.rows, self.cols, {})
        return Matrix._wrap(self.rows, self.cols, {k: c * v for k, v in self._e.items()})

    def __mul__(self, c):
        if isinstance(c, Matrix):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def __matmul__(self, other: Matrix) -> Matrix:
        if self.cols != other.rows:
            raise ShapeMismatch(f"cannot multiply {self.shape} by {other.shape}")
        right = other._rows_index()
        acc: dict[tuple[int, int], FieldElem] = {}
        for (i, k), v in self._e.items():
            row = right.get(k)
            if not row:
                continue
            for j, w in row:
                key = (i, j)
                p = v * w
                old = acc.get(key)
                acc[key] = p if old is None else old + p
        return Matrix._wrap(self.rows, other.cols, {k: v for k, v in acc.items() if not v.is_zero()})

    def transpose(self) -> Matrix:
        return Matrix._wrap(self.cols, self.rows, {(j, i): v for (i, j), v in self._e.items()})

    @property
    def T(self) -> Matrix:
        return self.transpose()

    def trace(self) -> FieldElem:
        if not self.is_square():
            raise ShapeMismatch("trace of a non-square matrix")
        t = ZERO
        for (i, j), v in self._e.items():
            if i == j:
                t = t + v
        return t

    # -- comparison ---------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._e == other._e

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, frozenset(self._e.items())))
        return self._hash

    # -- vectorization and text ----------------------------------------
    def vectorize(self) -> dict[int, FieldElem]:
        """Sparse row-major vector ``{i * cols + j: value}``."""
        c = self.cols
        return {i * c + j: v for (i, j), v in self._e.items()}

    @classmethod
    def from_vector(cls, vec: Mapping[int, FieldElem], rows: int, cols: int) -> Matrix:
        return cls(rows, cols, {divmod(k, cols): v for k, v in vec.items()})

    def to_text(self) -> str:
        return "\n".join(", ".join(v.canonical() for v in row) for row in self.to_rows())

    @classmethod
    def from_text(cls, text: str) -> Matrix:
        lines = [ln for ln in text.strip().splitlines() if ln.strip()]
        if not lines:
            raise ValueError("empty matrix text")
        return cls.from_rows([[parse_field(tok) for tok in ln.split(",")] for ln in lines])

    def pretty(self) -> str:
        cells = [[str(v) for v in row] for row in self.to_rows()]
        width = max((len(c) for row in cells for c in row), default=1)
        return "\n".join("[ " + "  ".join(c.rjust(width) for c in row) + " ]" for row in cells)

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols}, nnz={len(self._e)})"


def zeros(rows: int, cols: int | None = None) -> Matrix:
    return Matrix(rows, rows if cols is None else cols)


def identity(n: int) -> Matrix:
    return Matrix(n, n, {(i, i): ONE for i in range(n)})


def elementary(rows: int, cols: int, j: int, k: int) -> Matrix:
    """The matrix unit e_{jk}, 1-based indices."""
    if not (1 <= j <= rows and 1 <= k <= cols):
        raise IndexOutOfRange(f"e_({j},{k}) outside {rows}x{cols}")
    return Matrix._wrap(rows, cols, {(j - 1, k - 1): ONE})


def _square_pair(x: Matrix, y: Matrix):
    if not (x.is_square() and y.is_square() and x.shape == y.shape):
        raise ShapeMismatch(f"need equal square shapes, got {x.shape} and {y.shape}")


def commutator(x: Matrix, y: Matrix) -> Matrix:
    _square_pair(x, y)
    return x @ y - y @ x


def anticommutator(x: Matrix, y: Matrix) -> Matrix:
    _square_pair(x, y)
    return x @ y + y @ x


# ----------------------------------------------------------------------
# subspaces


def _axpy(v: dict, c: FieldElem, row: Iterable[tuple[int, FieldElem]]):
    """v <- v - c * row, in place."""
    for k, w in row:
        old = v.get(k)
        new = -(c * w) if old is None else old - c * w
        if new.is_zero():
            v.pop(k, None)
        else:
            v[k] = new


@dataclass(frozen=True)
class SpanBasis:
    """A subspace in canonical reduced row-echelon form.

    ``rref_rows[r]`` is a sorted tuple of ``(coordinate, value)`` pairs with
    value 1 at ``pivots[r]`` and 0 at every other pivot.  Rows are ordered
    by pivot.
    """

    ambient_dim: int
    pivots: tuple[int, ...] = ()
    rref_rows: tuple[tuple[tuple[int, FieldElem], ...], ...] = ()

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def __len__(self):
        return len(self.pivots)

    def reduce(self, vec: Mapping[int, FieldElem]) -> dict[int, FieldElem]:
        """Residual of ``vec`` after eliminating every pivot coordinate."""
        v = dict(vec)
        for p, row in zip(self.pivots, self.rref_rows):
            c = v.get(p)
            if c is not None:
                _axpy(v, c, row)
        return v

    def vectors(self) -> list[dict[int, FieldElem]]:
        return [dict(r) for r in self.rref_rows]

    def matrices(self, rows: int, cols: int) -> list[Matrix]:
        if rows * cols != self.ambient_dim:
            raise ShapeMismatch(f"{rows}x{cols} does not vectorize to {self.ambient_dim}")
        return [Matrix.from_vector(dict(r), rows, cols) for r in self.rref_rows]


def _as_vector(m, ambient_dim: int) -> dict[int, FieldElem]:
    if isinstance(m, Matrix):
        if m.rows * m.cols != ambient_dim:
            raise ShapeMismatch(f"{m.shape} matrix in a span of dimension {ambient_dim}")
        return m.vectorize()
    vec = dict(m)
    if any(not (0 <= k < ambient_dim) for k in vec):
        raise ShapeMismatch("vector coordinate outside the ambient space")
    return vec


def span_insert(basis: SpanBasis, m) -> tuple[SpanBasis, bool]:
    """Return ``(span(basis + m), was_new)``; ``basis`` is left untouched."""
    v = basis.reduce(_as_vector(m, basis.ambient_dim))
    if not v:
        return basis, False
    p = min(v)
    inv = v[p].inverse()
    new_row = {k: w * inv for k, w in v.items()}
    new_items = tuple(sorted(new_row.items()))
    rows = []
    for q, row in zip(basis.pivots, basis.rref_rows):
        r = dict(row)
        c = r.get(p)
        if c is not None:
            _axpy(r, c, new_items)
            row = tuple(sorted(r.items()))
        rows.append((q, row))
    rows.append((p, new_items))
    rows.sort(key=lambda t: t[0])
    return (
        SpanBasis(basis.ambient_dim, tuple(q for q, _ in rows), tuple(r for _, r in rows)),
        True,
    )


def span_of(items: Iterable, ambient_dim: int) -> SpanBasis:
    basis = SpanBasis(ambient_dim)
    for m in items:
        basis, _ = span_insert(basis, m)
    return basis


def span_contains(basis: SpanBasis, m) -> bool:
    return not basis.reduce(_as_vector(m, basis.ambient_dim))


def span_equal(a: SpanBasis, b: SpanBasis) -> bool:
    if a.ambient_dim != b.ambient_dim:
        raise ShapeMismatch(f"ambient {a.ambient_dim} vs {b.ambient_dim}")
    return a.pivots == b.pivots and a.rref_rows == b.rref_rows


class Expander:
    """Coordinates of matrices with respect to a fixed independent list.

    >>> from zzlie.gmatrix import elementary, Expander
    >>> e11, e22 = elementary(2, 2, 1, 1), elementary(2, 2, 2, 2)
    >>> Expander([e11 + e22, e11 - e22]).expand(e11.scale(2))
    [(0, FieldElem('1')), (1, FieldElem('1'))]
    """

    def __init__(self, matrices: Sequence[Matrix]):
        self.size = len(matrices)
        self.shape = matrices[0].shape if matrices else None
        # rows: (pivot, vector, combination of originals)
        self._rows: list[tuple[int, dict, dict]] = []
        for idx, m in enumerate(matrices):
            if self.shape != m.shape:
                raise ShapeMismatch("matrices of different shapes")
            v = m.vectorize()
            combo = {idx: ONE}
            for p, rv, rc in self._rows:
                c = v.get(p)
                if c is not None:
                    _axpy(v, c, rv.items())
                    _axpy(combo, c, rc.items())
            if not v:
                raise ValueError(f"matrix {idx} is linearly dependent on the previous ones")
            p = min(v)
            inv = v[p].inverse()
            v = {k: w * inv for k, w in v.items()}
            combo = {k: w * inv for k, w in combo.items()}
            self._rows.append((p, v, combo))

    def expand(self, m: Matrix) -> list[tuple[int, FieldElem]]:
        """Sorted ``(index, coefficient)`` pairs with nonzero coefficients."""
        if self.shape is not None and m.shape != self.shape:
            raise ShapeMismatch(f"{m.shape} vs {self.shape}")
        v = m.vectorize()
        out: dict[int, FieldElem] = {}
        for p, rv, rc in self._rows:
            c = v.get(p)
            if c is not None:
                _axpy(v, c, rv.items())
                for k, w in rc.items():
                    s = out.get(k, ZERO) + c * w
                    if s.is_zero():
                        out.pop(k, None)
                    else:
                        out[k] = s
        if v:
            raise NotInSpan("matrix is not in the span")
        return sorted(out.items())
