"""Z2xZ2 degrees, the graded bracket, and the verification engines.

The bracket of homogeneous matrices of degrees ``a`` and ``b`` is

    [[x, y]] = x y - (-1)^(a.b) y x,    a.b = a1 b2 - a2 b1  (mod 2)

so it is a commutator when the pairing vanishes and an anticommutator
otherwise.  Everything here is exact; there are no tolerances.
"""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .gmatrix import (
    Expander,
    Matrix,
    NotInSpan,
    ShapeMismatch,
    SpanBasis,
    span_contains,
    span_insert,
    span_of,
)
from .report import Record, Report
from .scalar import FieldElem, parse_field

__all__ = [
    "Degree",
    "D00",
    "D01",
    "D10",
    "D11",
    "DEGREES",
    "NONZERO_DEGREES",
    "degree_add",
    "pairing",
    "HomogeneousElement",
    "GradedBasis",
    "StructureConstants",
    "EmptyGenerators",
    "GradingConflict",
    "NotClosed",
    "InvalidPermutation",
    "bracket",
    "graded_bracket",
    "check_jacobi",
    "check_closure",
    "generate",
    "generate_with_levels",
    "structure_constants",
    "check_structure_jacobi",
    "permute_grading",
]


class EmptyGenerators(ValueError):
    pass


class GradingConflict(ValueError):
    """The closed spans of the four degrees do not form a direct sum."""

    def __init__(self, message: str, spans: Mapping[Degree, SpanBasis] | None = None):
        super().__init__(message)
        self.spans = dict(spans or {})


class NotClosed(ValueError):
    pass


class InvalidPermutation(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Degree:
    a1: int
    a2: int

    def __post_init__(self):
        if self.a1 not in (0, 1) or self.a2 not in (0, 1):
            raise ValueError(f"degree components must be bits, got ({self.a1},{self.a2})")

    def __add__(self, other: Degree) -> Degree:
        return _DEG[(self.a1 ^ other.a1, self.a2 ^ other.a2)]

    def __str__(self):
        return f"({self.a1},{self.a2})"

    @property
    def key(self) -> str:
        return f"{self.a1}{self.a2}"

    def to_json(self) -> list[int]:
        return [self.a1, self.a2]

    @classmethod
    def parse(cls, text) -> Degree:
        if isinstance(text, Degree):
            return text
        if isinstance(text, (list, tuple)):
            return _DEG[(int(text[0]), int(text[1]))]
        digits = [ch for ch in str(text) if ch in "01"]
        if len(digits) != 2:
            raise ValueError(f"cannot parse degree {text!r}")
        return _DEG[(int(digits[0]), int(digits[1]))]


_DEG = {(a, b): Degree(a, b) for a in (0, 1) for b in (0, 1)}
D00, D01, D10, D11 = _DEG[(0, 0)], _DEG[(0, 1)], _DEG[(1, 0)], _DEG[(1, 1)]
DEGREES = (D00, D01, D10, D11)
NONZERO_DEGREES = (D01, D10, D11)


def degree_add(a: Degree, b: Degree) -> Degree:
    return a + b


def pairing(a: Degree, b: Degree) -> int:
    """a.b = a1 b2 - a2 b1 reduced mod 2."""
    return (a.a1 * b.a2 - a.a2 * b.a1) % 2


def bracket(x: Matrix, y: Matrix, dx: Degree, dy: Degree) -> Matrix:
    if not (x.is_square() and x.shape == y.shape):
        raise ShapeMismatch(f"bracket of {x.shape} and {y.shape}")
    if pairing(dx, dy):
        return x @ y + y @ x
    return x @ y - y @ x


@dataclass(frozen=True)
class HomogeneousElement:
    matrix: Matrix
    degree: Degree

    def __post_init__(self):
        if not self.matrix.is_square():
            raise ShapeMismatch("homogeneous elements are square matrices")


def graded_bracket(x: HomogeneousElement, y: HomogeneousElement) -> HomogeneousElement:
    return HomogeneousElement(bracket(x.matrix, y.matrix, x.degree, y.degree), x.degree + y.degree)


@dataclass(frozen=True)
class GradedBasis:
    """Linearly independent nonzero homogeneous matrices of one size."""

    dim_ambient: int
    elements: tuple[HomogeneousElement, ...]
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        elements = tuple(self.elements)
        object.__setattr__(self, "elements", elements)
        labels = tuple(self.labels) if self.labels else tuple(f"x{k + 1}" for k in range(len(elements)))
        if len(labels) != len(elements):
            raise ValueError("one label per element required")
        object.__setattr__(self, "labels", labels)
        n = self.dim_ambient
        span = SpanBasis(n * n)
        for k, el in enumerate(elements):
            if el.matrix.shape != (n, n):
                raise ShapeMismatch(f"element {labels[k]} is {el.matrix.shape}, expected {n}x{n}")
            if el.matrix.is_zero():
                raise ValueError(f"element {labels[k]} is zero")
            span, new = span_insert(span, el.matrix)
            if not new:
                raise ValueError(f"element {labels[k]} is linearly dependent on earlier elements")

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[Matrix, Degree]], labels: Sequence[str] = ()) -> GradedBasis:
        return cls(n, tuple(HomogeneousElement(m, d) for m, d in pairs), tuple(labels))

    def __len__(self):
        return len(self.elements)

    @property
    def matrices(self) -> list[Matrix]:
        return [e.matrix for e in self.elements]

    @property
    def degrees(self) -> list[Degree]:
        return [e.degree for e in self.elements]

    def indices(self, degree: Degree) -> list[int]:
        return [k for k, e in enumerate(self.elements) if e.degree == degree]

    def component(self, degree: Degree) -> list[Matrix]:
        return [e.matrix for e in self.elements if e.degree == degree]

    def signature(self) -> tuple[int, int, int, int]:
        """Per-degree dimensions in the order (0,0), (0,1), (1,0), (1,1)."""
        return tuple(len(self.indices(d)) for d in DEGREES)

    def span(self, degree: Degree | None = None) -> SpanBasis:
        mats = self.matrices if degree is None else self.component(degree)
        return span_of(mats, self.dim_ambient ** 2)


# ----------------------------------------------------------------------
# verifiers


def _jacobi_rows(matrices, degrees, rows, first_only):
    """Evaluate the graded Jacobi identity for all triples with i in ``rows``."""
    n = len(matrices)
    pair = [[bracket(matrices[j], matrices[k], degrees[j], degrees[k]) for k in range(n)] for j in range(n)]
    checked = 0
    failures = []
    for i in rows:
        xi, di = matrices[i], degrees[i]
        for j in range(n):
            xj, dj = matrices[j], degrees[j]
            pij = pair[i][j]
            dij = di + dj
            flip = pairing(di, dj)
            for k in range(n):
                dk = degrees[k]
                lhs = bracket(xi, pair[j][k], di, dj + dk)
                t1 = bracket(pij, matrices[k], dij, dk)
                t2 = bracket(xj, pair[i][k], dj, di + dk)
                residual = lhs - t1 + t2 if flip else lhs - t1 - t2
                checked += 1
                if not residual.is_zero():
                    failures.append((i, j, k, residual.pretty()))
                    if first_only:
                        return checked, failures
    return checked, failures


def _resolve_jobs(jobs: int | None) -> int:
    if jobs is None:
        jobs = int(os.environ.get("GLA_JOBS", "1") or 1)
    return max(1, jobs)


def check_jacobi(basis: GradedBasis, first_only: bool = True, jobs: int | None = 1) -> Report:
    """Graded Jacobi identity on every ordered triple of basis elements.

    With ``first_only`` the scan stops at the first violating triple.  With
    ``jobs > 1`` the outer index is split across worker processes and the
    failures are merged in triple order.
    """
    mats, degs = basis.matrices, basis.degrees
    n = len(mats)
    report = Report("jacobi")
    jobs = _resolve_jobs(jobs)
    if jobs == 1 or n < 2:
        chunks = [_jacobi_rows(mats, degs, range(n), first_only)]
    else:
        parts = [list(range(n))[w::jobs] for w in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(_jacobi_rows, mats, degs, p, first_only) for p in parts if p]
            chunks = [f.result() for f in futures]
    fails = sorted(f for _, fl in chunks for f in fl)
    report.checked = sum(c for c, _ in chunks)
    if first_only:
        fails = fails[:1]
    report.tally["jacobi"] = [report.checked, len(fails)]
    for i, j, k, res in fails:
        report.records.append(
            Record("jacobi", {"i": i, "j": j, "k": k, "labels": [basis.labels[t] for t in (i, j, k)]}, "fail", res)
        )
    return report


def check_closure(basis: GradedBasis, first_only: bool = True) -> Report:
    """Every bracket of basis elements lies in the span of the degree a+b part."""
    spans = {d: basis.span(d) for d in DEGREES}
    mats, degs = basis.matrices, basis.degrees
    report = Report("closure")
    for i, j in itertools.product(range(len(mats)), repeat=2):
        target = degs[i] + degs[j]
        b = bracket(mats[i], mats[j], degs[i], degs[j])
        ok = span_contains(spans[target], b)
        report.add(
            "closure",
            {"i": i, "j": j, "labels": [basis.labels[i], basis.labels[j]], "target": str(target)},
            ok,
            None if ok else b.pretty(),
            keep_pass=False,
        )
        if not ok and first_only:
            break
    return report


# ----------------------------------------------------------------------
# generation


def generate_with_levels(g10: Sequence[Matrix], g01: Sequence[Matrix]) -> tuple[GradedBasis, int]:
    """Close ``g10 (+) g01`` under the graded bracket.

    Returns the closed basis and the number of bracket levels that added
    something new.  Level 1 brackets the generators among themselves; each
    later level brackets the previous level's new elements with everything.
    """
    if not g10 or not g01:
        raise EmptyGenerators("both generating components must be nonempty")
    shape = g10[0].shape
    if shape[0] != shape[1]:
        raise ShapeMismatch("generators must be square")
    for m in itertools.chain(g10, g01):
        if m.shape != shape:
            raise ShapeMismatch(f"generator of shape {m.shape}, expected {shape}")
    n = shape[0]
    dim = n * n
    spans = {d: SpanBasis(dim) for d in DEGREES}
    elems: list[tuple[Matrix, Degree]] = []

    def add(m: Matrix, d: Degree) -> bool:
        spans[d], new = span_insert(spans[d], m)
        if new:
            elems.append((m, d))
        return new

    for m in g10:
        add(m, D10)
    for m in g01:
        add(m, D01)

    levels = 0
    old_count = 0
    while True:
        count = len(elems)
        new_any = False
        # pairs (a, b) with a <= b and b in the frontier [old_count, count)
        for b in range(old_count, count):
            for a in range(0, b + 1):
                x, dx = elems[a]
                y, dy = elems[b]
                if add(bracket(x, y, dx, dy), dx + dy):
                    new_any = True
        old_count = count
        if not new_any:
            break
        levels += 1

    total = span_of((m for m, _ in elems), dim)
    if total.rank != sum(s.rank for s in spans.values()):
        sig = tuple(spans[d].rank for d in DEGREES)
        raise GradingConflict(
            f"components overlap: per-degree ranks {sig} but total rank {total.rank}", spans
        )

    pairs, labels = [], []
    for d in DEGREES:
        for k, m in enumerate(spans[d].matrices(n, n)):
            pairs.append((m, d))
            labels.append(f"x{d.key}_{k + 1}")
    return GradedBasis.from_pairs(n, pairs, labels), levels


def generate(g10: Sequence[Matrix], g01: Sequence[Matrix]) -> GradedBasis:
    return generate_with_levels(g10, g01)[0]


# ----------------------------------------------------------------------
# structure constants


@dataclass
class StructureConstants:
    """Sparse c_ij^k with [[x_i, x_j]] = sum_k c_ij^k x_k (0-based indices)."""

    ambient: int
    basis_labels: list[str]
    degree_of: list[Degree]
    matrices: list[Matrix]
    entries: dict[tuple[int, int], list[tuple[int, FieldElem]]] = field(default_factory=dict)

    def coefficient(self, i: int, j: int, k: int) -> FieldElem:
        for kk, c in self.entries.get((i, j), ()):
            if kk == k:
                return c
        return FieldElem()

    def reconstruct(self, i: int, j: int) -> Matrix:
        out = Matrix(self.ambient, self.ambient)
        for k, c in self.entries.get((i, j), ()):
            out = out + self.matrices[k].scale(c)
        return out

    def to_json(self) -> dict:
        return {
            "ambient": self.ambient,
            "basis": [
                {"label": lab, "degree": d.to_json(), "matrix": m.to_text()}
                for lab, d, m in zip(self.basis_labels, self.degree_of, self.matrices)
            ],
            "brackets": [
                {"i": i, "j": j, "terms": [{"k": k, "c": c.canonical()} for k, c in terms]}
                for (i, j), terms in sorted(self.entries.items())
            ],
        }

    @classmethod
    def from_json(cls, doc: dict) -> StructureConstants:
        basis = doc["basis"]
        entries = {}
        for br in doc["brackets"]:
            terms = [(int(t["k"]), parse_field(t["c"])) for t in br["terms"]]
            if terms:
                entries[(int(br["i"]), int(br["j"]))] = terms
        return cls(
            ambient=int(doc["ambient"]),
            basis_labels=[b["label"] for b in basis],
            degree_of=[Degree.parse(b["degree"]) for b in basis],
            matrices=[Matrix.from_text(b["matrix"]) for b in basis],
            entries=entries,
        )


def structure_constants(basis: GradedBasis) -> StructureConstants:
    comp = {d: basis.indices(d) for d in DEGREES}
    expanders = {d: Expander([basis.elements[k].matrix for k in comp[d]]) for d in DEGREES if comp[d]}
    mats, degs = basis.matrices, basis.degrees
    entries = {}
    for i, j in itertools.product(range(len(mats)), repeat=2):
        b = bracket(mats[i], mats[j], degs[i], degs[j])
        if b.is_zero():
            continue
        target = degs[i] + degs[j]
        if target not in expanders:
            raise NotClosed(f"[[{basis.labels[i]}, {basis.labels[j]}]] is nonzero but degree {target} is empty")
        try:
            local = expanders[target].expand(b)
        except NotInSpan:
            raise NotClosed(
                f"[[{basis.labels[i]}, {basis.labels[j]}]] is outside the degree {target} component"
            ) from None
        entries[(i, j)] = [(comp[target][t], c) for t, c in local]
    return StructureConstants(basis.dim_ambient, list(basis.labels), list(degs), list(mats), entries)



def check_structure_jacobi(sc: StructureConstants, first_only: bool = True) -> Report:
    """Graded Jacobi identity written in the structure constants alone.

    The matrix-level check cannot fail once degrees add under the bracket,
    whatever degree each matrix is given.  This form uses the listed
    degrees only through the sign factor, so a table whose degrees do not
    fit its coefficients is caught.
    """
    n = len(sc.degree_of)
    report = Report("structure-jacobi")
    table = [[dict(sc.entries.get((i, j), ())) for j in range(n)] for i in range(n)]

    def compose(first: dict, outer_left: int | None, outer_right: int | None) -> dict:
        out: dict[int, FieldElem] = {}
        for m, c in first.items():
            row = table[outer_left][m] if outer_left is not None else table[m][outer_right]
            for l, d in row.items():
                v = out.get(l, FieldElem()) + c * d
                if v.is_zero():
                    out.pop(l, None)
                else:
                    out[l] = v
        return out

    for i, j, k in itertools.product(range(n), repeat=3):
        lhs = compose(table[j][k], i, None)
        t1 = compose(table[i][j], None, k)
        t2 = compose(table[i][k], j, None)
        flip = pairing(sc.degree_of[i], sc.degree_of[j]) == 1
        res = dict(lhs)
        for term, sign in ((t1, -1), (t2, 1 if flip else -1)):
            for l, v in term.items():
                w = res.get(l, FieldElem()) + (v if sign > 0 else -v)
                if w.is_zero():
                    res.pop(l, None)
                else:
                    res[l] = w
        report.checked += 1
        if res:
            shown = " + ".join(f"({c})*{sc.basis_labels[l]}" for l, c in sorted(res.items()))
            report.records.append(Record("structure-jacobi", {"i": i, "j": j, "k": k}, "fail", shown))
            if first_only:
                break
    report.tally["structure-jacobi"] = [report.checked, len(report.records)]
    return report

# ----------------------------------------------------------------------
# trivial permutation transformations


def permute_grading(basis: GradedBasis, perm: Mapping) -> GradedBasis:
    """Relabel the three nonzero degrees by ``perm`` (which must fix (0,0))."""
    mapping = {Degree.parse(k): Degree.parse(v) for k, v in dict(perm).items()}
    if mapping.get(D00, D00) != D00 or D00 in {mapping[k] for k in mapping if k != D00}:
        raise InvalidPermutation("a trivial permutation transformation must fix (0,0)")
    full = {d: mapping.get(d, d) for d in DEGREES}
    if sorted(full.values()) != sorted(DEGREES):
        raise InvalidPermutation(f"not a bijection: {full}")
    return GradedBasis.from_pairs(
        basis.dim_ambient,
        ((e.matrix, full[e.degree]) for e in basis.elements),
        basis.labels,
    )
