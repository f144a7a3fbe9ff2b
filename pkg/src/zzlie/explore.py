"""Search tools: partition-and-close over a generator basis, and a bounded
graded-isomorphism search."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Sequence

from .families import (
    AlgebraSpec,
    NotMember,
    build,
    dims_formula,
    mask_for,
    decompose,
    signature_of,
    specs_with_ambient,
)
from .gmatrix import Matrix, SpanBasis, span_equal, span_insert
from .graded import (
    DEGREES,
    GradedBasis,
    GradingConflict,
    _resolve_jobs,
    check_closure,
    check_jacobi,
    generate,
    structure_constants,
)
from .scalar import FieldElem

__all__ = [
    "InvalidGenerators",
    "NotIsomorphicSignature",
    "PartitionTask",
    "ClassificationResult",
    "canonical_colorings",
    "classify",
    "run_partition_search",
    "search_report",
    "GradedIsomorphism",
    "NotFoundWithinBudget",
    "find_graded_isomorphism",
]


class InvalidGenerators(ValueError):
    pass


class NotIsomorphicSignature(ValueError):
    pass


@dataclass(frozen=True)
class PartitionTask:
    """One 2-coloring of a generator list: bit 0 gives (0,1), bit 1 gives (1,0)."""

    ambient: AlgebraSpec
    generators: tuple[Matrix, ...]
    coloring: tuple[int, ...]

    def __post_init__(self):
        if len(self.coloring) != len(self.generators):
            raise InvalidGenerators("one color per generator required")
        if set(self.coloring) != {0, 1}:
            raise InvalidGenerators("both color classes must be nonempty")

    @property
    def bitstring(self) -> str:
        return "".join(map(str, self.coloring))

    def split(self) -> tuple[list[Matrix], list[Matrix]]:
        g10 = [g for g, c in zip(self.generators, self.coloring) if c == 1]
        g01 = [g for g, c in zip(self.generators, self.coloring) if c == 0]
        return g10, g01


@dataclass
class ClassificationResult:
    coloring: str
    signature: tuple[int, int, int, int] | None
    matched_family: AlgebraSpec | None
    valid: bool
    contained_in_ambient: bool
    all_matches: list[AlgebraSpec] = field(default_factory=list)
    exact_match: bool = False  # matched_family agrees span by span, not only in dimensions
    error: str | None = None
    basis: GradedBasis | None = field(default=None, repr=False, compare=False)

    def to_json(self) -> dict[str, Any]:
        return {
            "coloring": self.coloring,
            "signature": list(self.signature) if self.signature else None,
            "valid": self.valid,
            "matched_family": str(self.matched_family) if self.matched_family else None,
            "exact_match": self.exact_match,
            "all_matches": [str(s) for s in self.all_matches],
            "contained_in_ambient": self.contained_in_ambient,
            "error": self.error,
        }


def canonical_colorings(m: int) -> list[tuple[int, ...]]:
    """Colorings of m generators up to swapping the two colors.

    Binary counting with generator i on bit i; generator 0 is pinned to
    color 0 and the all-zero coloring is dropped, leaving 2**(m-1) - 1.
    """
    out = []
    for c in range(2, 2**m, 2):
        out.append(tuple((c >> i) & 1 for i in range(m)))
    return out


def _validate_generators(ambient: AlgebraSpec, generators: Sequence[Matrix]) -> tuple[Matrix, ...]:
    size = ambient.ambient
    gens = tuple(generators)
    if len(gens) < 2:
        raise InvalidGenerators("need at least two generators")
    span = SpanBasis(size * size)
    for g in gens:
        if g.shape != (size, size):
            raise InvalidGenerators(f"generator of shape {g.shape} in a {size}x{size} ambient")
        span, new = span_insert(span, g)
        if not new:
            raise InvalidGenerators("generators are linearly dependent")
    return gens


def _contained(basis: GradedBasis, ambient: AlgebraSpec) -> bool:
    mask = mask_for(ambient)
    try:
        for m in basis.matrices:
            decompose(mask, m)
    except NotMember:
        return False
    return True


def _match(basis: GradedBasis, signature) -> tuple[AlgebraSpec | None, list[AlgebraSpec], bool]:
    size = basis.dim_ambient
    matches = [s for s in specs_with_ambient(size) if signature_of(dims_formula(s)) == signature]
    for s in matches:
        family, _ = build(s)
        if all(span_equal(basis.span(d), family.span(d)) for d in DEGREES):
            return s, matches, True
    return (matches[0] if matches else None), matches, False


def classify(task: PartitionTask, jobs: int = 1) -> ClassificationResult:
    """Close one coloring under the graded bracket and classify the outcome."""
    g10, g01 = task.split()
    try:
        basis = generate(g10, g01)
    except GradingConflict as exc:
        return ClassificationResult(task.bitstring, None, None, False, False, error=str(exc))
    sig = basis.signature()
    valid = check_closure(basis).passed and check_jacobi(basis, jobs=jobs).passed
    contained = _contained(basis, task.ambient)
    matched, matches, exact = _match(basis, sig)
    return ClassificationResult(task.bitstring, sig, matched, valid, contained, matches, exact, basis=basis)


def run_partition_search(
    ambient: AlgebraSpec, generators: Sequence[Matrix], jobs: int | None = 1
) -> list[ClassificationResult]:
    """Classify every coloring of ``generators`` (up to color swap), in enumeration order."""
    if not ambient.family.classical:
        raise InvalidGenerators(f"ambient {ambient} is not a classical algebra")
    gens = _validate_generators(ambient, generators)
    tasks = [PartitionTask(ambient, gens, c) for c in canonical_colorings(len(gens))]
    jobs = _resolve_jobs(jobs)
    if jobs == 1 or len(tasks) < 2:
        return [classify(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(classify, tasks))


def search_report(ambient: AlgebraSpec, results: Sequence[ClassificationResult]) -> dict[str, Any]:
    return {
        "ambient": str(ambient),
        "colorings": len(results),
        "valid": sum(r.valid for r in results),
        "results": [r.to_json() for r in results],
    }


# ----------------------------------------------------------------------
# isomorphism search


@dataclass(frozen=True)
class GradedIsomorphism:
    """x_i of the first basis maps to signs[i] * y_{images[i]} of the second."""

    images: tuple[int, ...]
    signs: tuple[int, ...]
    tested: int

    def to_json(self) -> dict[str, Any]:
        return {
            "found": True,
            "map": [{"source": i, "target": t, "sign": s} for i, (t, s) in enumerate(zip(self.images, self.signs))],
            "tested": self.tested,
        }


@dataclass(frozen=True)
class NotFoundWithinBudget:
    """No signed-permutation witness was found.

    ``exhausted`` tells whether the whole restricted class was searched; even
    then this says nothing about isomorphism by general linear maps.
    """

    tested: int
    budget: int
    exhausted: bool

    def to_json(self) -> dict[str, Any]:
        return {"found": False, "tested": self.tested, "budget": self.budget, "exhausted": self.exhausted}


def _table(basis: GradedBasis) -> dict[tuple[int, int], dict[int, FieldElem]]:
    sc = structure_constants(basis)
    return {key: dict(terms) for key, terms in sc.entries.items()}


def find_graded_isomorphism(
    a: GradedBasis, b: GradedBasis, budget: int = 10**7
) -> GradedIsomorphism | NotFoundWithinBudget:
    """Backtracking search for a degree-preserving signed permutation that
    carries the structure constants of ``a`` onto those of ``b``.

    Each tentative assignment of one basis element counts against ``budget``.
    Elements are assigned in basis order, targets in increasing index with
    sign +1 before -1, so the outcome is deterministic.
    """
    if a.signature() != b.signature():
        raise NotIsomorphicSignature(f"signatures {a.signature()} and {b.signature()} differ")
    ca, cb = _table(a), _table(b)
    n = len(a)
    targets = [b.indices(d) for d in a.degrees]
    zero = FieldElem()
    images: list[int] = []
    signs: list[int] = []
    used: set[int] = set()
    tested = 0
    out_of_budget = False

    def coeff(table, i, j, k):
        return table.get((i, j), {}).get(k, zero)

    def consistent(t: int) -> bool:
        # every triple among assigned indices that involves t
        for i in range(t + 1):
            for j in range(t + 1):
                if t not in (i, j):
                    ks = (t,)
                else:
                    ks = range(t + 1)
                for k in ks:
                    lhs = coeff(ca, i, j, k)
                    rhs = coeff(cb, images[i], images[j], images[k])
                    if signs[k] * signs[i] * signs[j] < 0:
                        rhs = -rhs
                    if lhs != rhs:
                        return False
        return True

    def extend(t: int) -> GradedIsomorphism | None:
        nonlocal tested, out_of_budget
        if t == n:
            return GradedIsomorphism(tuple(images), tuple(signs), tested)
        for target in targets[t]:
            if target in used:
                continue
            for s in (1, -1):
                if tested >= budget:
                    out_of_budget = True
                    return None
                tested += 1
                images.append(target)
                signs.append(s)
                used.add(target)
                if consistent(t):
                    found = extend(t + 1)
                    if found is not None:
                        return found
                images.pop()
                signs.pop()
                used.discard(target)
        return None

    found = extend(0)
    if found is not None:
        return found
    return NotFoundWithinBudget(tested, budget, exhausted=not out_of_budget)


def apply_isomorphism(iso: GradedIsomorphism, b: GradedBasis) -> list[Matrix]:
    """Images of the first basis elements, as matrices of the second algebra."""
    return [b.matrices[t].scale(s) for t, s in zip(iso.images, iso.signs)]
