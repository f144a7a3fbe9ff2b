"""Defining-matrix families: the classical forms and their graded analogues.

Each family is described by a block layout written the way it is printed,
one token per cell::

    a00      free block of degree (0,0)
    a11~     a second, independent free block (the tilde is part of the name)
    -a00^t   minus the transpose of block a00
    0        a cell that is always zero

Tokens without degree digits (the classical forms) have degree (0,0).
Diagonal-structure constraints (antisymmetric / symmetric) are listed per
family by block name.  The layout is parsed into a :class:`GradingMask`,
from which the basis, the membership test and the per-degree split are all
derived.
"""

from __future__ import annotations

import enum
import itertools
import re
from dataclasses import dataclass, field
from functools import lru_cache

from .gmatrix import Matrix, ShapeMismatch
from .graded import D00, D01, D10, D11, DEGREES, Degree, GradedBasis, bracket
from .report import Report

__all__ = [
    "Family",
    "AlgebraSpec",
    "InvalidSpec",
    "NotMember",
    "Cell",
    "GradingMask",
    "build",
    "mask_for",
    "dims_formula",
    "decompose",
    "check_mask_closure",
    "parse_spec",
    "compositions",
    "specs_with_ambient",
    "LAYOUTS",
]


class InvalidSpec(ValueError):
    pass


class NotMember(ValueError):
    pass


class Family(enum.Enum):
    SL_CLASSICAL = "sl"
    SO_ODD_CLASSICAL = "so-odd"
    SP_CLASSICAL = "sp"
    SO_EVEN_CLASSICAL = "so-even"
    ZZ_SL = "zz-sl"
    ZZ_SO_PQRS = "zz-so-pqrs"
    ZZ_SO_ODD = "zz-so-odd"
    ZZ_SO_ODD_VARIANT = "zz-so-odd-b"
    ZZ_SP = "zz-sp"
    ZZ_SO_EVEN = "zz-so-even"

    @property
    def classical(self) -> bool:
        return not self.value.startswith("zz-")


CLASSICAL = (Family.SL_CLASSICAL, Family.SO_ODD_CLASSICAL, Family.SP_CLASSICAL, Family.SO_EVEN_CLASSICAL)
PQRS_FAMILIES = (Family.ZZ_SL, Family.ZZ_SO_PQRS)
NP_FAMILIES = (Family.ZZ_SO_ODD, Family.ZZ_SO_ODD_VARIANT, Family.ZZ_SP, Family.ZZ_SO_EVEN)


@dataclass(frozen=True)
class AlgebraSpec:
    family: Family
    params: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "params", tuple(int(x) for x in self.params))
        self.validate()

    def validate(self):
        f, ps = self.family, self.params
        if f in PQRS_FAMILIES:
            if len(ps) != 4:
                raise InvalidSpec(f"{f.value} takes four parameters p,q,r,s, got {len(ps)}")
            if min(ps) < 0:
                raise InvalidSpec(f"{f.value}: parameters must be >= 0")
            if f is Family.ZZ_SL and sum(ps) < 2:
                raise InvalidSpec("zz-sl: p+q+r+s = n+1 must be at least 2")
            if f is Family.ZZ_SO_PQRS and sum(ps) < 1:
                raise InvalidSpec("zz-so-pqrs: p+q+r+s = N must be at least 1")
        elif f in NP_FAMILIES:
            if len(ps) != 2:
                raise InvalidSpec(f"{f.value} takes two parameters n,p, got {len(ps)}")
            n, p = ps
            if not 1 <= p < n:
                raise InvalidSpec(f"{f.value}: need 1 <= p < n, got n={n}, p={p}")
        else:
            if len(ps) != 1:
                raise InvalidSpec(f"{f.value} takes one parameter n, got {len(ps)}")
            if ps[0] < 1:
                raise InvalidSpec(f"{f.value}: need n >= 1")

    @property
    def n(self) -> int:
        if self.family in PQRS_FAMILIES:
            total = sum(self.params)
            return total - 1 if self.family is Family.ZZ_SL else total
        return self.params[0]

    @property
    def ambient(self) -> int:
        f, ps = self.family, self.params
        if f in PQRS_FAMILIES:
            return sum(ps)
        n = ps[0]
        if f in (Family.SO_ODD_CLASSICAL, Family.ZZ_SO_ODD, Family.ZZ_SO_ODD_VARIANT):
            return 2 * n + 1
        if f is Family.SL_CLASSICAL:
            return n + 1
        return 2 * n

    def __str__(self):
        return f"{self.family.value}:{','.join(str(x) for x in self.params)}"


def parse_spec(text: str) -> AlgebraSpec:
    """Parse ``"zz-sl:1,1,1,0"``, ``"zz-so-odd:2,1"``, ``"sp:3"`` and friends."""
    name, sep, rest = text.strip().partition(":")
    if not sep:
        raise InvalidSpec(f"missing ':' in spec {text!r}")
    try:
        family = Family(name.strip().lower())
    except ValueError:
        raise InvalidSpec(f"unknown family {name!r}") from None
    params = []
    for tok in rest.split(","):
        tok = tok.strip()
        if not re.fullmatch(r"\d+", tok):
            raise InvalidSpec(f"bad parameter {tok!r} in {text!r}")
        params.append(int(tok))
    return AlgebraSpec(family, tuple(params))


# ----------------------------------------------------------------------
# layouts

LAYOUTS: dict[Family, dict] = {
    Family.SL_CLASSICAL: {
        "rows": ["a"],
        "traceless": True,
    },
    Family.SO_ODD_CLASSICAL: {
        "rows": [
            "a     b     c",
            "d    -a^t   e",
            "-e^t -c^t   0",
        ],
        "antisymmetric": {"b", "d"},
    },
    Family.SP_CLASSICAL: {
        "rows": ["a b", "c -a^t"],
        "symmetric": {"b", "c"},
    },
    Family.SO_EVEN_CLASSICAL: {
        "rows": ["a b", "c -a^t"],
        "antisymmetric": {"b", "c"},
    },
    Family.ZZ_SL: {
        "rows": [
            "a00 a01 a10 a11",
            "b01 b00 b11 b10",
            "c10 c11 c00 c01",
            "d11 d10 d01 d00",
        ],
        "traceless": True,
    },
    # The transpose-linked (1,1) cells carry a plus sign: with the minus
    # signs of the printed display the form is not closed under the bracket
    # (see ZZ_SO_PQRS_AS_PRINTED below).
    Family.ZZ_SO_PQRS: {
        "rows": [
            "a00   a01   a10   a11",
            "a01^t b00   b11   b10",
            "a10^t b11^t c00   c01",
            "a11^t b10^t c01^t d00",
        ],
        "antisymmetric": {"a00", "b00", "c00", "d00"},
    },
    Family.ZZ_SO_ODD: {
        "rows": [
            "a00    a11    b00     b11     c01",
            "a11~   a00~   b11^t   b00~    c10",
            "d00    d11   -a00^t   a11~^t  e01",
            "d11^t  d00~   a11^t  -a00~^t  e10",
            "-e01^t -e10^t -c01^t -c10^t   0",
        ],
        "antisymmetric": {"b00", "b00~", "d00", "d00~"},
    },
    Family.ZZ_SO_ODD_VARIANT: {
        "rows": [
            "a00    a11    b00     b11     c01",
            "a11~   a00~  -b11^t   b00~    c10",
            "d00    d11   -a00^t  -a11~^t  e01",
            "-d11^t d00~  -a11^t  -a00~^t  e10",
            "-e01^t e10^t -c01^t   c10^t   0",
        ],
        "antisymmetric": {"b00", "b00~", "d00", "d00~"},
    },
    Family.ZZ_SP: {
        "rows": [
            "a00    a10    b11     b01",
            "a10~   a00~  -b01^t   b11~",
            "c11    c01   -a00^t  -a10~^t",
            "-c01^t c11~  -a10^t  -a00~^t",
        ],
        "symmetric": {"b11", "b11~", "c11", "c11~"},
    },
    Family.ZZ_SO_EVEN: {
        "rows": [
            "a00    a10    b11     b01",
            "a10~   a00~   b01^t   b11~",
            "c11    c01   -a00^t  -a10~^t",
            "c01^t  c11~  -a10^t  -a00~^t",
        ],
        "antisymmetric": {"b11", "b11~", "c11", "c11~"},
    },
}

# The so(p,q,r,s) display with its signs taken literally; kept so the
# non-closure can be demonstrated, never used by build().
ZZ_SO_PQRS_AS_PRINTED = {
    "rows": [
        "a00    a01    a10   a11",
        "a01^t  b00    b11   b10",
        "a10^t -b11^t  c00   c01",
        "-a11^t b10^t  c01^t d00",
    ],
    "antisymmetric": {"a00", "b00", "c00", "d00"},
}

_TOKEN = re.compile(r"^(-?)([a-z])(\d\d)?(~?)(\^t)?$")


@dataclass(frozen=True)
class Cell:
    """One block of a layout.

    kind is ``free``, ``dependent`` (sign * transpose of a free cell) or
    ``zero``; ``structure`` applies to free cells: ``general``,
    ``antisymmetric`` or ``symmetric``.
    """

    kind: str
    degree: Degree
    name: str = ""
    sign: int = 1
    transpose: bool = False
    structure: str = "general"

    def describe(self) -> str:
        if self.kind == "zero":
            return "0"
        if self.kind == "free":
            return self.name if self.structure == "general" else f"{self.name} ({self.structure})"
        return f"{'-' if self.sign < 0 else ''}{self.name}{'^t' if self.transpose else ''}"


@dataclass(frozen=True)
class GradingMask:
    block_sizes: tuple[int, ...]
    cells: tuple[tuple[Cell, ...], ...]
    traceless: bool = False
    offsets: tuple[int, ...] = field(init=False)
    free_index: dict = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        offs = [0]
        for s in self.block_sizes:
            offs.append(offs[-1] + s)
        object.__setattr__(self, "offsets", tuple(offs))
        free = {}
        for bi, row in enumerate(self.cells):
            for bj, cell in enumerate(row):
                if cell.kind == "free":
                    if cell.name in free:
                        raise ValueError(f"block {cell.name} defined twice")
                    free[cell.name] = (bi, bj)
        for bi, row in enumerate(self.cells):
            for bj, cell in enumerate(row):
                if cell.kind == "dependent":
                    if cell.name not in free:
                        raise ValueError(f"cell ({bi},{bj}) references unknown block {cell.name}")
                    fi, fj = free[cell.name]
                    want = (self.block_sizes[fj], self.block_sizes[fi]) if cell.transpose else (
                        self.block_sizes[fi], self.block_sizes[fj])
                    if want != (self.block_sizes[bi], self.block_sizes[bj]):
                        raise ValueError(f"cell ({bi},{bj}) has the wrong shape for {cell.describe()}")
        object.__setattr__(self, "free_index", free)

    @property
    def size(self) -> int:
        return self.offsets[-1]

    @property
    def block_rows(self) -> tuple[int, ...]:
        return self.block_sizes

    @property
    def block_cols(self) -> tuple[int, ...]:
        return self.block_sizes

    def cell_degree(self, bi: int, bj: int) -> Degree:
        return self.cells[bi][bj].degree

    def constraints(self) -> list[str]:
        out = []
        for bi, row in enumerate(self.cells):
            for bj, cell in enumerate(row):
                if cell.kind != "free" or cell.structure != "general":
                    out.append(f"block ({bi + 1},{bj + 1}): {cell.describe()}")
        if self.traceless:
            out.append("traceless")
        return out

    def block_of(self, i: int) -> tuple[int, int]:
        """(block index, offset inside the block) of a global row/column index."""
        for b in range(len(self.block_sizes)):
            if self.offsets[b] <= i < self.offsets[b + 1]:
                return b, i - self.offsets[b]
        raise IndexError(i)

    def degree_at(self, i: int, j: int) -> Degree:
        return self.cells[self.block_of(i)[0]][self.block_of(j)[0]].degree


def parse_layout(layout: dict, block_sizes: tuple[int, ...]) -> GradingMask:
    anti = layout.get("antisymmetric", set())
    sym = layout.get("symmetric", set())
    cells = []
    for line in layout["rows"]:
        row = []
        for tok in line.split():
            if tok == "0":
                row.append(Cell("zero", D00))
                continue
            m = _TOKEN.match(tok)
            if m is None:
                raise ValueError(f"bad layout token {tok!r}")
            minus, letter, digits, tilde, tr = m.groups()
            degree = Degree.parse(digits) if digits else D00
            name = letter + (digits or "") + tilde
            if minus or tr:
                row.append(Cell("dependent", degree, name, -1 if minus else 1, bool(tr)))
            else:
                structure = "antisymmetric" if name in anti else "symmetric" if name in sym else "general"
                row.append(Cell("free", degree, name, structure=structure))
        cells.append(tuple(row))
    if len(cells) != len(block_sizes) or any(len(r) != len(block_sizes) for r in cells):
        raise ValueError("layout does not match the number of blocks")
    return GradingMask(tuple(block_sizes), tuple(cells), bool(layout.get("traceless")))


def _block_sizes(spec: AlgebraSpec) -> tuple[int, ...]:
    f, ps = spec.family, spec.params
    if f in PQRS_FAMILIES:
        return ps
    if f is Family.SL_CLASSICAL:
        return (ps[0] + 1,)
    if f is Family.SO_ODD_CLASSICAL:
        return (ps[0], ps[0], 1)
    if f in (Family.SP_CLASSICAL, Family.SO_EVEN_CLASSICAL):
        return (ps[0], ps[0])
    n, p = ps
    if f in (Family.ZZ_SO_ODD, Family.ZZ_SO_ODD_VARIANT):
        return (p, n - p, p, n - p, 1)
    return (p, n - p, p, n - p)


def mask_for(spec: AlgebraSpec) -> GradingMask:
    return parse_layout(LAYOUTS[spec.family], _block_sizes(spec))


# ----------------------------------------------------------------------
# basis construction


def _free_patterns(cell: Cell, rows: int, cols: int):
    """(label suffix, {(u, v): value}) for each free parameter of a cell."""
    if cell.structure == "antisymmetric":
        for u, v in itertools.combinations(range(rows), 2):
            yield f"[{u + 1},{v + 1}]", {(u, v): 1, (v, u): -1}
    elif cell.structure == "symmetric":
        for u in range(rows):
            for v in range(u, rows):
                yield f"[{u + 1},{v + 1}]", ({(u, u): 1} if u == v else {(u, v): 1, (v, u): 1})
    else:
        for u in range(rows):
            for v in range(cols):
                yield f"[{u + 1},{v + 1}]", {(u, v): 1}


def basis_from_mask(mask: GradingMask) -> GradedBasis:
    sizes, offs = mask.block_sizes, mask.offsets
    dependents: dict[str, list[tuple[int, int, Cell]]] = {}
    for bi, row in enumerate(mask.cells):
        for bj, cell in enumerate(row):
            if cell.kind == "dependent":
                dependents.setdefault(cell.name, []).append((bi, bj, cell))

    by_degree: dict[Degree, list[tuple[Matrix, str]]] = {d: [] for d in DEGREES}
    for bi, row in enumerate(mask.cells):
        for bj, cell in enumerate(row):
            if cell.kind != "free":
                continue
            for suffix, local in _free_patterns(cell, sizes[bi], sizes[bj]):
                if mask.traceless and bi == bj and any(u == v for u, v in local):
                    continue
                entries = {}
                for (u, v), val in local.items():
                    entries[(offs[bi] + u, offs[bj] + v)] = val
                    for di, dj, dep in dependents.get(cell.name, ()):
                        uu, vv = (v, u) if dep.transpose else (u, v)
                        entries[(offs[di] + uu, offs[dj] + vv)] = dep.sign * val
                by_degree[cell.degree].append((Matrix(mask.size, mask.size, entries), cell.name + suffix))
    if mask.traceless:
        for j in range(mask.size - 1):
            if mask.degree_at(j, j) != D00 or mask.degree_at(j + 1, j + 1) != D00:
                raise ValueError("traceless masks need degree (0,0) on the diagonal")
            h = Matrix(mask.size, mask.size, {(j, j): 1, (j + 1, j + 1): -1})
            by_degree[D00].append((h, f"h{j + 1}"))

    pairs, labels = [], []
    for d in DEGREES:
        for m, lab in by_degree[d]:
            pairs.append((m, d))
            labels.append(lab)
    return GradedBasis.from_pairs(mask.size, pairs, labels)


@lru_cache(maxsize=None)
def build(spec: AlgebraSpec) -> tuple[GradedBasis, GradingMask]:
    """Explicit homogeneous basis and grading mask of a family instance."""
    spec.validate()
    mask = mask_for(spec)
    return basis_from_mask(mask), mask


# ----------------------------------------------------------------------
# closed-form dimensions


def dims_formula(spec: AlgebraSpec) -> dict[Degree, int]:
    f, ps = spec.family, spec.params
    spec.validate()
    if f is Family.ZZ_SL:
        p, q, r, s = ps
        return {
            D00: p * p + q * q + r * r + s * s - 1,
            D01: 2 * p * q + 2 * r * s,
            D10: 2 * p * r + 2 * q * s,
            D11: 2 * q * r + 2 * p * s,
        }
    if f is Family.ZZ_SO_PQRS:
        p, q, r, s = ps
        return {
            D00: (p * (p - 1) + q * (q - 1) + r * (r - 1) + s * (s - 1)) // 2,
            D01: p * q + r * s,
            D10: p * r + q * s,
            D11: q * r + p * s,
        }
    if f in (Family.ZZ_SO_ODD, Family.ZZ_SO_ODD_VARIANT):
        n, p = ps
        return {D00: 2 * n * n - n - 4 * p * (n - p), D01: 2 * p, D10: 2 * (n - p), D11: 4 * p * (n - p)}
    if f is Family.ZZ_SP:
        n, p = ps
        return {
            D00: p * p + (n - p) ** 2,
            D01: 2 * p * (n - p),
            D10: 2 * p * (n - p),
            D11: p * (p + 1) + (n - p) * (n - p + 1),
        }
    if f is Family.ZZ_SO_EVEN:
        n, p = ps
        return {
            D00: p * p + (n - p) ** 2,
            D01: 2 * p * (n - p),
            D10: 2 * p * (n - p),
            D11: p * (p - 1) + (n - p) * (n - p - 1),
        }
    n = ps[0]
    total = {
        Family.SL_CLASSICAL: n * n + 2 * n,
        Family.SO_ODD_CLASSICAL: 2 * n * n + n,
        Family.SP_CLASSICAL: 2 * n * n + n,
        Family.SO_EVEN_CLASSICAL: 2 * n * n - n,
    }[f]
    return {D00: total, D01: 0, D10: 0, D11: 0}


def signature_of(dims: dict[Degree, int]) -> tuple[int, int, int, int]:
    return tuple(dims[d] for d in DEGREES)


# ----------------------------------------------------------------------
# membership


def _block(m: Matrix, mask: GradingMask, bi: int, bj: int) -> dict[tuple[int, int], object]:
    offs = mask.offsets
    r0, r1, c0, c1 = offs[bi], offs[bi + 1], offs[bj], offs[bj + 1]
    return {(i - r0, j - c0): v for (i, j), v in m.items() if r0 <= i < r1 and c0 <= j < c1}


def decompose(mask: GradingMask, m: Matrix) -> dict[Degree, Matrix]:
    """Split ``m`` into its four degree components, or raise NotMember."""
    n = mask.size
    if m.shape != (n, n):
        raise ShapeMismatch(f"{m.shape} matrix against a {n}x{n} mask")
    for bi, row in enumerate(mask.cells):
        for bj, cell in enumerate(row):
            blk = _block(m, mask, bi, bj)
            where = f"block ({bi + 1},{bj + 1})"
            if cell.kind == "zero":
                if blk:
                    raise NotMember(f"{where} must be zero")
            elif cell.kind == "free":
                if cell.structure == "antisymmetric":
                    for (u, v), val in blk.items():
                        if blk.get((v, u)) != -val:
                            raise NotMember(f"{where} ({cell.name}) must be antisymmetric")
                elif cell.structure == "symmetric":
                    for (u, v), val in blk.items():
                        if blk.get((v, u)) != val:
                            raise NotMember(f"{where} ({cell.name}) must be symmetric")
            else:
                fi, fj = mask.free_index[cell.name]
                src = _block(m, mask, fi, fj)
                expect = {((v, u) if cell.transpose else (u, v)): -val if cell.sign < 0 else val
                          for (u, v), val in src.items()}
                if blk != expect:
                    raise NotMember(f"{where} must equal {cell.describe()}")
    if mask.traceless and not m.trace().is_zero():
        raise NotMember("matrix must be traceless")
    parts = {d: {} for d in DEGREES}
    for (i, j), v in m.items():
        parts[mask.degree_at(i, j)][(i, j)] = v
    return {d: Matrix(n, n, parts[d]) for d in DEGREES}


def check_mask_closure(basis: GradedBasis, mask: GradingMask, first_only: bool = True) -> Report:
    """Each bracket of basis elements is in the mask space and purely of degree a+b."""
    report = Report("mask-closure")
    mats, degs = basis.matrices, basis.degrees
    for i, j in itertools.product(range(len(mats)), repeat=2):
        target = degs[i] + degs[j]
        b = bracket(mats[i], mats[j], degs[i], degs[j])
        idx = {"i": i, "j": j, "labels": [basis.labels[i], basis.labels[j]], "target": str(target)}
        try:
            parts = decompose(mask, b)
        except NotMember as exc:
            report.add("mask-closure", idx, False, str(exc), keep_pass=False)
        else:
            stray = [str(d) for d in DEGREES if d != target and not parts[d].is_zero()]
            report.add("mask-closure", idx, not stray,
                       f"components outside {target}: {', '.join(stray)}" if stray else None, keep_pass=False)
        if first_only and not report.passed:
            break
    return report


# ----------------------------------------------------------------------
# enumeration helpers


def compositions(total: int, parts: int = 4):
    """Weak compositions of ``total`` into ``parts`` nonnegative integers, lexicographically descending."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def specs_with_ambient(size: int, classical: bool = True) -> list[AlgebraSpec]:
    """Every family instance whose matrices are ``size x size``, in a fixed order."""
    out = []
    if size >= 2:
        out += [AlgebraSpec(Family.ZZ_SL, c) for c in compositions(size)]
    if size >= 1:
        out += [AlgebraSpec(Family.ZZ_SO_PQRS, c) for c in compositions(size)]
    if size % 2 == 1:
        n = (size - 1) // 2
        for fam in (Family.ZZ_SO_ODD, Family.ZZ_SO_ODD_VARIANT):
            out += [AlgebraSpec(fam, (n, p)) for p in range(1, n)]
    else:
        n = size // 2
        for fam in (Family.ZZ_SP, Family.ZZ_SO_EVEN):
            out += [AlgebraSpec(fam, (n, p)) for p in range(1, n)]
    if classical:
        if size >= 2:
            out.append(AlgebraSpec(Family.SL_CLASSICAL, (size - 1,)))
        if size % 2 == 1 and size >= 3:
            out.append(AlgebraSpec(Family.SO_ODD_CLASSICAL, ((size - 1) // 2,)))
        if size % 2 == 0 and size >= 2:
            out.append(AlgebraSpec(Family.SP_CLASSICAL, (size // 2,)))
            out.append(AlgebraSpec(Family.SO_EVEN_CLASSICAL, (size // 2,)))
    return out
