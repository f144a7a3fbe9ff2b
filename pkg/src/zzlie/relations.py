"""Physics examples as executable checks.

* the Gell-Mann matrices graded as sl_{1,1,1,0}(3), with their twelve
  anticommutator relations;
* two sorts of parafermion-like generators of so_p(2n+1) with the nested
  commutator relations inside a sort and nested anticommutator relations
  across sorts;
* the analogous A-statistics generators of sl_{1,q,n-q,0}(n+1).

lambda_8 = diag(1,1,-2)/sqrt3 is not expressible over Q(i, sqrt2); the
Gell-Mann set carries diag(1,1,-2) instead, which spans the same line.
None of the twelve relations involve lambda_8.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .families import AlgebraSpec, Family, InvalidSpec, build, check_mask_closure
from .gmatrix import Matrix, elementary, span_equal, span_of
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
)
from .report import Report
from .scalar import I, SQRT2

__all__ = [
    "GellMannSet",
    "ParafermionSet",
    "AStatSet",
    "gell_mann",
    "GELL_MANN_TABLE",
    "check_gell_mann_table",
    "check_parafermion",
    "check_a_statistics",
]


def _m(rows) -> Matrix:
    return Matrix.from_rows(rows)


@dataclass(frozen=True)
class GellMannSet:
    lambdas: tuple[Matrix, ...]  # lambda_1 .. lambda_8, index 0 unused
    degree_of: tuple[Degree | None, ...]
    rescaled_lambda8: bool = True

    def __getitem__(self, k: int) -> Matrix:
        return self.lambdas[k]

    def element(self, k: int) -> HomogeneousElement:
        return HomogeneousElement(self.lambdas[k], self.degree_of[k])

    def basis(self) -> GradedBasis:
        order = sorted(range(1, 9), key=lambda k: (self.degree_of[k], k))
        return GradedBasis.from_pairs(
            3, ((self.lambdas[k], self.degree_of[k]) for k in order), [f"lambda{k}" for k in order]
        )


def gell_mann() -> GellMannSet:
    z, i = 0, I
    lam = [
        None,
        _m([[0, 1, 0], [1, 0, 0], [0, 0, 0]]),
        _m([[z, -i, z], [i, z, z], [z, z, z]]),
        _m([[1, 0, 0], [0, -1, 0], [0, 0, 0]]),
        _m([[0, 0, 1], [0, 0, 0], [1, 0, 0]]),
        _m([[z, z, -i], [z, z, z], [i, z, z]]),
        _m([[0, 0, 0], [0, 0, 1], [0, 1, 0]]),
        _m([[z, z, z], [z, z, -i], [z, i, z]]),
        _m([[1, 0, 0], [0, 1, 0], [0, 0, -2]]),  # sqrt3 * lambda_8
    ]
    deg = (None, D01, D01, D00, D10, D10, D11, D11, D00)
    return GellMannSet(tuple(lam[:1]) + tuple(lam[1:]), deg)


# (a, b, sign, c):  {lambda_a, lambda_b} = sign * lambda_c
GELL_MANN_TABLE = (
    (1, 4, 1, 6), (1, 5, 1, 7), (2, 4, -1, 7), (2, 5, 1, 6),
    (1, 6, 1, 4), (1, 7, 1, 5), (2, 6, 1, 5), (2, 7, -1, 4),
    (4, 6, 1, 1), (4, 7, -1, 2), (5, 6, 1, 2), (5, 7, 1, 1),
)


def _check_spans(report: Report, basis: GradedBasis, target: GradedBasis, what: str):
    for d in DEGREES:
        ok = span_equal(basis.span(d), target.span(d))
        report.add("span", {"degree": str(d), "against": what}, ok,
                   None if ok else f"dims {basis.span(d).rank} vs {target.span(d).rank}")


def _check_report(report: Report, sub: Report, what: str):
    report.add(sub.name, {"against": what}, sub.passed,
               None if sub.passed else str(sub.failures[0].to_json()))


def check_gell_mann_table() -> Report:
    gm = gell_mann()
    report = Report("gell-mann")
    report.notes.append("lambda8 represented by sqrt3*lambda8 = diag(1,1,-2); spans are unchanged")
    for a, b, sign, c in GELL_MANN_TABLE:
        x, y = gm.element(a), gm.element(b)
        res = graded_bracket(x, y)
        anti = pairing(x.degree, y.degree) == 1
        expected = gm[c].scale(sign)
        ok = anti and res.matrix == expected and res.degree == gm.degree_of[c]
        rhs = f"{'-' if sign < 0 else ''}lambda{c}"
        report.add(
            "GM",
            {"lhs": f"{{lambda{a},lambda{b}}}", "rhs": rhs, "branch": "anticommutator" if anti else "commutator"},
            ok,
            None if ok else (res.matrix - expected).pretty(),
        )
    basis = gm.basis()
    spec = AlgebraSpec(Family.ZZ_SL, (1, 1, 1, 0))
    family, mask = build(spec)
    _check_spans(report, basis, family, str(spec))
    _check_report(report, check_closure(basis), "gell-mann basis")
    _check_report(report, check_mask_closure(basis, mask), str(spec))
    _check_report(report, check_jacobi(basis), "gell-mann basis")
    return report


# ----------------------------------------------------------------------
# parafermions


@dataclass(frozen=True)
class ParafermionSet:
    n: int
    p: int
    f_minus: tuple[Matrix, ...]  # index j-1
    f_plus: tuple[Matrix, ...]

    @classmethod
    def make(cls, n: int, p: int) -> ParafermionSet:
        if not 1 <= p < n:
            raise InvalidSpec(f"need 1 <= p < n, got n={n}, p={p}")
        size = 2 * n + 1
        e = lambda j, k: elementary(size, size, j, k)  # noqa: E731
        fm = tuple((e(j, size) - e(size, n + j)).scale(SQRT2) for j in range(1, n + 1))
        fp = tuple((e(size, j) - e(n + j, size)).scale(SQRT2) for j in range(1, n + 1))
        return cls(n, p, fm, fp)

    def f(self, sign: int, j: int) -> Matrix:
        return (self.f_plus if sign > 0 else self.f_minus)[j - 1]

    def degree(self, j: int) -> Degree:
        return D01 if j <= self.p else D10

    def h(self, sign: int, j: int) -> HomogeneousElement:
        return HomogeneousElement(self.f(sign, j), self.degree(j))

    def sorts(self):
        return (range(1, self.p + 1), range(self.p + 1, self.n + 1))


def _sign_name(s: int) -> str:
    return "+" if s > 0 else "-"


def check_parafermion(n: int, p: int) -> Report:
    pf = ParafermionSet.make(n, p)
    spec = AlgebraSpec(Family.ZZ_SO_ODD, (n, p))
    report = Report(f"parafermion n={n} p={p}")
    zero = Matrix(2 * n + 1, 2 * n + 1)
    signs = (1, -1)

    def rhs(xi, eta, eps, j, k, l, plus):
        out = zero
        if k == l and eps != eta:
            out = out + pf.f(xi, j).scale((eps - eta) ** 2 // 2)
        if j == l and eps != xi:
            c = (eps - xi) ** 2 // 2
            out = out + pf.f(eta, k).scale(c if plus else -c)
        return out

    # nested commutators inside one sort
    for sort in pf.sorts():
        for j, k, l in itertools.product(sort, repeat=3):
            for xi, eta, eps in itertools.product(signs, repeat=3):
                inner = graded_bracket(pf.h(xi, j), pf.h(eta, k))
                outer = graded_bracket(inner, pf.h(eps, l))
                branch = pairing(pf.degree(j), pf.degree(k)) + pairing(inner.degree, pf.degree(l))
                want = rhs(xi, eta, eps, j, k, l, plus=False)
                ok = branch == 0 and outer.matrix == want
                report.add("PF", {"j": j, "k": k, "l": l, "signs": "".join(map(_sign_name, (xi, eta, eps)))},
                           ok, None if ok else (outer.matrix - want).pretty(), keep_pass=False)

    # nested anticommutators across the sorts
    first, second = pf.sorts()
    for js, ks in ((first, second), (second, first)):
        for j, k, l in itertools.product(js, ks, range(1, n + 1)):
            for xi, eta, eps in itertools.product(signs, repeat=3):
                inner = graded_bracket(pf.h(xi, j), pf.h(eta, k))
                outer = graded_bracket(inner, pf.h(eps, l))
                anti = pairing(pf.degree(j), pf.degree(k)) == 1 and pairing(inner.degree, pf.degree(l)) == 1
                want = rhs(xi, eta, eps, j, k, l, plus=True)
                ok = anti and outer.matrix == want
                report.add("PFrel", {"j": j, "k": k, "l": l, "signs": "".join(map(_sign_name, (xi, eta, eps)))},
                           ok, None if ok else (outer.matrix - want).pretty(), keep_pass=False)

    # span identities
    family, _ = build(spec)
    size = 2 * n + 1
    dim = size * size
    g01 = [pf.f(s, k) for k in first for s in signs]
    g10 = [pf.f(s, k) for k in second for s in signs]
    g00 = [graded_bracket(pf.h(a, k), pf.h(b, l)).matrix
           for sort in (first, second) for k, l in itertools.product(sort, repeat=2) for a, b in itertools.product(signs, repeat=2)]
    g11 = [graded_bracket(pf.h(a, k), pf.h(b, l)).matrix
           for k, l in itertools.product(first, second) for a, b in itertools.product(signs, repeat=2)]
    for d, mats in ((D01, g01), (D10, g10), (D00, g00), (D11, g11)):
        ok = span_equal(span_of(mats, dim), family.span(d))
        report.add("span", {"degree": str(d), "against": str(spec)}, ok)
    _check_generation(report, g10, g01, family, str(spec))
    return report


def _check_generation(report: Report, g10, g01, family: GradedBasis, what: str):
    try:
        closed = generate(g10, g01)
    except GradingConflict as exc:
        report.add("generate", {"against": what}, False, str(exc))
        return
    for d in DEGREES:
        ok = span_equal(closed.span(d), family.span(d))
        report.add("generate", {"degree": str(d), "against": what}, ok)


# ----------------------------------------------------------------------
# A-statistics


@dataclass(frozen=True)
class AStatSet:
    n: int
    q: int
    a_minus: tuple[Matrix, ...]
    a_plus: tuple[Matrix, ...]

    @classmethod
    def make(cls, n: int, q: int) -> AStatSet:
        if not 1 <= q < n:
            raise InvalidSpec(f"need 1 <= q < n, got n={n}, q={q}")
        size = n + 1
        am = tuple(elementary(size, size, 1, j + 1) for j in range(1, n + 1))
        ap = tuple(elementary(size, size, j + 1, 1) for j in range(1, n + 1))
        return cls(n, q, am, ap)

    def a(self, sign: int, j: int) -> Matrix:
        return (self.a_plus if sign > 0 else self.a_minus)[j - 1]

    def degree(self, j: int) -> Degree:
        return D01 if j <= self.q else D10

    def h(self, sign: int, j: int) -> HomogeneousElement:
        return HomogeneousElement(self.a(sign, j), self.degree(j))

    def sorts(self):
        return (range(1, self.q + 1), range(self.q + 1, self.n + 1))


def check_a_statistics(n: int, q: int) -> Report:
    st = AStatSet.make(n, q)
    spec = AlgebraSpec(Family.ZZ_SL, (1, q, n - q, 0))
    report = Report(f"a-statistics n={n} q={q}")
    size = n + 1
    zero = Matrix(size, size)
    d = lambda x, y: 1 if x == y else 0  # noqa: E731

    def br(x, y):
        return graded_bracket(x, y)

    def record(identity, idx, got: HomogeneousElement, want: Matrix, branch_ok: bool):
        ok = branch_ok and got.matrix == want
        report.add(identity, idx, ok, None if ok else (got.matrix - want).pretty(), keep_pass=False)

    for sort in st.sorts():
        for j, k in itertools.product(sort, repeat=2):
            for s in (1, -1):
                got = br(st.h(s, j), st.h(s, k))
                record("A1R", {"rel": f"[a{_sign_name(s)}_j,a{_sign_name(s)}_k]=0", "j": j, "k": k}, got, zero,
                       pairing(st.degree(j), st.degree(k)) == 0)
            for l in sort:
                inner = br(st.h(1, j), st.h(-1, k))
                comm = pairing(st.degree(j), st.degree(k)) == 0 and pairing(inner.degree, st.degree(l)) == 0
                want = st.a(1, l).scale(d(j, k)) + st.a(1, j).scale(d(k, l))
                record("A1R", {"rel": "[[a+_j,a-_k],a+_l]", "j": j, "k": k, "l": l}, br(inner, st.h(1, l)), want, comm)
                want = -(st.a(-1, l).scale(d(j, k)) + st.a(-1, k).scale(d(j, l)))
                record("A1R", {"rel": "[[a+_j,a-_k],a-_l]", "j": j, "k": k, "l": l}, br(inner, st.h(-1, l)), want, comm)

    first, second = st.sorts()
    for js, ks in ((first, second), (second, first)):
        for j, k in itertools.product(js, ks):
            for s in (1, -1):
                got = br(st.h(s, j), st.h(s, k))
                record("A1Rel", {"rel": f"{{a{_sign_name(s)}_j,a{_sign_name(s)}_k}}=0", "j": j, "k": k}, got, zero,
                       pairing(st.degree(j), st.degree(k)) == 1)
            inner = br(st.h(1, j), st.h(-1, k))
            for l in range(1, n + 1):
                anti = pairing(st.degree(j), st.degree(k)) == 1 and pairing(inner.degree, st.degree(l)) == 1
                record("A1Rel", {"rel": "{{a+_j,a-_k},a+_l}", "j": j, "k": k, "l": l},
                       br(inner, st.h(1, l)), st.a(1, j).scale(d(k, l)), anti)
                record("A1Rel", {"rel": "{{a+_j,a-_k},a-_l}", "j": j, "k": k, "l": l},
                       br(inner, st.h(-1, l)), st.a(-1, k).scale(d(j, l)), anti)

    family, _ = build(spec)
    dim = size * size
    g01 = [st.a(s, j) for j in first for s in (-1, 1)]
    g10 = [st.a(s, j) for j in second for s in (-1, 1)]
    g00 = [br(st.h(1, j), st.h(-1, k)).matrix for sort in (first, second) for j, k in itertools.product(sort, repeat=2)]
    g11 = [br(st.h(a, j), st.h(-a, k)).matrix for j, k in itertools.product(first, second) for a in (-1, 1)]
    for deg, mats in ((D01, g01), (D10, g10), (D00, g00), (D11, g11)):
        ok = span_equal(span_of(mats, dim), family.span(deg))
        report.add("span", {"degree": str(deg), "against": str(spec)}, ok)
    _check_generation(report, g10, g01, family, str(spec))
    return report
