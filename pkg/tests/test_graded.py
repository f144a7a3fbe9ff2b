import dataclasses
import itertools
import json

import pytest

from zzlie.families import AlgebraSpec, Family, build
from zzlie.gmatrix import Matrix, ShapeMismatch, elementary, span_equal
from zzlie.graded import (
    D00,
    D01,
    D10,
    D11,
    DEGREES,
    Degree,
    EmptyGenerators,
    GradedBasis,
    GradingConflict,
    HomogeneousElement,
    InvalidPermutation,
    StructureConstants,
    check_closure,
    check_jacobi,
    check_structure_jacobi,
    generate,
    generate_with_levels,
    graded_bracket,
    pairing,
    permute_grading,
    structure_constants,
)
from zzlie.relations import ParafermionSet, gell_mann
from zzlie.scalar import FieldElem


def e(n, j, k):
    return elementary(n, n, j, k)


def test_degree_addition():
    assert D10 + D01 == D11
    assert D11 + D11 == D00
    for a in DEGREES:
        assert D00 + a == a
    assert Degree.parse("(1,0)") == Degree.parse([1, 0]) == Degree.parse("10") == D10


def test_pairing_table():
    assert pairing(D10, D01) == 1
    assert pairing(D10, D11) == 1
    for a in DEGREES:
        assert pairing(a, a) == 0
        assert pairing(D00, a) == 0
    for a, b in itertools.product(DEGREES, repeat=2):
        assert pairing(a, b) == pairing(b, a)


def test_graded_bracket_examples():
    gm = gell_mann()
    out = graded_bracket(gm.element(1), gm.element(4))
    assert out.matrix == gm[6] and out.degree == D11
    out = graded_bracket(gm.element(4), gm.element(6))
    assert out.matrix == gm[1] and out.degree == D01
    x = HomogeneousElement(gm[6], D11)
    assert graded_bracket(x, x).matrix.is_zero()


def test_graded_antisymmetry_on_gell_mann():
    gm = gell_mann()
    for a, b in itertools.product(range(1, 9), repeat=2):
        x, y = gm.element(a), gm.element(b)
        sign = -1 if pairing(x.degree, y.degree) == 0 else 1
        assert graded_bracket(x, y).matrix == graded_bracket(y, x).matrix.scale(sign)


def test_basis_validation():
    with pytest.raises(ValueError):
        GradedBasis.from_pairs(2, [(e(2, 1, 1), D00), (e(2, 1, 1).scale(2), D00)])
    with pytest.raises(ValueError):
        GradedBasis.from_pairs(2, [(Matrix(2, 2), D00)])
    with pytest.raises((ValueError, ShapeMismatch)):
        GradedBasis.from_pairs(2, [(e(3, 1, 1), D00)])


def test_jacobi_passes_on_built_and_trivial():
    assert check_jacobi(gell_mann().basis()).passed
    assert check_jacobi(GradedBasis.from_pairs(2, [(e(2, 1, 1), D00)])).passed


def test_corrupted_grading_is_caught():
    # lambda6 relabelled (0,0): the matrix-level Jacobi identity still holds
    # (it is a formal consequence of associativity), but closure breaks and
    # the structure-constant form of Jacobi sees the wrong sign factors.
    gm = gell_mann()
    good = gm.basis()
    labels = list(good.labels)
    degs = [D00 if lab == "lambda6" else d for lab, d in zip(labels, good.degrees)]
    bad = GradedBasis.from_pairs(3, zip(good.matrices, degs), labels)
    assert check_jacobi(bad).passed
    assert not check_closure(bad).passed

    sc = structure_constants(good)
    assert check_structure_jacobi(sc).passed
    corrupted = dataclasses.replace(sc, degree_of=degs)
    rep = check_structure_jacobi(corrupted)
    assert not rep.passed
    rec = rep.failures[0]
    i, j, k = rec.index["i"], rec.index["j"], rec.index["k"]
    # direct evaluation of the same triple with the corrupted signs
    x = [HomogeneousElement(m, d) for m, d in zip(good.matrices, degs)]
    lhs = sum(
        (corrupted.matrices[l].scale(c2 * c1) for m, c1 in corrupted.entries.get((j, k), ())
         for l, c2 in corrupted.entries.get((i, m), ())),
        Matrix(3, 3),
    )
    t1 = sum(
        (corrupted.matrices[l].scale(c2 * c1) for m, c1 in corrupted.entries.get((i, j), ())
         for l, c2 in corrupted.entries.get((m, k), ())),
        Matrix(3, 3),
    )
    t2 = sum(
        (corrupted.matrices[l].scale(c2 * c1) for m, c1 in corrupted.entries.get((i, k), ())
         for l, c2 in corrupted.entries.get((j, m), ())),
        Matrix(3, 3),
    )
    s = (-1) ** pairing(x[i].degree, x[j].degree)
    assert lhs != t1 + t2.scale(s)


def test_structure_jacobi_on_families():
    for spec in (AlgebraSpec(Family.ZZ_SO_ODD, (2, 1)), AlgebraSpec(Family.ZZ_SL, (1, 1, 1, 1))):
        basis, _ = build(spec)
        assert check_structure_jacobi(structure_constants(basis)).passed


def test_closure():
    assert check_closure(gell_mann().basis()).passed
    assert check_closure(GradedBasis.from_pairs(3, [(Matrix(3, 3, {(0, 0): 1, (1, 1): -1}), D00)])).passed
    rep = check_closure(GradedBasis.from_pairs(3, [(e(3, 1, 2), D10), (e(3, 2, 3), D10)]))
    assert not rep.passed
    assert rep.failures[0].identity == "closure"


def test_generate_gell_mann():
    gm = gell_mann()
    basis, levels = generate_with_levels([gm[4], gm[5]], [gm[1], gm[2]])
    assert basis.signature() == (2, 2, 2, 2)
    assert levels == 1
    full = gm.basis()
    for d in DEGREES:
        assert span_equal(basis.span(d), full.span(d))
    assert [el.degree for el in basis.elements] == sorted(el.degree for el in basis.elements)


def test_generate_two_by_two_units_conflict():
    # {e11+e22, e12} = 2 e12 puts e12 into (0,1) as well as (1,0)
    with pytest.raises(GradingConflict) as info:
        generate([e(2, 1, 2)], [e(2, 2, 1)])
    assert info.value.spans


def test_generate_parafermion_generators():
    pf = ParafermionSet.make(2, 1)
    basis = generate([pf.f_minus[1], pf.f_plus[1]], [pf.f_minus[0], pf.f_plus[0]])
    assert basis.signature() == (2, 2, 2, 4)
    fam, _ = build(AlgebraSpec(Family.ZZ_SO_ODD, (2, 1)))
    assert all(span_equal(basis.span(d), fam.span(d)) for d in DEGREES)


def test_generate_errors():
    with pytest.raises(EmptyGenerators):
        generate([], [e(2, 1, 2)])
    with pytest.raises(ShapeMismatch):
        generate([e(2, 1, 2)], [e(3, 2, 1)])


def test_structure_constants_gell_mann():
    basis = gell_mann().basis()
    sc = structure_constants(basis)
    idx = {lab: t for t, lab in enumerate(basis.labels)}
    assert sc.entries[(idx["lambda1"], idx["lambda4"])] == [(idx["lambda6"], FieldElem(1))]
    assert sc.entries[(idx["lambda4"], idx["lambda7"])] == [(idx["lambda2"], FieldElem(-1))]
    assert (idx["lambda3"], idx["lambda3"]) not in sc.entries
    for i, j in itertools.product(range(len(basis)), repeat=2):
        assert sc.reconstruct(i, j) == graded_bracket(basis.elements[i], basis.elements[j]).matrix


def test_structure_constants_symmetry_and_json():
    basis, _ = build(AlgebraSpec(Family.ZZ_SP, (2, 1)))
    sc = structure_constants(basis)
    n = len(basis)
    for i, j, k in itertools.product(range(n), repeat=3):
        sign = 1 if pairing(basis.degrees[i], basis.degrees[j]) else -1
        assert sc.coefficient(j, i, k) == sc.coefficient(i, j, k) * sign
    doc = json.loads(json.dumps(sc.to_json()))
    back = StructureConstants.from_json(doc)
    assert back.entries == sc.entries
    assert back.basis_labels == sc.basis_labels


def test_permute_grading():
    basis, _ = build(AlgebraSpec(Family.ZZ_SL, (1, 2, 1, 0)))
    assert permute_grading(basis, {}) == basis
    swapped = permute_grading(basis, {D01: D10, D10: D01})
    s, t = basis.signature(), swapped.signature()
    assert (t[1], t[2]) == (s[2], s[1])
    assert check_closure(swapped).passed and check_jacobi(swapped).passed
    cyc = permute_grading(gell_mann().basis(), {D01: D10, D10: D11, D11: D01})
    assert check_jacobi(cyc).passed
    with pytest.raises(InvalidPermutation):
        permute_grading(basis, {D00: D01, D01: D00})
    with pytest.raises(InvalidPermutation):
        permute_grading(basis, {D01: D10})
