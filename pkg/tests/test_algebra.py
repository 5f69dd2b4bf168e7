import itertools

import pytest
from hypothesis import given, settings, strategies as st

from qgal.algebra import (
    Congruence,
    FiniteAlgebra,
    Hom,
    Variety,
    coequalizer,
    congruence_closure,
    congruence_lattice,
    identity,
    image_factorisation,
    is_homomorphism,
    is_surjection,
    kernel_congruence,
    kernel_pair,
    make_algebra,
    pullback,
    quotient,
    to_terminal,
    validate_algebra,
)
from qgal.canonical import are_isomorphic, brute_force_canonical, canonical_form
from qgal.catalog import enumerate_algebras
from qgal.errors import InputError
from qgal.fixtures import R3, R4, T1, T2, P, Q8, S3, p, q

import oracles

QUANDLES4 = list(enumerate_algebras("quandle", 4))
small_quandles = st.sampled_from(QUANDLES4)


# -- validation ---------------------------------------------------------------


def test_validate_r3_and_t2():
    assert validate_algebra([[0, 2, 1], [2, 1, 0], [1, 0, 2]], "quandle").ok
    assert validate_algebra([[0, 0], [1, 1]], "quandle").ok


def test_validate_non_bijective_column():
    report = validate_algebra([[0, 0], [0, 1]], "quandle")
    assert not report.ok
    axioms = {v.axiom for v in report.violations}
    assert "right-translation-bijective" in axioms
    v = next(v for v in report.violations if v.axiom == "right-translation-bijective")
    assert v.witness[2] == 0


def test_validate_rejects_bad_shapes():
    with pytest.raises(InputError):
        validate_algebra([[0, 1], [1]], "quandle")
    with pytest.raises(InputError):
        validate_algebra([[0, 5], [1, 1]], "quandle")
    with pytest.raises(InputError):
        make_algebra("quandle", [[0, 0], [0, 1]])
    with pytest.raises(InputError):
        validate_algebra([[0]], "monoid")


def test_rack_is_not_quandle():
    flip = [[1, 1], [0, 0]]
    assert validate_algebra(flip, "rack").ok
    assert {v.axiom for v in validate_algebra(flip, "quandle").violations} == {"idempotency"}


def test_group_axioms():
    assert validate_algebra(Q8.table, "group").ok
    bad = [[0, 1, 2], [1, 0, 0], [2, 0, 1]]
    assert not validate_algebra(bad, "group").ok


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.integers(0, 2), min_size=3, max_size=3), min_size=3, max_size=3))
def test_validation_matches_brute_force(rows):
    assert validate_algebra(rows, "quandle").ok == oracles.is_quandle_table(rows)
    assert validate_algebra(rows, "rack").ok == oracles.is_rack_table(rows)


# -- homomorphisms --------------------------------------------------------------


def test_projection_is_hom():
    assert is_homomorphism(P(), R3, p().values)
    assert is_homomorphism(R3, R3, identity(R3).values)


def test_inclusion_t2_r3_fails():
    assert not is_homomorphism(T2, R3, [0, 1])
    with pytest.raises(InputError):
        Hom.checked(T2, R3, [0, 1])


def test_surjection_examples():
    assert is_surjection(p())
    assert is_surjection(to_terminal(R3))
    assert not is_surjection(Hom(R3, T2, (0, 0, 0)))


def test_hom_length_mismatch():
    with pytest.raises(InputError):
        is_homomorphism(R3, T2, [0, 0])
    with pytest.raises(InputError):
        is_homomorphism(R3, T2, [0, 0, 3])


@settings(max_examples=40, deadline=None)
@given(small_quandles, small_quandles, st.data())
def test_is_homomorphism_matches_brute_force(A, B, data):
    vals = data.draw(st.lists(st.integers(0, B.size - 1), min_size=A.size, max_size=A.size))
    assert is_homomorphism(A, B, vals) == (tuple(vals) in set(oracles.homs(A.table, B.table)))


# -- congruences ----------------------------------------------------------------


def test_closure_examples():
    assert congruence_closure(R3, [(0, 1)]).is_full()
    assert congruence_closure(R3, []).is_discrete()
    A = P()
    C = congruence_closure(A, [(x, A.op(x, y)) for x in A.elements for y in A.elements])
    assert C.num_classes == 2
    assert all(len({q()(x) for x in cls}) == 1 for cls in C.classes)


def test_lattice_matches_brute_force():
    for A in QUANDLES4 + [S3]:
        got = sorted(C.labels for C in congruence_lattice(A))
        assert got == sorted(oracles.congruences(A.table))


@settings(max_examples=50, deadline=None)
@given(small_quandles, st.data())
def test_closure_is_least(A, data):
    pairs = data.draw(st.lists(st.tuples(st.integers(0, A.size - 1), st.integers(0, A.size - 1)), max_size=3))
    C = congruence_closure(A, pairs)
    assert C.is_compatible()
    for D in congruence_lattice(A):
        if all(D.related(a, b) for a, b in pairs):
            assert C <= D


# -- quotients, pullbacks, kernels ----------------------------------------------


def test_quotient_examples():
    B, h = quotient(R3, Congruence.full(R3))
    assert B.size == 1 and is_surjection(h)
    B, h = quotient(R3, Congruence.discrete(R3))
    assert are_isomorphic(B, R3)
    A = P()
    B, h = quotient(A, kernel_congruence(q()))
    assert B == T2


def test_quotient_rejects_non_congruence():
    C = Congruence(R4, (0, 0, 1, 2))
    assert not C.is_compatible()
    with pytest.raises(InputError):
        quotient(R4, C)


def test_pullback_examples():
    fp = pullback(p(), identity(R3))
    assert fp.apex.size == 6 and are_isomorphic(fp.apex, P())
    assert pullback(p(), p()).apex.size == 12 == oracles.pullback_size(p().values, p().values)
    fp = pullback(to_terminal(R3), to_terminal(T2))
    assert fp.apex.size == 6 and are_isomorphic(fp.apex, P())


def test_pullback_codomain_mismatch():
    with pytest.raises(InputError):
        pullback(p(), to_terminal(T2))


@settings(max_examples=40, deadline=None)
@given(small_quandles, st.data())
def test_pullback_projection_surjective(A, data):
    Cs = congruence_lattice(A)
    th = data.draw(st.sampled_from(Cs))
    ph = data.draw(st.sampled_from([D for D in Cs if th <= D]))
    _, f = quotient(A, th)
    Z, g = quotient(A, ph)
    # factor g through f to get two maps into Z
    through = [0] * f.cod.size
    for x in A.elements:
        through[f(x)] = g(x)
    h = Hom(f.cod, Z, tuple(through))
    fp = pullback(h, g)
    assert fp.apex.size == oracles.pullback_size(h.values, g.values)
    assert is_surjection(fp.left)
    assert fp.left.then(h).values == fp.right.then(g).values


def test_kernels():
    assert sorted(len(c) for c in kernel_congruence(p()).classes) == [2, 2, 2]
    assert kernel_congruence(identity(R3)).is_discrete()
    assert kernel_congruence(to_terminal(R3)).is_full()
    kp = kernel_pair(p())
    assert kp.apex.size == 12 and is_surjection(kp.left) and is_surjection(kp.right)


def test_coequalizer_examples():
    kp = kernel_pair(p())
    Q, h = coequalizer(kp.left, kp.right)
    assert kernel_congruence(h) == kernel_congruence(p())
    Q, h = coequalizer(identity(R3), identity(R3))
    assert Q.size == 3
    a, b = Hom(T1, R3, (0,)), Hom(T1, R3, (1,))
    Q, h = coequalizer(a, b)
    assert Q.size == 1


def test_image_factorisation():
    for A in QUANDLES4:
        for B in QUANDLES4:
            for vals in oracles.homs(A.table, B.table):
                f = Hom(A, B, vals)
                I, e, m = image_factorisation(f)
                assert I.size == len(set(vals)) == quotient(A, kernel_congruence(f))[0].size
                assert e.then(m).values == f.values


# -- canonical forms --------------------------------------------------------------


def test_canonical_examples():
    R3b = R3.relabel((1, 2, 0))
    assert canonical_form(R3b) == canonical_form(R3)
    assert canonical_form(T2) == T2
    assert canonical_form(T1) == T1


@settings(max_examples=60, deadline=None)
@given(small_quandles, st.permutations(range(4)))
def test_canonical_form_invariant(A, perm):
    perm = [x for x in perm if x < A.size]
    assert canonical_form(A.relabel(perm)) == canonical_form(A)


def test_pruned_search_matches_full_minimisation():
    for A in list(enumerate_algebras("quandle", 5)) + [R4, P(), S3, Q8.relabel((3, 1, 4, 0, 7, 2, 6, 5))]:
        assert canonical_form(A).table == brute_force_canonical(A)


def test_canonical_separates_catalog():
    forms = {canonical_form(A).table for A in QUANDLES4}
    brute = {oracles.min_form(A.table) for A in QUANDLES4}
    assert len(forms) == len(brute) == len(QUANDLES4)


def test_algebra_is_immutable_and_hashable():
    assert hash(R3) == hash(FiniteAlgebra(Variety.QUANDLE, R3.table))
    assert len({R3, R3.relabel((0, 1, 2))}) == 1
    assert list(itertools.islice(R3.elements, 3)) == [0, 1, 2]
