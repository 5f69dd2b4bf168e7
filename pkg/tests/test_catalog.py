import itertools

import pytest
from hypothesis import given, settings, strategies as st

from qgal.algebra import Congruence, Variety, congruence_lattice
from qgal.canonical import are_isomorphic, canonical_form
from qgal.catalog import (
    MAX_ORDER,
    Catalog,
    automorphism_group,
    chains_of,
    congruence_orbit_reps,
    cubes_of,
    enumerate_algebras,
    enumerate_extension_cubes,
    enumerate_homs,
    enumerate_order,
    enumerate_surjections,
    find_group_isomorphism,
    grids_of,
    rack_tables,
    squares_of,
    surjection_corpus,
)
from qgal.errors import InputError
from qgal.extension import is_extension
from qgal.fibration import is_discrete_fibration
from qgal.fixtures import R3, R4, T1, T2, P, Q8, S3, V4, C4, flip_rack, p

import oracles


def test_quandle_counts():
    assert enumerate_algebras("quandle", 4).counts() == [1, 1, 3, 7]


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_quandles_match_naive_generator(n):
    got = {oracles.min_form(A.table) for A in enumerate_order("quandle", n)}
    assert got == oracles.naive_quandles(n)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_racks_match_naive_generator(n):
    got = {oracles.min_form(A.table) for A in enumerate_order("rack", n)}
    assert got == oracles.naive_racks(n)


def test_racks_of_order_two():
    racks = enumerate_order("rack", 2)
    assert len(racks) == 2
    assert any(are_isomorphic(A, flip_rack()) for A in racks)
    assert any(A.table == T2.table for A in racks)


def test_permuted_column_order_gives_same_entries():
    base = enumerate_order("quandle", 4)
    for order in itertools.permutations(range(4)):
        assert enumerate_order("quandle", 4, column_order=order) == base


def test_raw_tables_are_valid():
    tables = list(rack_tables(3, quandle=True))
    assert all(oracles.is_quandle_table(t) for t in tables)
    # every valid order-3 quandle table appears
    brute = {t for t in itertools.product(*[list(itertools.product(range(3), repeat=3))] * 3)
             if oracles.is_quandle_table(t)}
    assert set(tables) == brute


def test_catalog_entries_canonical_and_distinct():
    cat = enumerate_algebras("quandle", 4)
    assert all(canonical_form(A) == A for A in cat)
    assert len({A.table for A in cat}) == len(cat)
    assert cat.ids()[:3] == ["1-1", "2-1", "3-1"]
    assert cat.get("3-3") == canonical_form(R3)
    assert cat.id_of(R3) == "3-3"
    with pytest.raises(InputError):
        cat.get("9-1")


def test_group_catalog_counts():
    counts = enumerate_algebras("group", 16).counts()
    expected = oracles.group_order_counts()
    assert counts == [expected[n] for n in range(1, 17)]


def test_group_catalog_members():
    cat = enumerate_algebras("group", 8)
    for G in (Q8, S3, V4, C4):
        assert sum(find_group_isomorphism(G, H) is not None for H in cat) == 1


def test_order_caps():
    with pytest.raises(InputError):
        enumerate_algebras("quandle", MAX_ORDER[Variety.QUANDLE] + 1)
    with pytest.raises(InputError):
        enumerate_algebras("group", 17)
    assert len(enumerate_algebras("quandle", 1)) == 1


# -- homomorphisms ----------------------------------------------------------------


def test_surjection_examples():
    assert len(enumerate_surjections(R3, T1)) == 1
    assert p() in enumerate_surjections(P(), R3)
    assert enumerate_surjections(T2, R3) == []


def test_homs_match_brute_force():
    cat = list(enumerate_algebras("quandle", 3)) + [R4]
    for A in cat:
        for B in cat:
            got = [h.values for h in enumerate_homs(A, B)]
            assert got == oracles.homs(A.table, B.table)


def test_group_homs_match_brute_force():
    for A in (C4, V4, S3):
        for B in (C4, V4):
            got = [h.values for h in enumerate_homs(A, B)]
            assert got == oracles.homs(A.table, B.table)


def test_automorphisms():
    assert len(automorphism_group(R3)) == 6
    assert len(automorphism_group(T2)) == 2
    assert len(automorphism_group(Q8)) == 24


# -- corpora ----------------------------------------------------------------------


def _moved(A, C, perm):
    """``C`` transported along the automorphism ``x -> perm[x]``."""
    labels = [0] * A.size
    for x in A.elements:
        labels[perm[x]] = C.labels[x]
    return Congruence(A, tuple(labels))


def test_orbit_reps_cover_lattice():
    for A in enumerate_algebras("quandle", 4):
        auts = automorphism_group(A)
        orbits = {frozenset(_moved(A, C, g) for g in auts) for C in congruence_lattice(A)}
        reps = [c for (c,) in congruence_orbit_reps(A, 1)]
        assert len(reps) == len(orbits)
        assert {next(o for o in orbits if r in o) for r in reps} == orbits


def test_extension_cube_examples():
    cat = enumerate_algebras("quandle", 4)
    arrows = list(enumerate_extension_cubes(cat, 1))
    assert len(arrows) == len(surjection_corpus(cat))
    assert all(is_extension(a) for a in arrows)
    assert [c.initial for c in enumerate_extension_cubes(cat, 0)] == list(cat)
    squares = list(enumerate_extension_cubes(cat, 2))
    assert squares and all(is_extension(s) for s in squares)


def test_extension_cubes_include_reflection_square_of_p():
    small = Catalog(Variety.QUANDLE, 6, (canonical_form(P()),))
    found = [
        s for s in enumerate_extension_cubes(small, 2)
        if [V.size for V in s.vertices] in ([6, 3, 2, 1], [6, 2, 3, 1]) and is_discrete_fibration(s).is_df
    ]
    assert found


def test_extension_cubes_reject_dimension():
    with pytest.raises(InputError):
        list(enumerate_extension_cubes(enumerate_algebras("quandle", 2), 4))


def test_lemma_corpora_shapes():
    A = enumerate_algebras("quandle", 4).get("4-4")
    for left, right, outer in grids_of(A):
        assert left.vertex(1) == right.vertex(0) and left.vertex(3) == right.vertex(2)
        assert outer.vertex(0) == left.vertex(0) and outer.vertex(3) == right.vertex(3)
    for t, s in chains_of(A):
        assert t.cod == s.dom
    assert all(sq.dim == 2 for sq in squares_of(A))
    assert all(c.dim == 3 for c in cubes_of(A, 3))


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(list(enumerate_algebras("quandle", 4))), st.data())
def test_every_square_is_a_corpus_square_up_to_iso(A, data):
    lattice = congruence_lattice(A)
    th = data.draw(st.sampled_from(lattice))
    ph = data.draw(st.sampled_from(lattice))
    reps = congruence_orbit_reps(A, 2)
    auts = automorphism_group(A)
    assert any((_moved(A, th, g), _moved(A, ph, g)) in reps for g in auts)
