import pytest
from hypothesis import given, settings, strategies as st

from qgal import groups
from qgal.algebra import identity, quotient, to_terminal
from qgal.catalog import enumerate_algebras, enumerate_extension_cubes, squares_of
from qgal.canonical import are_isomorphic
from qgal.diagram import arrow, identity_cube, square
from qgal.errors import InputError
from qgal.extension import is_extension
from qgal.fixtures import Q8, R3, T1, T2, P, p
from qgal.galois import Verdict, covering_oracle, is_trivial_covering, reflection_square, structure_for
from qgal.symmetric import (
    SymmetricWitness,
    classify,
    construct_witness_from_splitting,
    find_symmetric_witness,
    is_symmetrically_trivial,
    main_theorem_sweep,
    theorem_instance,
    transpose_invariance,
    verify_symmetric_witness,
)

QUANDLE = structure_for("quandle")
GROUP = structure_for("group")
QUANDLE_SQUARES = [s for A in enumerate_algebras("quandle", 4) for s in squares_of(A) if is_extension(s)]
GROUP_SQUARES = list(enumerate_extension_cubes(enumerate_algebras("group", 8), 2))


def _mod_center(G):
    return quotient(G, groups.coset_congruence(G, groups.center(G)))[1]


def _bad_square():
    """``R3 -> T1`` over ``id_T1``: an extension that is not a discrete fibration."""
    t = to_terminal(R3)
    return square(top=t, bottom=identity(T1), left=t, right=identity(T1))


def test_witness_for_p():
    w = construct_witness_from_splitting(QUANDLE, p(), identity(R3))
    assert verify_symmetric_witness(QUANDLE, w)
    assert w.dim == 1
    assert are_isomorphic(w.tau.vertex(0), P()) and w.tau.vertex(1) == R3
    assert [V.size for V in w.beta.vertices] == [2, 1]


def test_witness_for_central_extension():
    c = _mod_center(Q8)
    w = construct_witness_from_splitting(GROUP, c, c)
    assert verify_symmetric_witness(GROUP, w)
    assert w.tau.initial.size == 16 and all(groups.is_abelian(V) for V in w.beta.vertices)


def test_non_splitting_rejected():
    with pytest.raises(InputError):
        construct_witness_from_splitting(QUANDLE, to_terminal(R3), identity(T1))


def test_corrupted_witness_rejected():
    w = construct_witness_from_splitting(QUANDLE, p(), identity(R3))
    swapped = SymmetricWitness(w.alpha, w.tau, w.beta, w.right, w.left)
    check = verify_symmetric_witness(QUANDLE, swapped)
    assert not check and "beta" in check.reason
    wrong_beta = SymmetricWitness(w.alpha, w.tau, w.alpha, w.left, w.right)
    assert not verify_symmetric_witness(QUANDLE, wrong_beta)
    with pytest.raises(InputError):
        verify_symmetric_witness(QUANDLE, w, form="other")


def test_find_witness_single():
    assert find_symmetric_witness(QUANDLE, p())
    assert find_symmetric_witness(GROUP, _mod_center(Q8), 8)
    v = find_symmetric_witness(QUANDLE, to_terminal(R3), 4)
    assert v.verdict is Verdict.UNKNOWN and v.bound == 4


def test_find_witness_double():
    rs = reflection_square(QUANDLE, p())
    v = find_symmetric_witness(QUANDLE, rs)
    assert v and verify_symmetric_witness(QUANDLE, v.witness)
    assert find_symmetric_witness(QUANDLE, _bad_square(), 4).verdict is Verdict.UNKNOWN
    with pytest.raises(InputError):
        find_symmetric_witness(QUANDLE, identity_cube(rs))


def test_symmetric_triviality_examples():
    assert is_symmetrically_trivial(QUANDLE, reflection_square(QUANDLE, p()))
    assert is_symmetrically_trivial(QUANDLE, identity_cube(arrow(p())))
    assert is_symmetrically_trivial(QUANDLE, to_terminal(R3)).verdict is Verdict.NO
    bad = _bad_square()
    assert is_symmetrically_trivial(QUANDLE, bad).verdict is Verdict.UNKNOWN
    assert is_symmetrically_trivial(QUANDLE, bad, strategy="search").verdict is Verdict.NO
    with pytest.raises(InputError):
        is_symmetrically_trivial(QUANDLE, bad, strategy="guess")


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(QUANDLE_SQUARES))
def test_search_agrees_with_canonical(sq):
    canonical = is_symmetrically_trivial(QUANDLE, sq)
    exact = is_symmetrically_trivial(QUANDLE, sq, strategy="search")
    assert exact.verdict is not Verdict.UNKNOWN
    assert bool(canonical) == bool(exact)


@pytest.mark.parametrize("gamma,squares", [(QUANDLE, QUANDLE_SQUARES), (GROUP, GROUP_SQUARES)])
def test_symmetrically_trivial_is_trivial_both_ways(gamma, squares):
    lvl = gamma.at_level(1)
    for sq in squares:
        if is_symmetrically_trivial(gamma, sq):
            assert is_trivial_covering(lvl, sq, 1) and is_trivial_covering(lvl, sq, 2)


def test_transpose_invariance():
    assert all(transpose_invariance(GROUP, sq) for sq in GROUP_SQUARES)
    assert all(transpose_invariance(QUANDLE, sq) for sq in QUANDLE_SQUARES)


def test_accepted_group_witnesses_are_coverings():
    for sq in GROUP_SQUARES:
        v = find_symmetric_witness(GROUP, sq)
        if v:
            assert verify_symmetric_witness(GROUP, v.witness)
            assert covering_oracle(GROUP.at_level(1), sq)


# -- main-theorem records ---------------------------------------------------------------


def test_classify():
    assert classify(Verdict.YES, Verdict.YES) == "agree-yes"
    assert classify(Verdict.YES, Verdict.UNKNOWN) == "oracle-yes-bound-exhausted"
    assert classify(Verdict.NO, Verdict.YES) == "witness-yes-oracle-no"
    assert classify(Verdict.NO, Verdict.UNKNOWN) == "agree-no"
    assert classify(Verdict.UNKNOWN, Verdict.YES) == "oracle-unknown"


def test_instance_records():
    rec = theorem_instance(QUANDLE, p())
    # the covering splits itself first, so tau is the kernel pair of p
    assert rec["class"] == "agree-yes" and rec["span_sizes"] == {"tau": [12, 6], "beta": [4, 2]}
    assert "span" in rec
    rec = theorem_instance(QUANDLE, to_terminal(R3), 4)
    assert rec["class"] == "agree-no" and "span" not in rec


def test_sweep_shapes():
    empty = main_theorem_sweep(QUANDLE, [], 1)
    assert empty["pass"] and sum(empty["counts"].values()) == 0
    out = main_theorem_sweep(QUANDLE, [p(), to_terminal(R3), to_terminal(T2)], 1, bound=4)
    assert out["pass"] and out["counts"]["agree-yes"] == 2 and out["counts"]["agree-no"] == 1
    assert [r["index"] for r in out["instances"]] == [0, 1, 2]
    with pytest.raises(InputError):
        main_theorem_sweep(QUANDLE, [p()], 2)
