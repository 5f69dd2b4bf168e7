import pytest
from hypothesis import given, settings, strategies as st

from qgal.algebra import Hom, identity, kernel_congruence, to_terminal
from qgal.catalog import cubes_of, enumerate_algebras
from qgal.diagram import (
    arrow,
    as_arrow,
    bitstring,
    bring_to_front,
    build_cube,
    compose_cubes,
    cube_from_arrow,
    face,
    from_front,
    identity_cube,
    map_vertices,
    parse_bitstring,
    point,
    reorder,
    square,
    transpose,
)
from qgal.errors import InputError
from qgal.fixtures import R3, T1, T2, P, p, q
from qgal.galois import reflection_square, structure_for

QUANDLE = structure_for("quandle")
CUBES3 = [c for A in enumerate_algebras("quandle", 4) for c in cubes_of(A, 3)]


def _p_square():
    return square(top=p(), bottom=to_terminal(T2), left=q(), right=to_terminal(R3))


def test_build_square():
    sq = _p_square()
    assert [V.size for V in sq.vertices] == [6, 2, 3, 1]
    assert sq.initial == P() and sq.terminal == T1


def test_point_is_valid():
    c = build_cube(0, [R3], {})
    assert c == point(R3) and c.initial == c.terminal == R3


def test_non_commuting_square_rejected():
    with pytest.raises(InputError, match="does not commute"):
        build_cube(2, (P(), T2, R3, T2), {(0, 1): q(), (0, 2): p(), (2, 1): Hom(R3, T2, (0, 0, 0)),
                                         (1, 2): Hom(T2, T2, (0, 1))})


def test_missing_and_bad_edges():
    with pytest.raises(InputError, match="missing edge"):
        build_cube(1, (R3, T1), {})
    with pytest.raises(InputError):
        build_cube(1, (T2, R3), {(0, 1): (0, 1)})
    with pytest.raises(InputError):
        build_cube(1, (R3,), {})


def test_bitstrings():
    assert bitstring(0b01, 2) == "10"
    assert parse_bitstring("10") == 1
    assert all(parse_bitstring(bitstring(S, 3)) == S for S in range(8))


def test_faces_of_reflection_square():
    rs = reflection_square(QUANDLE, p())
    assert face(rs, 1, "dom") == arrow(p())
    view = as_arrow(rs, 1)
    assert view.dom == arrow(p())
    assert [V.size for V in view.cod.vertices] == [2, 1]
    assert kernel_congruence(view.components[0]) == kernel_congruence(q())
    assert view.components[1].cod.size == 1


def test_identity_square_faces_agree():
    ids = identity_cube(arrow(p()))
    assert face(ids, 1, "dom") == face(ids, 1, "cod")
    assert face(ids, 2, "dom") == arrow(identity(P()))
    assert as_arrow(arrow(p()), 1).components == (p(),)


def test_face_out_of_range():
    with pytest.raises(InputError):
        face(arrow(p()), 2, "dom")
    with pytest.raises(InputError):
        face(arrow(p()), 1, "middle")


def test_three_views_of_a_cube():
    c = next(c for c in CUBES3 if len({kernel_congruence(c.edge(0, d)) for d in (1, 2, 3)}) == 3)
    views = [as_arrow(c, d) for d in (1, 2, 3)]
    assert all(len(v.components) == 4 for v in views)
    assert len({(v.dom, v.cod) for v in views}) == 3
    assert all(v.dom == face(c, d, "dom") and v.cod == face(c, d, "cod") for d, v in zip((1, 2, 3), views))


def test_compose_squares_over_identity():
    f = p()
    g = to_terminal(R3)
    a = cube_from_arrow(arrow(identity(P())), arrow(identity(R3)), [f, f])
    b = cube_from_arrow(arrow(identity(R3)), arrow(identity(T1)), [g, g])
    c = compose_cubes(a, b, 1)
    assert c.edge(0, 1).values == f.then(g).values
    with pytest.raises(InputError):
        compose_cubes(b, a, 1)


def test_map_vertices_identity_units():
    sq = _p_square()
    new, conn = map_vertices(sq, [identity(V) for V in sq.vertices])
    assert new == sq
    assert all(conn.edge(S << 1, 1).values == tuple(V.elements) for S, V in enumerate(sq.vertices))


def test_map_vertices_reflects_square_to_three_cube():
    sq = _p_square()
    units = [to_terminal(V) if V.size > 2 else identity(V) for V in sq.vertices]
    units[0] = q()
    new, conn = map_vertices(sq, units)
    assert conn.dim == 3 and face(conn, 1, "dom") == sq


def test_map_vertices_rejects_ill_defined():
    with pytest.raises(InputError):
        map_vertices(arrow(p()), [q(), identity(R3)])
    with pytest.raises(InputError):
        map_vertices(arrow(p()), [identity(P())])


# -- bookkeeping laws ----------------------------------------------------------------


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(CUBES3), st.integers(1, 3), st.integers(1, 3))
def test_view_order_commutes(c, d, e):
    if d == e:
        return
    # the face taken by d then e equals e then d (indices shift past the removed one)
    e1 = e - 1 if e > d else e
    d1 = d - 1 if d > e else d
    for sd in ("dom", "cod"):
        for se in ("dom", "cod"):
            assert face(face(c, d, sd), e1, se) == face(face(c, e, se), d1, sd)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(CUBES3), st.integers(1, 3))
def test_arrow_view_round_trip(c, d):
    view = as_arrow(c, d)
    rebuilt = from_front(cube_from_arrow(view.dom, view.cod, view.components), d)
    assert rebuilt == c
    assert from_front(bring_to_front(c, d), d) == c


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(CUBES3), st.permutations([1, 2, 3]))
def test_reorder_is_invertible(c, order):
    inverse = [order.index(k) + 1 for k in (1, 2, 3)]
    assert reorder(reorder(c, order), inverse) == c


def test_transpose_involution():
    sq = _p_square()
    assert transpose(transpose(sq)) == sq
    assert transpose(sq).vertex(1) == sq.vertex(2)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(CUBES3), st.integers(1, 3))
def test_identity_cubes_are_neutral(c, d):
    a = face(c, d, "dom")
    b = face(c, d, "cod")
    left = from_front(identity_cube(a), d)
    right = from_front(identity_cube(b), d)
    assert compose_cubes(left, c, d) == c
    assert compose_cubes(c, right, d) == c


def test_composition_is_associative():
    x = arrow(p())
    y = arrow(to_terminal(R3))
    z = arrow(identity(T1))
    assert compose_cubes(compose_cubes(x, y, 1), z, 1) == compose_cubes(x, compose_cubes(y, z, 1), 1)
    sq = _p_square()
    right = cube_from_arrow(face(sq, 1, "cod"), face(sq, 1, "cod"), [identity(T2), identity(T1)])
    assert compose_cubes(compose_cubes(sq, right, 1), right, 1) == compose_cubes(sq, compose_cubes(right, right, 1), 1)
