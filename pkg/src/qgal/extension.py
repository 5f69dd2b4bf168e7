"""Higher extensions: comparison maps, the inductive extension test,
component-wise pullbacks, kernel-pair cubes and the initial-object pushout.

An ``n``-cube (``n >= 2``) is read as a square whose corners are
``(n-2)``-cubes, using two chosen directions.  It is an ``n``-fold extension
when the four sides of that square are ``(n-1)``-fold extensions and so is
the comparison ``(n-1)``-cube from the initial corner into the vertexwise
pullback of the two sides meeting at the terminal corner.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .algebra import FiniteAlgebra, Hom, coequalizer, identity, pullback, pushout_of_surjections
from .diagram import (
    CubeDiagram,
    add,
    bitstring,
    build_cube,
    cube_from_arrow,
    face,
    has,
    identity_cube,
    map_vertices,
    reorder,
)
from .errors import InputError, PropertyViolation


@dataclass(frozen=True)
class ExtensionVerdict:
    """``witness`` is a path to the first failure, e.g.
    ``(("face", 1, "dom"), ("comparison",), ("edge", "01"))``."""

    cube: CubeDiagram = field(repr=False)
    is_extension: bool
    witness: tuple = ()

    def __bool__(self):
        return self.is_extension

    def to_json(self) -> dict:
        return {"is_extension": self.is_extension, "witness": [list(w) for w in self.witness]}


# ---------------------------------------------------------------------------
# comparison maps


def comparison_hom(square: CubeDiagram, d: int = 1):
    """The map from the initial vertex into the pullback of the two edges
    into the terminal vertex.

    Returns ``(FibreProduct, Hom)``.  The pullback lists the vertex of
    direction ``d`` first; the map is the same up to that swap for either
    choice.
    """
    if square.dim != 2:
        raise InputError("comparison_hom expects a square")
    if d not in (1, 2):
        raise InputError("direction must be 1 or 2")
    e = 3 - d
    Vd, Ve = 1 << (d - 1), 1 << (e - 1)
    fp = pullback(square.edge(Vd, e), square.edge(Ve, d))
    return fp, fp.induced(square.edge(0, d), square.edge(0, e))


def _to_front(cube: CubeDiagram, d: int, e: int) -> CubeDiagram:
    order = [d, e] + [k for k in range(1, cube.dim + 1) if k not in (d, e)]
    return reorder(cube, order)


def vertexwise_pullback(f: CubeDiagram, g: CubeDiagram) -> CubeDiagram:
    """Pullback of two arrows of ``k``-cubes with a common codomain cube.

    Both arguments are ``(k+1)``-cubes read as arrows in direction 1.  The
    result is a ``(k+2)``-cube: directions 1 and 2 span the pullback square
    and the cube directions follow.  At each ``k``-cube index ``i`` the corners
    are ``(i << 2) | b`` with ``b = 0`` the pullback, ``1`` the domain of
    ``g``, ``2`` the domain of ``f`` and ``3`` the shared codomain, so the
    face in direction 1 at ``dom`` is the projection onto the domain of ``f``
    and the face in direction 2 at ``dom`` is the projection onto the domain
    of ``g``.
    """
    if f.dim != g.dim or f.dim < 1:
        raise InputError("pullback of arrows of different shapes")
    k = f.dim - 1
    size = 1 << k
    for i in range(size):
        if f.vertices[(i << 1) | 1] != g.vertices[(i << 1) | 1]:
            raise InputError(f"arrows do not share a codomain at cube vertex {i}")
    fps = [pullback(f.edge(i << 1, 1), g.edge(i << 1, 1)) for i in range(size)]
    vertices = [None] * (size << 2)
    edges: dict[tuple[int, int], Hom] = {}
    for i in range(size):
        fp = fps[i]
        vertices[i << 2] = fp.apex
        vertices[(i << 2) | 1] = g.vertices[i << 1]
        vertices[(i << 2) | 2] = f.vertices[i << 1]
        vertices[(i << 2) | 3] = f.vertices[(i << 1) | 1]
        edges[(i << 2, 1)] = fp.right
        edges[(i << 2, 2)] = fp.left
        edges[((i << 2) | 2, 1)] = f.edge(i << 1, 1)
        edges[((i << 2) | 1, 2)] = g.edge(i << 1, 1)
        for d in range(1, k + 1):
            if has(i, d):
                continue
            j = add(i, d)
            # old direction d+1 in the arrow cubes, new direction d+2
            fx = f.edge(i << 1, d + 1)
            fz = f.edge((i << 1) | 1, d + 1)
            gy = g.edge(i << 1, d + 1)
            edges[((i << 2) | 2, d + 2)] = fx
            edges[((i << 2) | 3, d + 2)] = fz
            edges[((i << 2) | 1, d + 2)] = gy
            edges[(i << 2, d + 2)] = fps[j].induced(fp.left.then(fx), fp.right.then(gy))
    return build_cube(k + 2, vertices, edges, check=False)


def comparison_cube(cube: CubeDiagram, d: int = 1, e: int = 2) -> CubeDiagram:
    """The comparison ``(n-1)``-cube of an ``n``-cube read as a square in directions ``d, e``.

    Direction 1 of the result is the comparison; its domain face is the
    initial corner and its codomain face the vertexwise pullback.
    """
    n = cube.dim
    if n < 2:
        raise InputError("comparison needs at least two directions")
    c = _to_front(cube, d, e)
    k = n - 2
    size = 1 << k

    def corner(b: int) -> CubeDiagram:
        verts = tuple(c.vertices[(i << 2) | b] for i in range(size))
        edges = {(i, dd): c.edge((i << 2) | b, dd + 2) for i in range(size) for dd in range(1, k + 1) if not has(i, dd)}
        return CubeDiagram(k, verts, edges)

    def side(b: int, direction: int) -> CubeDiagram:
        src, dst = corner(b), corner(b | (1 << (direction - 1)))
        comps = [c.edge((i << 2) | b, direction) for i in range(size)]
        return cube_from_arrow(src, dst, comps, check=False)

    # pull back the side 01 -> 11 (direction 2) against 10 -> 11 (direction 1)
    pb = vertexwise_pullback(side(1, 2), side(2, 1))
    P = CubeDiagram(
        k,
        tuple(pb.vertices[i << 2] for i in range(size)),
        {(i, dd): pb.edge(i << 2, dd + 2) for i in range(size) for dd in range(1, k + 1) if not has(i, dd)},
    )
    comps = []
    for i in range(size):
        fp = pullback(c.edge((i << 2) | 1, 2), c.edge((i << 2) | 2, 1))
        comps.append(fp.induced(c.edge(i << 2, 1), c.edge(i << 2, 2)))
    return cube_from_arrow(corner(0), P, comps, check=False)


# ---------------------------------------------------------------------------
# the extension predicate


def _extension(cube: CubeDiagram, d: int, e: int, check_all: bool) -> tuple[bool, tuple]:
    n = cube.dim
    if n == 0:
        return True, ()
    if n == 1:
        if cube.edge(0, 1).is_surjective():
            return True, ()
        return False, (("edge", bitstring(0, 1)),)
    for dd, side in ((d, "dom"), (d, "cod"), (e, "dom"), (e, "cod")):
        ok, w = _verdict(face(cube, dd, side), check_all)
        if not ok:
            return False, (("face", dd, side),) + w
    ok, w = _verdict(comparison_cube(cube, d, e), check_all)
    if not ok:
        return False, (("comparison", d, e),) + w
    return True, ()


def _verdict(cube: CubeDiagram, check_all: bool) -> tuple[bool, tuple]:
    ok, w = _extension(cube, 1, 2, check_all)
    if check_all and cube.dim >= 3:
        for d, e in combinations(range(1, cube.dim + 1), 2):
            if (d, e) == (1, 2):
                continue
            other, _ = _extension(cube, d, e, check_all)
            if other != ok:
                raise PropertyViolation(
                    f"extension verdict depends on direction: (1,2) gives {ok}, ({d},{e}) gives {other}",
                    witness=cube,
                )
    return ok, w


def is_nfold_extension(cube: CubeDiagram, check_directions: bool = True) -> ExtensionVerdict:
    """Decide whether ``cube`` is an ``n``-fold extension.

    Directions ``(1, 2)`` decide; with ``check_directions`` every other
    pair is evaluated too and a disagreement raises
    :class:`PropertyViolation`.
    """
    ok, w = _verdict(cube, check_directions)
    return ExtensionVerdict(cube, ok, w)


def is_double_extension(square: CubeDiagram) -> ExtensionVerdict:
    if square.dim != 2:
        raise InputError("expected a square")
    return is_nfold_extension(square)


def is_extension(cube: CubeDiagram) -> bool:
    return is_nfold_extension(cube, check_directions=False).is_extension


def extension_direction_report(cube: CubeDiagram) -> dict[tuple[int, int], bool]:
    """The verdict for every choice of the pair of directions (no assertion)."""
    out = {}
    for d, e in combinations(range(1, cube.dim + 1), 2):
        out[(d, e)] = _extension(cube, d, e, False)[0]
    if cube.dim < 2:
        out[()] = _extension(cube, 1, 2, False)[0]
    return out


# ---------------------------------------------------------------------------
# pullbacks and kernel pairs of cube arrows


def arrow_is_extension(arrow_cube: CubeDiagram) -> bool:
    return is_extension(arrow_cube)


def cube_pullback(f: CubeDiagram, g: CubeDiagram) -> CubeDiagram:
    """Component-wise pullback of cube arrows ``f: X -> Z`` and ``g: Y -> Z``.

    One of the two must be an extension (of order ``dim``).  The projection
    opposite it is asserted to be an extension as well.  See
    :func:`vertexwise_pullback` for the layout of the result.
    """
    f_ext = arrow_is_extension(f)
    g_ext = arrow_is_extension(g)
    if not (f_ext or g_ext):
        raise InputError("pullbacks are only formed along extensions")
    out = vertexwise_pullback(f, g)
    if g_ext and not is_extension(face(out, 1, "dom")):
        raise PropertyViolation("pullback of an extension is not an extension", witness=out)
    if f_ext and not is_extension(face(out, 2, "dom")):
        raise PropertyViolation("pullback of an extension is not an extension", witness=out)
    return out


@dataclass(frozen=True)
class KernelPairCube:
    eq: CubeDiagram
    d: CubeDiagram
    c: CubeDiagram
    square: CubeDiagram = field(repr=False)


def kernel_pair_cube(sigma: CubeDiagram, d: int = 1) -> KernelPairCube:
    """Vertexwise kernel pair of ``sigma`` read as an arrow in direction ``d``.

    ``eq`` is the cube of kernel pairs, ``d`` and ``c`` the two projection
    arrows (cubes of the same dimension as ``sigma``, arrow in direction 1),
    and ``square`` the whole pullback cube.
    """
    s = reorder(sigma, [d] + [k for k in range(1, sigma.dim + 1) if k != d])
    sq = vertexwise_pullback(s, s)
    dproj = face(sq, 1, "dom")
    cproj = face(sq, 2, "dom")
    return KernelPairCube(face(dproj, 1, "dom"), dproj, cproj, sq)


def coequalizer_of_kernel_pair(k: KernelPairCube) -> CubeDiagram:
    """Coequalise the two projections vertexwise; returns the quotient arrow
    (direction 1) out of the common codomain cube."""
    A = face(k.d, 1, "cod")
    size = 1 << A.dim
    units = []
    for i in range(size):
        _, q = coequalizer(k.d.edge(i << 1, 1), k.c.edge(i << 1, 1))
        units.append(q)
    _, conn = map_vertices(A, units)
    return conn


# ---------------------------------------------------------------------------
# pushouts along near-identity legs


@dataclass(frozen=True)
class InitialPushout:
    apex: FiniteAlgebra
    into_apex_from_bottom: Hom
    into_apex_from_right: Hom
    comparison: Hom

    @property
    def is_pushout(self) -> bool:
        return self.comparison.is_iso()


def _is_identity(h: Hom) -> bool:
    return h.dom == h.cod and h.values == tuple(range(h.dom.size))


def initial_pushout(cube: CubeDiagram) -> InitialPushout:
    """Reduce a square of cube maps to the square of initial vertices.

    ``cube`` has dimension ``k + 2``: direction 1 carries ``z_A: A -> Ā`` and
    ``z_B: B -> B̄``, direction 2 carries ``φ: A -> B`` and ``φ̄: Ā -> B̄``.
    Every component of ``z_B`` except the initial one must be an identity.
    Computes the pushout ``P`` of the initial components of ``φ`` and
    ``z_A`` and the comparison ``P -> B̄∧``; the square is a pushout of cube
    maps exactly when this comparison is an isomorphism.
    """
    if cube.dim < 2:
        raise InputError("initial_pushout expects at least a square")
    k = cube.dim - 2
    for i in range(1, 1 << k):
        if not _is_identity(cube.edge((i << 2) | 2, 1)):
            raise InputError(f"leg is not an identity at cube vertex {bitstring(i, k)}")
    s_A = cube.edge(0, 1)
    f = cube.edge(0, 2)
    s_B = cube.edge(2, 1)
    f_bar = cube.edge(1, 2)
    P, from_B, from_Abar = pushout_of_surjections(f, s_A)
    vals = [-1] * P.size
    for b in f.cod.elements:
        vals[from_B.values[b]] = s_B.values[b]
    comparison = Hom(P, s_B.cod, vals)
    if from_Abar.then(comparison).values != f_bar.values:
        raise PropertyViolation("pushout comparison does not commute", witness=cube)
    return InitialPushout(P, from_B, from_Abar, comparison)


def identity_square(cube: CubeDiagram) -> CubeDiagram:
    return identity_cube(cube)


def pullback_at_vertex(cube: CubeDiagram, S: int, e: Hom) -> CubeDiagram:
    """Pull ``cube`` back along ``e: E -> cube.vertex(S)``.

    Vertices ``T ⊆ S`` become ``V_T ×_{V_S} E``; the other vertices are
    kept.  Returns the ``(n+1)``-cube from the new cube to the old one
    (direction 1), whose components are the projections and identities.
    """
    if e.cod != cube.vertices[S]:
        raise InputError("the map does not land in the chosen vertex")
    n = cube.dim
    fps = {T: pullback(cube.path_to(T, S), e) for T in range(1 << n) if not T & ~S}
    verts = [fps[T].apex if T in fps else cube.vertices[T] for T in range(1 << n)]
    edges = {}
    for T, d, f in cube.all_edges():
        U = add(T, d)
        if U in fps:
            edges[(T, d)] = fps[U].induced(fps[T].left.then(f), fps[T].right)
        elif T in fps:
            edges[(T, d)] = fps[T].left.then(f)
        else:
            edges[(T, d)] = f
    new = build_cube(n, verts, edges, check=False)
    comps = [fps[T].left if T in fps else identity(cube.vertices[T]) for T in range(1 << n)]
    return cube_from_arrow(new, cube, comps, check=False)
