"""n-cubical diagrams of finite algebras.

Vertices are indexed by bitmasks: bit ``d - 1`` set means direction ``d`` is
in the subset.  Every edge goes from ``S`` to ``S ∪ {d}``, so vertex ``0``
is the initial vertex and ``2^n - 1`` the terminal one.

When a cube is read as an arrow between two cubes of one dimension lower,
the arrow direction is direction 1; the remaining directions keep their
relative order.  So for an ``(n+1)``-cube built from an arrow, vertex
``(i << 1) | s`` is vertex ``i`` of the domain (``s = 0``) or codomain
(``s = 1``) cube.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, NamedTuple, Sequence

from .algebra import FiniteAlgebra, Hom, identity, is_homomorphism
from .errors import InputError


def has(S: int, d: int) -> bool:
    return bool(S >> (d - 1) & 1)


def add(S: int, d: int) -> int:
    return S | (1 << (d - 1))


def remove_bit(S: int, d: int) -> int:
    """Delete the bit of direction ``d`` and shift the higher bits down."""
    low = S & ((1 << (d - 1)) - 1)
    high = S >> d
    return low | (high << (d - 1))


def insert_bit(S: int, d: int, bit: int) -> int:
    """Inverse of :func:`remove_bit`: make room at direction ``d`` and set it to ``bit``."""
    low = S & ((1 << (d - 1)) - 1)
    high = S >> (d - 1)
    return low | (bit << (d - 1)) | (high << d)


def bitstring(S: int, n: int) -> str:
    """Little-endian: character ``d - 1`` is direction ``d``."""
    return "".join("1" if has(S, d) else "0" for d in range(1, n + 1))


def parse_bitstring(s: str) -> int:
    if any(c not in "01" for c in s):
        raise InputError(f"bad vertex bitstring {s!r}")
    return sum(1 << i for i, c in enumerate(s) if c == "1")


@dataclass(frozen=True)
class CubeDiagram:
    """A commuting ``n``-cube.  Build through :func:`build_cube`."""

    dim: int
    vertices: tuple[FiniteAlgebra, ...]
    edges: Mapping[tuple[int, int], Hom]

    def __repr__(self):
        sizes = [v.size for v in self.vertices]
        return f"CubeDiagram(dim={self.dim}, sizes={sizes})"

    def __eq__(self, other):
        if not isinstance(other, CubeDiagram):
            return NotImplemented
        return (self.dim == other.dim and self.vertices == other.vertices
                and all(self.edges[k].values == other.edges[k].values for k in self.edges))

    def __hash__(self):
        return hash((self.dim, self.vertices, tuple(sorted((k, v.values) for k, v in self.edges.items()))))

    def vertex(self, S: int) -> FiniteAlgebra:
        return self.vertices[S]

    def edge(self, S: int, d: int) -> Hom:
        return self.edges[(S, d)]

    @property
    def initial(self) -> FiniteAlgebra:
        return self.vertices[0]

    @property
    def terminal(self) -> FiniteAlgebra:
        return self.vertices[-1]

    def path_to(self, S: int, T: int) -> Hom:
        """The composite map ``vertex(S) -> vertex(T)`` for ``S ⊆ T``."""
        if S & ~T:
            raise InputError("no map between these vertices")
        h = identity(self.vertices[S])
        cur = S
        for d in range(1, self.dim + 1):
            if has(T, d) and not has(cur, d):
                h = h.then(self.edges[(cur, d)])
                cur = add(cur, d)
        return h

    def to_terminal(self, S: int) -> Hom:
        return self.path_to(S, (1 << self.dim) - 1)

    def all_edges(self):
        for S in range(1 << self.dim):
            for d in range(1, self.dim + 1):
                if not has(S, d):
                    yield S, d, self.edges[(S, d)]


def _check_face(vertices, edges, S, d, e):
    a = edges[(S, d)].then(edges[(add(S, d), e)])
    b = edges[(S, e)].then(edges[(add(S, e), d)])
    if a.values != b.values:
        x = next(i for i, (u, v) in enumerate(zip(a.values, b.values)) if u != v)
        raise InputError(
            f"face at vertex {S} in directions ({d},{e}) does not commute at element {x}"
        )


def build_cube(
    n: int,
    vertices: Sequence[FiniteAlgebra],
    edges: Mapping[tuple[int, int], Hom | Sequence[int]],
    check: bool = True,
) -> CubeDiagram:
    """Assemble and validate an ``n``-cube.

    ``edges[(S, d)]`` may be a :class:`Hom` or a bare value array.  With
    ``check`` on, every edge is verified to be a homomorphism between the
    right vertices and every 2-face is verified to commute.
    """
    if n < 0:
        raise InputError("negative dimension")
    if len(vertices) != 1 << n:
        raise InputError(f"expected {1 << n} vertices, got {len(vertices)}")
    vertices = tuple(vertices)
    out: dict[tuple[int, int], Hom] = {}
    for S in range(1 << n):
        for d in range(1, n + 1):
            if has(S, d):
                continue
            if (S, d) not in edges:
                raise InputError(f"missing edge at vertex {bitstring(S, n)} direction {d}")
            e = edges[(S, d)]
            T = add(S, d)
            if isinstance(e, Hom):
                if check and (e.dom != vertices[S] or e.cod != vertices[T]):
                    raise InputError(f"edge ({bitstring(S, n)},{d}) has wrong endpoints")
                h = e
            else:
                h = Hom(vertices[S], vertices[T], tuple(e))
            if check and not is_homomorphism(h.dom, h.cod, h.values):
                raise InputError(f"edge ({bitstring(S, n)},{d}) is not a homomorphism")
            out[(S, d)] = h
    if check:
        for S in range(1 << n):
            for d in range(1, n + 1):
                for e in range(d + 1, n + 1):
                    if not has(S, d) and not has(S, e):
                        _check_face(vertices, out, S, d, e)
    return CubeDiagram(n, vertices, out)


def point(A: FiniteAlgebra) -> CubeDiagram:
    return CubeDiagram(0, (A,), {})


def arrow(f: Hom) -> CubeDiagram:
    return CubeDiagram(1, (f.dom, f.cod), {(0, 1): f})


def square(top: Hom, bottom: Hom, left: Hom, right: Hom) -> CubeDiagram:
    """The square read as an arrow ``top -> bottom`` in direction 1.

    ``top: A -> B`` and ``bottom: C -> D`` lie in direction 2, ``left: A -> C``
    and ``right: B -> D`` in direction 1.
    """
    return build_cube(
        2,
        (top.dom, left.cod, top.cod, right.cod),
        {(0, 1): left, (2, 1): right, (0, 2): top, (1, 2): bottom},
    )


def cube_from_arrow(dom: CubeDiagram, cod: CubeDiagram, components: Sequence[Hom], check: bool = True) -> CubeDiagram:
    """The ``(n+1)``-cube of a map of ``n``-cubes, with the map in direction 1."""
    n = dom.dim
    if cod.dim != n or len(components) != 1 << n:
        raise InputError("arrow of cubes has inconsistent shape")
    vertices = [None] * (1 << (n + 1))
    edges: dict[tuple[int, int], Hom] = {}
    for i in range(1 << n):
        vertices[i << 1] = dom.vertices[i]
        vertices[(i << 1) | 1] = cod.vertices[i]
        edges[(i << 1, 1)] = components[i]
        for d in range(1, n + 1):
            if not has(i, d):
                edges[(i << 1, d + 1)] = dom.edges[(i, d)]
                edges[((i << 1) | 1, d + 1)] = cod.edges[(i, d)]
    return build_cube(n + 1, vertices, edges, check=check)


def reorder(cube: CubeDiagram, order: Sequence[int]) -> CubeDiagram:
    """Renumber directions: new direction ``k`` is old direction ``order[k-1]``."""
    n = cube.dim
    if sorted(order) != list(range(1, n + 1)):
        raise InputError("direction order must be a permutation of 1..n")

    def old_index(T: int) -> int:
        S = 0
        for k, d in enumerate(order, start=1):
            if has(T, k):
                S = add(S, d)
        return S

    vertices = [cube.vertices[old_index(T)] for T in range(1 << n)]
    edges = {}
    for T in range(1 << n):
        for k, d in enumerate(order, start=1):
            if not has(T, k):
                edges[(T, k)] = cube.edges[(old_index(T), d)]
    return CubeDiagram(n, tuple(vertices), edges)


def bring_to_front(cube: CubeDiagram, d: int) -> CubeDiagram:
    """Make direction ``d`` direction 1, keeping the others in order."""
    if not 1 <= d <= cube.dim:
        raise InputError(f"direction {d} out of range 1..{cube.dim}")
    order = [d] + [e for e in range(1, cube.dim + 1) if e != d]
    return reorder(cube, order)


def transpose(square_: CubeDiagram) -> CubeDiagram:
    return reorder(square_, (2, 1))


def face(cube: CubeDiagram, d: int, side: str | int) -> CubeDiagram:
    """The ``(n-1)``-cube where direction ``d`` is absent (``"dom"``) or present (``"cod"``)."""
    n = cube.dim
    if not 1 <= d <= n:
        raise InputError(f"direction {d} out of range 1..{n}")
    bit = _side_bit(side)
    vertices = [cube.vertices[insert_bit(T, d, bit)] for T in range(1 << (n - 1))]
    edges = {}
    for T in range(1 << (n - 1)):
        for e in range(1, n):
            if not has(T, e):
                old_e = e if e < d else e + 1
                edges[(T, e)] = cube.edges[(insert_bit(T, d, bit), old_e)]
    return CubeDiagram(n - 1, tuple(vertices), edges)


def _side_bit(side: str | int) -> int:
    if side in ("dom", "domain", 0):
        return 0
    if side in ("cod", "codomain", 1):
        return 1
    raise InputError(f"side must be 'dom' or 'cod', got {side!r}")


class ArrowView(NamedTuple):
    dom: CubeDiagram
    cod: CubeDiagram
    components: tuple[Hom, ...]


def as_arrow(cube: CubeDiagram, d: int = 1) -> ArrowView:
    """Read an ``n``-cube as a map between its two faces in direction ``d``.

    ``components[i]`` is the edge from vertex ``i`` of the domain face to
    vertex ``i`` of the codomain face.
    """
    n = cube.dim
    if not 1 <= d <= n:
        raise InputError(f"direction {d} out of range 1..{n}")
    comps = tuple(cube.edges[(insert_bit(T, d, 0), d)] for T in range(1 << (n - 1)))
    return ArrowView(face(cube, d, "dom"), face(cube, d, "cod"), comps)


def identity_cube(cube: CubeDiagram) -> CubeDiagram:
    """The identity arrow on ``cube``, as an ``(n+1)``-cube."""
    return cube_from_arrow(cube, cube, [identity(v) for v in cube.vertices], check=False)


def compose_cubes(c1: CubeDiagram, c2: CubeDiagram, d: int = 1) -> CubeDiagram:
    """Paste two cubes along direction ``d``: ``c1`` first, then ``c2``."""
    if c1.dim != c2.dim:
        raise InputError("cannot compose cubes of different dimensions")
    a1 = as_arrow(c1, d)
    a2 = as_arrow(c2, d)
    if a1.cod != a2.dom:
        raise InputError("codomain face of the first cube differs from domain face of the second")
    comps = [f.then(g) for f, g in zip(a1.components, a2.components)]
    return from_front(cube_from_arrow(a1.dom, a2.cod, comps, check=False), d)


def from_front(cube: CubeDiagram, d: int) -> CubeDiagram:
    """Inverse of :func:`bring_to_front`: move direction 1 to position ``d``."""
    n = cube.dim
    order = [e + 1 for e in range(1, d)] + [1] + list(range(d + 1, n + 1))
    return reorder(cube, order)


def map_vertices(cube: CubeDiagram, units: Sequence[Hom]) -> tuple[CubeDiagram, CubeDiagram]:
    """Push a cube forward along surjective vertex maps.

    ``units[S]`` must start at ``cube.vertex(S)`` and be surjective.  Each
    edge of the new cube is the map induced on the quotients; a
    :class:`InputError` reports the first edge that is not well defined.
    Returns the new cube and the connecting ``(n+1)``-cube (direction 1 is
    the unit direction).
    """
    n = cube.dim
    if len(units) != 1 << n:
        raise InputError("one unit per vertex is needed")
    for S, u in enumerate(units):
        if u.dom != cube.vertices[S]:
            raise InputError(f"unit at vertex {bitstring(S, n)} starts at the wrong algebra")
        if not u.is_surjective():
            raise InputError(f"unit at vertex {bitstring(S, n)} is not surjective")
    new_vertices = tuple(u.cod for u in units)
    edges = {}
    for S, d, f in cube.all_edges():
        T = add(S, d)
        uS, uT = units[S], units[T]
        vals = [-1] * uS.cod.size
        for x in f.dom.elements:
            y = uT.values[f.values[x]]
            k = uS.values[x]
            if vals[k] == -1:
                vals[k] = y
            elif vals[k] != y:
                raise InputError(f"edge ({bitstring(S, n)},{d}) does not descend to the image cube")
        edges[(S, d)] = Hom(uS.cod, uT.cod, vals)
    new = build_cube(n, new_vertices, edges)
    conn = cube_from_arrow(cube, new, list(units), check=False)
    return new, conn
