"""Discrete fibrations: extension cubes whose initial vertex is the limit of
the rest of the cube."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .algebra import FiniteAlgebra, Hom
from .diagram import CubeDiagram, bring_to_front, face, has
from .errors import InputError, PropertyViolation
from .extension import comparison_cube, cube_pullback, is_extension


@dataclass(frozen=True)
class PuncturedLimit:
    """The limit of a cube with its initial vertex removed.

    Elements are tuples indexed by the depth-1 vertices (direction 1 first);
    ``cone[S]`` is the limit projection to vertex ``S`` (``cone[0]`` is None).
    """

    apex: FiniteAlgebra
    families: tuple[tuple[int, ...], ...]
    cone: tuple


def punctured_limit(cube: CubeDiagram) -> PuncturedLimit:
    """Compatible families over the depth-1 vertices.

    A family ``(x_1, ..., x_n)`` with ``x_d`` in vertex ``{d}`` belongs to
    the limit when for every ``d < e`` the two images in vertex ``{d, e}``
    agree; commutativity of the cube then fixes a unique value at every
    deeper vertex.
    """
    n = cube.dim
    if n == 0:
        raise InputError("a point has no punctured limit")
    singles = [1 << (d - 1) for d in range(1, n + 1)]
    families: list[tuple[int, ...]] = [(x,) for x in cube.vertices[singles[0]].elements]
    for e in range(2, n + 1):
        Ve = singles[e - 1]
        nxt = []
        checks = [(d, cube.edge(singles[d - 1], e).values, cube.edge(Ve, d).values) for d in range(1, e)]
        for fam in families:
            for y in cube.vertices[Ve].elements:
                if all(fd[fam[d - 1]] == fe[y] for d, fd, fe in checks):
                    nxt.append(fam + (y,))
        families = nxt
    families_t = tuple(families)
    index = {f: i for i, f in enumerate(families_t)}
    tables = [cube.vertices[s].table for s in singles]
    rows = []
    for a in families_t:
        row = []
        for b in families_t:
            row.append(index[tuple(tables[k][a[k]][b[k]] for k in range(n))])
        rows.append(row)
    apex = FiniteAlgebra(cube.initial.variety, rows)
    cone: list[Hom | None] = [None]
    for S in range(1, 1 << n):
        d = next(d for d in range(1, n + 1) if has(S, d))
        path = cube.path_to(singles[d - 1], S).values
        cone.append(Hom(apex, cube.vertices[S], tuple(path[f[d - 1]] for f in families_t)))
    return PuncturedLimit(apex, families_t, tuple(cone))


@dataclass(frozen=True)
class DFVerdict:
    cube: CubeDiagram = field(repr=False)
    is_df: bool
    is_extension: bool
    limit_size: int
    comparison: Hom | None = field(repr=False, default=None)

    def __bool__(self):
        return self.is_df

    def to_json(self) -> dict:
        return {
            "is_df": self.is_df,
            "is_extension": self.is_extension,
            "limit_size": self.limit_size,
            "comparison": list(self.comparison.values) if self.comparison is not None else None,
        }


def limit_comparison(cube: CubeDiagram) -> tuple[PuncturedLimit, Hom]:
    lim = punctured_limit(cube)
    n = cube.dim
    maps = [cube.edge(0, d).values for d in range(1, n + 1)]
    index = {f: i for i, f in enumerate(lim.families)}
    vals = []
    for x in cube.initial.elements:
        fam = tuple(m[x] for m in maps)
        vals.append(index[fam])
    return lim, Hom(cube.initial, lim.apex, tuple(vals))


def is_limit_cube(cube: CubeDiagram) -> bool:
    if cube.dim == 0:
        return True
    _, c = limit_comparison(cube)
    return c.is_iso()


def is_discrete_fibration(cube: CubeDiagram, require_extension: bool = True) -> DFVerdict:
    """Direct test: the comparison from the initial vertex into the punctured
    limit is bijective, and the cube is an extension."""
    ext = is_extension(cube) if require_extension else True
    if cube.dim == 0:
        return DFVerdict(cube, ext, ext, cube.initial.size, None)
    lim, c = limit_comparison(cube)
    return DFVerdict(cube, ext and c.is_iso(), ext, lim.apex.size, c)


def _recursive_limit(cube: CubeDiagram, d: int, e: int) -> bool:
    n = cube.dim
    if n == 0:
        return True
    if n == 1:
        return cube.edge(0, 1).is_iso()
    comp = comparison_cube(cube, d, e)
    return _recursive_limit(comp, 1, 2) if comp.dim >= 2 else comp.edge(0, 1).is_iso()


def is_df_recursive(cube: CubeDiagram, directions: tuple[int, int] | None = None, cross_check: bool = True) -> bool:
    """Recursive test: the comparison into the pullback, read in the chosen
    pair of directions, is itself a discrete fibration one order down.

    With ``cross_check`` the answer is compared with
    :func:`is_discrete_fibration` and a mismatch raises
    :class:`PropertyViolation`.
    """
    n = cube.dim
    ext = is_extension(cube)
    if n <= 1:
        limit = _recursive_limit(cube, 1, 2)
    else:
        d, e = directions or (1, 2)
        if not (1 <= d <= n and 1 <= e <= n and d != e):
            raise InputError(f"bad direction pair {(d, e)}")
        limit = _recursive_limit(cube, d, e)
    out = ext and limit
    if cross_check:
        direct = is_discrete_fibration(cube)
        if direct.is_df != out:
            raise PropertyViolation(
                f"recursive and direct discrete-fibration tests disagree ({out} vs {direct.is_df})",
                witness=cube,
            )
    return out


def all_direction_pairs(n: int):
    return [(d, e) for d, e in combinations(range(1, n + 1), 2)] + [
        (e, d) for d, e in combinations(range(1, n + 1), 2)
    ]


def df_pullback(df: CubeDiagram, along: CubeDiagram, d: int = 1) -> CubeDiagram:
    """Pull the discrete fibration ``df`` (an arrow in direction ``d``) back
    along the extension arrow ``along`` (direction 1) with the same codomain.

    Returns the pulled-back arrow, with its arrow direction in front.  The
    result is asserted to be a discrete fibration.
    """
    arrow = bring_to_front(df, d)
    out = cube_pullback(along, arrow)
    pulled = face(out, 1, "dom")
    if not is_discrete_fibration(pulled).is_df:
        raise PropertyViolation("pullback of a discrete fibration is not a discrete fibration", witness=pulled)
    return pulled
