"""Enumeration of small algebras up to isomorphism, of surjections between
them, and of extension cubes built from their congruences."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from . import groups
from .algebra import (
    Congruence,
    FiniteAlgebra,
    Hom,
    Variety,
    congruence_lattice,
    is_homomorphism,
    quotient,
)
from .canonical import canonical_form, canonical_labelling
from .diagram import CubeDiagram, arrow, build_cube, has, point
from .errors import InputError
from .extension import is_extension

MAX_ORDER = {Variety.QUANDLE: 6, Variety.RACK: 6, Variety.GROUP: 16}


@dataclass(frozen=True)
class Catalog:
    """Pairwise non-isomorphic algebras of one variety, complete up to ``max_order``.

    Entries are canonical forms sorted by order and then by table; the
    catalog id of an entry is ``"<order>-<serial>"`` with serials from 1.
    """

    variety: Variety
    max_order: int
    entries: tuple[FiniteAlgebra, ...]

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def of_order(self, n: int) -> list[FiniteAlgebra]:
        return [A for A in self.entries if A.size == n]

    def counts(self) -> list[int]:
        return [len(self.of_order(n)) for n in range(1, self.max_order + 1)]

    def ids(self) -> list[str]:
        out = []
        serial: dict[int, int] = {}
        for A in self.entries:
            serial[A.size] = serial.get(A.size, 0) + 1
            out.append(f"{A.size}-{serial[A.size]}")
        return out

    def get(self, ident: str) -> FiniteAlgebra:
        try:
            return self.entries[self.ids().index(ident)]
        except ValueError:
            raise InputError(f"no catalog entry {ident!r}") from None

    def id_of(self, A: FiniteAlgebra) -> str:
        table = canonical_form(A)
        for ident, B in zip(self.ids(), self.entries):
            if B == table:
                return ident
        raise InputError("algebra is not in the catalog")


# ---------------------------------------------------------------------------
# quandles and racks


def _column_candidates(n: int, y: int, quandle: bool) -> list[tuple[int, ...]]:
    perms = itertools.permutations(range(n))
    if quandle:
        return [p for p in perms if p[y] == y]
    return list(perms)


def rack_tables(n: int, quandle: bool, column_order: Sequence[int] | None = None,
                first_columns: Sequence[tuple[int, ...]] | None = None) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Every rack (or quandle) table of order ``n``.

    Right translations ``R_y: x ↦ x ◁ y`` are chosen one column at a time
    among permutations; self-distributivity is the identity
    ``R_z R_y = R_{R_z(y)} R_z``, checked for every triple of already chosen
    columns as soon as they are available.  ``column_order`` permutes the
    order in which columns are filled and ``first_columns`` restricts the
    choice for the first filled column (used to split the work).
    """
    order = list(column_order) if column_order is not None else list(range(n))
    if sorted(order) != list(range(n)):
        raise InputError("column order must be a permutation")
    cands = {y: _column_candidates(n, y, quandle) for y in range(n)}
    if first_columns is not None and n:
        cands[order[0]] = list(first_columns)
    cols: list[tuple[int, ...] | None] = [None] * n

    def consistent(new: int) -> bool:
        for y in range(n):
            ry = cols[y]
            if ry is None:
                continue
            for z in range(n):
                rz = cols[z]
                if rz is None:
                    continue
                w = rz[y]
                rw = cols[w]
                if rw is None:
                    continue
                if new not in (y, z, w):
                    continue
                for x in range(n):
                    if rz[ry[x]] != rw[rz[x]]:
                        return False
        return True

    def rec(k: int):
        if k == n:
            yield tuple(tuple(cols[y][x] for y in range(n)) for x in range(n))
            return
        y = order[k]
        for c in cands[y]:
            cols[y] = c
            if consistent(y):
                yield from rec(k + 1)
        cols[y] = None

    yield from rec(0)


def _dedup(variety: Variety, tables: Iterable) -> list[FiniteAlgebra]:
    seen = {}
    for t in tables:
        A = FiniteAlgebra(variety, t)
        key, _ = canonical_labelling(A)
        if key not in seen:
            seen[key] = FiniteAlgebra(variety, key)
    return [seen[k] for k in sorted(seen)]


def enumerate_order(variety: Variety | str, n: int, column_order: Sequence[int] | None = None,
                    workers: int = 1) -> list[FiniteAlgebra]:
    """All algebras of exactly order ``n`` up to isomorphism, canonical and sorted."""
    variety = Variety.parse(variety)
    if n < 1:
        return []
    if variety is Variety.GROUP:
        return list(_group_catalog(n)[n])
    quandle = variety is Variety.QUANDLE
    if workers > 1 and n >= 4:
        from .sweeps import parallel_map

        order = list(column_order) if column_order is not None else list(range(n))
        firsts = _column_candidates(n, order[0], quandle)
        chunks = parallel_map(_enumerate_chunk, [(variety.value, n, tuple(order), (c,)) for c in firsts], workers)
        keys = set()
        for chunk in chunks:
            keys.update(chunk)
        return [FiniteAlgebra(variety, k) for k in sorted(keys)]
    return _dedup(variety, rack_tables(n, quandle, column_order))


def _enumerate_chunk(args) -> list:
    variety, n, order, firsts = args
    quandle = variety == Variety.QUANDLE.value
    return [A.table for A in _dedup(Variety.parse(variety), rack_tables(n, quandle, order, firsts))]


@lru_cache(maxsize=None)
def _cached_catalog(variety: Variety, max_order: int) -> Catalog:
    entries: list[FiniteAlgebra] = []
    for n in range(1, max_order + 1):
        entries.extend(enumerate_order(variety, n))
    return Catalog(variety, max_order, tuple(entries))


def enumerate_algebras(variety: Variety | str, max_order: int, workers: int = 1) -> Catalog:
    """The catalog of all algebras of ``variety`` with order at most ``max_order``."""
    variety = Variety.parse(variety)
    if max_order > MAX_ORDER[variety]:
        raise InputError(f"{variety.value} catalogs stop at order {MAX_ORDER[variety]}")
    if workers > 1:
        entries: list[FiniteAlgebra] = []
        for n in range(1, max_order + 1):
            entries.extend(enumerate_order(variety, n, workers=workers))
        return Catalog(variety, max_order, tuple(entries))
    return _cached_catalog(variety, max_order)


# ---------------------------------------------------------------------------
# groups


def _primes(n: int) -> list[int]:
    out = []
    k = 2
    while k * k <= n:
        if n % k == 0:
            out.append(k)
            while n % k == 0:
                n //= k
        k += 1
    if n > 1:
        out.append(n)
    return out


def _group_invariant(G: FiniteAlgebra) -> tuple:
    orders = sorted(groups.element_order(G, x) for x in G.elements)
    return (
        tuple(orders),
        len(groups.center(G)),
        len(groups.commutator_subgroup(G)),
        sum(1 for x in G.elements for y in G.elements if G.table[x][y] == G.table[y][x]),
    )


def find_group_isomorphism(G: FiniteAlgebra, H: FiniteAlgebra) -> tuple[int, ...] | None:
    """An isomorphism found by mapping a generating set, or None."""
    if G.size != H.size:
        return None
    gens = groups.generating_set(G)
    orders = {y: groups.element_order(H, y) for y in H.elements}
    cands = [[y for y in H.elements if orders[y] == groups.element_order(G, g)] for g in gens]
    for images in itertools.product(*cands):
        vals = groups.extend_to_hom(G, H, gens, images)
        if vals is not None and len(set(vals)) == G.size:
            return vals
    return None


@lru_cache(maxsize=None)
def _group_catalog(max_order: int) -> dict[int, tuple[FiniteAlgebra, ...]]:
    """Groups of each order up to ``max_order``.

    Every group of order at most 16 is solvable, so it has a normal subgroup
    of prime index ``p`` and arises as a cyclic extension of a smaller group
    by ``C_p``.  All such extensions are generated and merged up to
    isomorphism.
    """
    if max_order > MAX_ORDER[Variety.GROUP]:
        raise InputError("group catalogs stop at order 16")
    found: dict[int, tuple[FiniteAlgebra, ...]] = {1: (groups.cyclic(1),)}
    for n in range(2, max_order + 1):
        reps: dict[tuple, list[FiniteAlgebra]] = {}
        for p in _primes(n):
            for N in found[n // p]:
                for phi, h0 in groups.cyclic_extension_data(N, p):
                    G = groups.cyclic_extension(N, p, phi, h0)
                    inv = _group_invariant(G)
                    bucket = reps.setdefault(inv, [])
                    if not any(find_group_isomorphism(G, H) is not None for H in bucket):
                        bucket.append(G)
        canon = [canonical_form(G) for bucket in reps.values() for G in bucket]
        found[n] = tuple(sorted(canon, key=lambda A: A.table))
    return found


# ---------------------------------------------------------------------------
# homomorphisms


def enumerate_homs(A: FiniteAlgebra, B: FiniteAlgebra, surjective_only: bool = False) -> list[Hom]:
    """All homomorphisms ``A -> B`` in lexicographic order of value arrays.

    Backtracking over ``values[0], values[1], ...``: whenever ``x``, ``y``
    and ``x·y`` all have values the homomorphism law is checked, and an
    unassigned product is forced.
    """
    if A.variety is not B.variety:
        raise InputError("homomorphisms need one variety")
    n, m = A.size, B.size
    if surjective_only and n < m:
        return []
    ta, tb = A.table, B.table
    out: list[Hom] = []
    vals = [-1] * n

    def propagate(stack: list[int]) -> list[int] | None:
        changed: list[int] = []
        queue = list(stack)
        while queue:
            x = queue.pop()
            for y in range(n):
                if vals[y] == -1:
                    continue
                for a, b in ((x, y), (y, x)):
                    c = ta[a][b]
                    v = tb[vals[a]][vals[b]]
                    if vals[c] == -1:
                        vals[c] = v
                        changed.append(c)
                        queue.append(c)
                    elif vals[c] != v:
                        return changed + [-1]
        return changed

    def rec(x: int):
        if x == n:
            if not surjective_only or len(set(vals)) == m:
                out.append(Hom(A, B, tuple(vals)))
            return
        if vals[x] != -1:
            rec(x + 1)
            return
        for v in range(m):
            vals[x] = v
            changed = propagate([x])
            if changed and changed[-1] == -1:
                for c in changed[:-1]:
                    vals[c] = -1
            else:
                rec(x + 1)
                for c in changed:
                    vals[c] = -1
            vals[x] = -1

    rec(0)
    out.sort(key=lambda h: h.values)
    return out


def enumerate_surjections(A: FiniteAlgebra, B: FiniteAlgebra) -> list[Hom]:
    return enumerate_homs(A, B, surjective_only=True)


def automorphism_group(A: FiniteAlgebra) -> list[tuple[int, ...]]:
    if A.is_group:
        return groups.automorphisms(A)
    return [h.values for h in enumerate_homs(A, A) if h.is_injective()]


# ---------------------------------------------------------------------------
# congruence-based corpora


def _act(perm: Sequence[int], C: Congruence) -> tuple[int, ...]:
    labels = [0] * len(perm)
    for x, c in enumerate(C.labels):
        labels[perm[x]] = c
    return Congruence(C.algebra, tuple(labels)).labels


def congruence_orbit_reps(A: FiniteAlgebra, arity: int, predicate=None) -> list[tuple[Congruence, ...]]:
    """Tuples of congruences on ``A`` up to the action of ``Aut(A)``.

    The tuples are ordered; ``predicate`` filters before deduplication.
    """
    lattice = congruence_lattice(A)
    auts = automorphism_group(A)
    seen: set = set()
    out = []
    for combo in itertools.product(lattice, repeat=arity):
        if predicate is not None and not predicate(combo):
            continue
        key = tuple(c.labels for c in combo)
        if key in seen:
            continue
        orbit = {tuple(_act(a, c) for c in combo) for a in auts}
        seen |= orbit
        out.append(combo)
    return out


def join_all(A: FiniteAlgebra, congs: Iterable[Congruence]) -> Congruence:
    out = Congruence.discrete(A)
    for c in congs:
        out = out.join(c)
    return out


def quotient_cube(A: FiniteAlgebra, congs: Sequence[Congruence]) -> CubeDiagram:
    """The cube with vertex ``S`` equal to ``A`` modulo the join of the
    congruences indexed by ``S`` and all edges the induced projections."""
    n = len(congs)
    verts = []
    maps = []
    for S in range(1 << n):
        J = join_all(A, [congs[d - 1] for d in range(1, n + 1) if has(S, d)])
        Q, q = quotient(A, J)
        verts.append(Q)
        maps.append(q)
    edges = {}
    for S in range(1 << n):
        for d in range(1, n + 1):
            if has(S, d):
                continue
            T = S | (1 << (d - 1))
            vals = [0] * verts[S].size
            for x in A.elements:
                vals[maps[S].values[x]] = maps[T].values[x]
            edges[(S, d)] = Hom(verts[S], verts[T], tuple(vals))
    return build_cube(n, verts, edges, check=False)


def enumerate_extension_cubes(catalog: Catalog, n: int, budget: int | None = None,
                              require_extension: bool = True) -> Iterator[CubeDiagram]:
    """Extension ``n``-cubes whose initial vertex is a catalog entry of order
    at most ``budget``, one per ``Aut``-orbit of congruence tuples.

    Every ``n``-fold extension is isomorphic to one of these: the kernels
    of the maps out of the initial vertex determine the whole cube.
    """
    if n not in (0, 1, 2, 3):
        raise InputError("cube corpora are available for n = 0..3")
    budget = catalog.max_order if budget is None else budget
    for A in catalog:
        if A.size > budget:
            continue
        if n == 0:
            yield point(A)
            continue
        for combo in congruence_orbit_reps(A, n):
            cube = quotient_cube(A, combo)
            if n == 1:
                yield cube
            elif not require_extension or is_extension(cube):
                yield cube


def labelled_cube(A: FiniteAlgebra, n: int, labels: Sequence[Congruence]) -> CubeDiagram:
    """The cube with vertex ``S`` equal to ``A / labels[S]``.

    Labels must grow along every edge; edges are the induced projections.
    """
    verts = []
    maps = []
    for C in labels:
        Q, q = quotient(A, C)
        verts.append(Q)
        maps.append(q)
    edges = {}
    for S in range(1 << n):
        for d in range(1, n + 1):
            if has(S, d):
                continue
            T = S | (1 << (d - 1))
            if not labels[S] <= labels[T]:
                raise InputError("congruence labels must grow along edges")
            vals = [0] * verts[S].size
            for x in A.elements:
                vals[maps[S].values[x]] = maps[T].values[x]
            edges[(S, d)] = Hom(verts[S], verts[T], tuple(vals))
    return build_cube(n, verts, edges, check=False)


def squares_of(A: FiniteAlgebra) -> Iterator[CubeDiagram]:
    """Every square of surjections out of ``A`` up to ``Aut(A)`` on the two
    first maps: the terminal vertex runs over all congruences above the join."""
    lattice = congruence_lattice(A)
    bottom = Congruence.discrete(A)
    for th, ph in congruence_orbit_reps(A, 2):
        j = th.join(ph)
        for k in lattice:
            if j <= k:
                yield labelled_cube(A, 2, [bottom, th, ph, k])


def grids_of(A: FiniteAlgebra) -> Iterator[tuple[CubeDiagram, CubeDiagram, CubeDiagram]]:
    """Horizontally composable squares ``(left, right, composite)`` of
    surjections out of ``A``.

    The top row is ``A -> A/θ1 -> A/θ2`` and the bottom row
    ``A/φ -> A/κ1 -> A/κ2``; all monotone choices are produced, with
    ``(θ1, φ)`` taken up to ``Aut(A)``.
    """
    lattice = congruence_lattice(A)
    bottom = Congruence.discrete(A)
    for t1, ph in congruence_orbit_reps(A, 2):
        j1 = t1.join(ph)
        for t2 in lattice:
            if not t1 <= t2:
                continue
            for k1 in lattice:
                if not j1 <= k1:
                    continue
                j2 = t2.join(k1)
                for k2 in lattice:
                    if not j2 <= k2:
                        continue
                    yield (
                        labelled_cube(A, 2, [bottom, t1, ph, k1]),
                        labelled_cube(A, 2, [t1, t2, k1, k2]),
                        labelled_cube(A, 2, [bottom, t2, ph, k2]),
                    )


def chains_of(A: FiniteAlgebra) -> Iterator[tuple[Hom, Hom]]:
    """Composable surjections ``A -> A/θ1 -> A/θ2`` with ``θ1 ≤ θ2``."""
    lattice = congruence_lattice(A)
    for (t1,) in congruence_orbit_reps(A, 1):
        for t2 in lattice:
            if t1 <= t2:
                c = labelled_cube(A, 2, [Congruence.discrete(A), t1, t2, t2])
                yield c.edge(0, 1), c.edge(1, 2)


def cubes_of(A: FiniteAlgebra, n: int) -> Iterator[CubeDiagram]:
    """Cubes whose vertices are ``A`` modulo joins of ``n`` congruences,
    up to ``Aut(A)``; not filtered for being extensions."""
    for combo in congruence_orbit_reps(A, n):
        yield quotient_cube(A, combo)


def surjection_corpus(catalog: Catalog, budget: int | None = None) -> list[Hom]:
    """One surjection ``A -> A/θ`` per Aut-orbit of congruences θ."""
    return [c.edge(0, 1) for c in enumerate_extension_cubes(catalog, 1, budget)]


def arrow_corpus(catalog: Catalog, budget: int | None = None) -> list[CubeDiagram]:
    return [arrow(f) for f in surjection_corpus(catalog, budget)]
