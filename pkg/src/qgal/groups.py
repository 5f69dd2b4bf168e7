"""Group-theoretic helpers on multiplication tables: subgroups, commutators,
centres, automorphisms and cyclic extensions."""
from __future__ import annotations

import itertools
from typing import Iterable, Sequence

from .algebra import Congruence, FiniteAlgebra, Hom, Variety, product
from .errors import InputError


def _require_group(G: FiniteAlgebra) -> None:
    if not G.is_group:
        raise InputError("expected a group")


def mul(G: FiniteAlgebra, *xs: int) -> int:
    out = G.identity
    for x in xs:
        out = G.table[out][x]
    return out


def commutator(G: FiniteAlgebra, a: int, b: int) -> int:
    """``[a, b] = a⁻¹ b⁻¹ a b``."""
    inv = G.inverses
    return mul(G, inv[a], inv[b], a, b)


def generated_subgroup(G: FiniteAlgebra, gens: Iterable[int]) -> frozenset[int]:
    """Closure of ``gens`` (and the identity) under multiplication."""
    _require_group(G)
    gens = list(dict.fromkeys(gens))
    found = {G.identity}
    frontier = [G.identity]
    while frontier:
        nxt = []
        for x in frontier:
            row = G.table[x]
            for g in gens:
                y = row[g]
                if y not in found:
                    found.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(found)


def commutator_subgroup(G: FiniteAlgebra, H: Iterable[int] | None = None, K: Iterable[int] | None = None) -> frozenset[int]:
    """``[H, K]``, generated by commutators ``[h, k]``; defaults to ``[G, G]``."""
    H = list(G.elements) if H is None else list(H)
    K = list(G.elements) if K is None else list(K)
    return generated_subgroup(G, {commutator(G, h, k) for h in H for k in K})


def center(G: FiniteAlgebra) -> frozenset[int]:
    t = G.table
    return frozenset(z for z in G.elements if all(t[z][x] == t[x][z] for x in G.elements))


def is_abelian(G: FiniteAlgebra) -> bool:
    t = G.table
    return all(t[x][y] == t[y][x] for x in G.elements for y in G.elements)


def is_normal(G: FiniteAlgebra, N: Iterable[int]) -> bool:
    N = frozenset(N)
    inv = G.inverses
    return all(mul(G, inv[g], n, g) in N for g in G.elements for n in N)


def coset_congruence(G: FiniteAlgebra, N: Iterable[int]) -> Congruence:
    """The congruence whose class of the identity is the normal subgroup ``N``."""
    N = frozenset(N)
    if not is_normal(G, N):
        raise InputError("subgroup is not normal")
    labels = [-1] * G.size
    c = 0
    for x in G.elements:
        if labels[x] == -1:
            for n in N:
                labels[G.table[x][n]] = c
            c += 1
    return Congruence(G, tuple(labels))


def normal_subgroup(C: Congruence) -> frozenset[int]:
    """The class of the identity of a group congruence."""
    G = C.algebra
    e = G.identity
    return frozenset(x for x in G.elements if C.labels[x] == C.labels[e])


def kernel(f: Hom) -> frozenset[int]:
    e = f.cod.identity
    return frozenset(x for x in f.dom.elements if f.values[x] == e)


def element_order(G: FiniteAlgebra, x: int) -> int:
    e, y, k = G.identity, x, 1
    while y != e:
        y = G.table[y][x]
        k += 1
    return k


# ---------------------------------------------------------------------------
# constructions


def cyclic(n: int) -> FiniteAlgebra:
    return FiniteAlgebra(Variety.GROUP, [[(i + j) % n for j in range(n)] for i in range(n)])


def direct_product(G: FiniteAlgebra, H: FiniteAlgebra) -> FiniteAlgebra:
    return product(G, H).apex


def from_permutations(perms: Sequence[Sequence[int]]) -> FiniteAlgebra:
    """The group generated by the given permutations, elements in BFS order from the identity.

    The product ``a·b`` means *apply b, then a*.
    """
    if not perms:
        raise InputError("need at least one permutation")
    degree = len(perms[0])
    ident = tuple(range(degree))
    gens = [tuple(p) for p in perms]
    elems = [ident]
    index = {ident: 0}
    i = 0
    while i < len(elems):
        x = elems[i]
        for g in gens:
            y = tuple(x[g[k]] for k in range(degree))
            if y not in index:
                index[y] = len(elems)
                elems.append(y)
        i += 1
    rows = [[index[tuple(a[b[k]] for k in range(degree))] for b in elems] for a in elems]
    return FiniteAlgebra(Variety.GROUP, rows)


def quaternion() -> FiniteAlgebra:
    """Q8 with elements ``±1, ±i, ±j, ±k`` indexed 0..7 as 1,-1,i,-i,j,-j,k,-k."""
    names = ["1", "i", "j", "k"]
    basic = {
        ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
        ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
        ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
        ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
    }
    elems = [(s, u) for u in names for s in (1, -1)]
    index = {e: i for i, e in enumerate(elems)}
    rows = []
    for s1, u1 in elems:
        row = []
        for s2, u2 in elems:
            s, u = basic[(u1, u2)]
            row.append(index[(s1 * s2 * s, u)])
        rows.append(row)
    return FiniteAlgebra(Variety.GROUP, rows)


# ---------------------------------------------------------------------------
# homomorphisms and automorphisms


def generating_set(G: FiniteAlgebra) -> list[int]:
    """A small generating set, picked greedily by decreasing element order."""
    order = sorted(G.elements, key=lambda x: (-element_order(G, x), x))
    gens: list[int] = []
    current = frozenset([G.identity])
    for x in order:
        if len(current) == G.size:
            break
        if x not in current:
            gens.append(x)
            current = generated_subgroup(G, gens)
    return gens


def extend_to_hom(G: FiniteAlgebra, H: FiniteAlgebra, gens: Sequence[int], images: Sequence[int]) -> tuple[int, ...] | None:
    """The homomorphism sending ``gens[i] ↦ images[i]``, or None if none exists.

    Walks the Cayley graph from the identity; consistency on every edge
    ``x -> x·g`` is exactly the homomorphism condition.
    """
    values = [-1] * G.size
    values[G.identity] = H.identity
    frontier = [G.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g, h in zip(gens, images):
                y = G.table[x][g]
                v = H.table[values[x]][h]
                if values[y] == -1:
                    values[y] = v
                    nxt.append(y)
                elif values[y] != v:
                    return None
        frontier = nxt
    if -1 in values:
        return None
    return tuple(values)


def automorphisms(G: FiniteAlgebra) -> list[tuple[int, ...]]:
    gens = generating_set(G)
    orders = {x: element_order(G, x) for x in G.elements}
    candidates = [[y for y in G.elements if orders[y] == orders[g]] for g in gens]
    out = []
    for images in itertools.product(*candidates):
        vals = extend_to_hom(G, G, gens, images)
        if vals is not None and len(set(vals)) == G.size:
            out.append(vals)
    return sorted(out)


def cyclic_extension(N: FiniteAlgebra, p: int, phi: Sequence[int], h0: int) -> FiniteAlgebra:
    """The group ``N ∪ tN ∪ ... ∪ t^{p-1}N`` with ``t h t⁻¹ = phi(h)`` and ``t^p = h0``.

    Element ``h t^i`` has index ``i * |N| + h``.  Requires ``phi(h0) = h0``
    and ``phi^p`` to be conjugation by ``h0``.
    """
    m = N.size
    t = N.table
    powers = [tuple(N.elements)]
    for _ in range(1, p):
        prev = powers[-1]
        powers.append(tuple(phi[prev[h]] for h in N.elements))
    rows = []
    for i in range(p):
        for h1 in N.elements:
            row = []
            for j in range(p):
                for h2 in N.elements:
                    x = t[h1][powers[i][h2]]
                    if i + j >= p:
                        x = t[x][h0]
                    row.append(((i + j) % p) * m + x)
            rows.append(row)
    return FiniteAlgebra(Variety.GROUP, rows)


def cyclic_extension_data(N: FiniteAlgebra, p: int) -> list[tuple[tuple[int, ...], int]]:
    """All ``(phi, h0)`` satisfying the conditions of :func:`cyclic_extension`."""
    inv = N.inverses
    out = []
    for phi in automorphisms(N):
        power = list(N.elements)
        for _ in range(p):
            power = [phi[x] for x in power]
        for h0 in N.elements:
            if phi[h0] != h0:
                continue
            if all(power[x] == mul(N, h0, x, inv[h0]) for x in N.elements):
                out.append((phi, h0))
    return out
