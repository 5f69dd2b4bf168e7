"""Isomorphism-invariant canonical tables.

The canonical form of an algebra is the lexicographically least table over
all relabellings, where tables are read in *block order*: for each label
``k`` in turn, the entries ``(0,k), ..., (k-1,k), (k,0), ..., (k,k-1), (k,k)``.
In that order, every entry only mentions labels that are already fixed, so a
partial relabelling determines a prefix of the sequence.  The search assigns
labels one at a time: an element that first appears as an entry value takes
the next free label (the smallest value it could have), and a genuine choice
is only made when label ``k`` is needed before any entry has forced it.
Branches whose prefix already exceeds the best one found are dropped.
"""
from __future__ import annotations

import itertools
from typing import Sequence

from .algebra import FiniteAlgebra, Table


def block_order(n: int) -> list[tuple[int, int]]:
    cells = []
    for k in range(n):
        cells.extend((i, k) for i in range(k))
        cells.extend((k, i) for i in range(k))
        cells.append((k, k))
    return cells


def _search(table: Table) -> tuple[list[int], list[int]]:
    n = len(table)
    best: list[int] | None = None
    best_perm: list[int] | None = None

    # new label -> old element, old element -> new label
    inv = [-1] * n
    perm = [-1] * n
    seq: list[int] = []

    def extend(k: int, assigned: int) -> None:
        nonlocal best, best_perm
        if k == n:
            if best is None or seq < best:
                best = list(seq)
                best_perm = list(perm)
            return
        if assigned == k:
            for x in range(n):
                if perm[x] == -1:
                    perm[x] = k
                    inv[k] = x
                    block(k, k + 1)
                    perm[x] = -1
                    inv[k] = -1
        else:
            block(k, assigned)

    def block(k: int, assigned: int) -> None:
        nonlocal best
        start = len(seq)
        forced: list[int] = []
        tight = best is not None and seq == best[:start]
        pos = start
        ok = True
        for i, j in itertools.chain(((i, k) for i in range(k)), ((k, i) for i in range(k + 1))):
            v = table[inv[i]][inv[j]]
            lab = perm[v]
            if lab == -1:
                lab = assigned
                perm[v] = lab
                inv[lab] = v
                assigned += 1
                forced.append(v)
            seq.append(lab)
            if tight:
                b = best[pos]
                if lab > b:
                    ok = False
                    break
                if lab < b:
                    tight = False
            pos += 1
        if ok:
            extend(k + 1, assigned)
        del seq[start:]
        for v in forced:
            inv[perm[v]] = -1
            perm[v] = -1

    extend(0, 0)
    assert best is not None and best_perm is not None
    return best, best_perm


def canonical_labelling(A: FiniteAlgebra) -> tuple[Table, tuple[int, ...]]:
    """Return ``(canonical table, perm)`` with ``A.relabel(perm).table`` canonical."""
    n = A.size
    if n == 0:
        return (), ()
    _, perm = _search(A.table)
    rel = A.relabel(perm)
    return rel.table, tuple(perm)


def canonical_form(A: FiniteAlgebra) -> FiniteAlgebra:
    """The canonical representative of the isomorphism class of ``A``."""
    table, _ = canonical_labelling(A)
    return FiniteAlgebra(A.variety, table)


def canonical_key(A: FiniteAlgebra) -> tuple:
    return (A.variety.value, canonical_labelling(A)[0])


def brute_force_canonical(A: FiniteAlgebra) -> Table:
    """Reference implementation: minimise the block-order sequence over all n! relabellings."""
    n = A.size
    cells = block_order(n)
    best = None
    best_table = None
    for perm in itertools.permutations(range(n)):
        t = A.relabel(perm).table
        s = [t[i][j] for i, j in cells]
        if best is None or s < best:
            best, best_table = s, t
    return best_table if best_table is not None else ()


def find_isomorphism(A: FiniteAlgebra, B: FiniteAlgebra) -> Sequence[int] | None:
    """An isomorphism ``A -> B`` as a value array, by brute force (small sizes only)."""
    if A.variety is not B.variety or A.size != B.size:
        return None
    ta, tb = A.table, B.table
    n = A.size
    for perm in itertools.permutations(range(n)):
        if all(perm[ta[x][y]] == tb[perm[x]][perm[y]] for x in range(n) for y in range(n)):
            return perm
    return None


def are_isomorphic(A: FiniteAlgebra, B: FiniteAlgebra) -> bool:
    return A.variety is B.variety and A.size == B.size and canonical_key(A) == canonical_key(B)
