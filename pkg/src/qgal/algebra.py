"""Finite algebras, homomorphisms, congruences and the finite limits/colimits
built from them.

Carriers are always ``range(size)``.  Quandles and racks store the table of
``x ◁ y`` (``table[x][y]``); the right division ``x ◁⁻¹ y`` is derived from it.
Groups store the multiplication table; identity and inverses are derived.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .errors import InputError

Table = tuple[tuple[int, ...], ...]


class Variety(str, enum.Enum):
    QUANDLE = "quandle"
    RACK = "rack"
    GROUP = "group"

    @classmethod
    def parse(cls, value: "Variety | str") -> "Variety":
        try:
            return cls(value)
        except ValueError:
            raise InputError(f"unknown variety {value!r}") from None


def _as_table(rows: Iterable[Iterable[int]]) -> Table:
    return tuple(tuple(int(v) for v in row) for row in rows)


def _check_shape(table: Table) -> None:
    n = len(table)
    for i, row in enumerate(table):
        if len(row) != n:
            raise InputError(f"row {i} has length {len(row)}, expected {n}")
        for j, v in enumerate(row):
            if not 0 <= v < n:
                raise InputError(f"entry ({i},{j}) = {v} out of range [0, {n})")


@dataclass(frozen=True)
class FiniteAlgebra:
    """An algebra on ``{0, ..., n-1}`` given by one binary operation table.

    Construction only checks the shape; use :func:`validate_algebra` or
    :func:`make_algebra` for the variety axioms.
    """

    variety: Variety
    table: Table

    def __post_init__(self):
        object.__setattr__(self, "variety", Variety.parse(self.variety))
        object.__setattr__(self, "table", _as_table(self.table))
        _check_shape(self.table)

    def __repr__(self):
        return f"FiniteAlgebra({self.variety.value}, n={self.size})"

    @property
    def size(self) -> int:
        return len(self.table)

    def __len__(self):
        return len(self.table)

    @property
    def elements(self) -> range:
        return range(len(self.table))

    @property
    def is_group(self) -> bool:
        return self.variety is Variety.GROUP

    def op(self, x: int, y: int) -> int:
        return self.table[x][y]

    @cached_property
    def rdiv_table(self) -> Table:
        """``rdiv_table[x][y]`` is the unique ``z`` with ``z ◁ y = x``."""
        if self.is_group:
            raise InputError("right division table is defined for racks and quandles")
        n = self.size
        out = [[-1] * n for _ in range(n)]
        for y in range(n):
            for z in range(n):
                out[self.table[z][y]][y] = z
        if any(-1 in row for row in out):
            raise InputError("right translations are not bijective")
        return _as_table(out)

    @cached_property
    def identity(self) -> int:
        if not self.is_group:
            raise InputError("only groups have an identity")
        for e in self.elements:
            if all(self.table[e][x] == x and self.table[x][e] == x for x in self.elements):
                return e
        raise InputError("multiplication table has no identity")

    @cached_property
    def inverses(self) -> tuple[int, ...]:
        e = self.identity
        inv = []
        for x in self.elements:
            row = self.table[x]
            try:
                inv.append(row.index(e))
            except ValueError:
                raise InputError(f"element {x} has no inverse") from None
        return tuple(inv)

    def inv(self, x: int) -> int:
        return self.inverses[x]

    @cached_property
    def binary_tables(self) -> tuple[Table, ...]:
        """Every binary operation of the signature, as tables."""
        if self.is_group:
            return (self.table,)
        return (self.table, self.rdiv_table)

    def relabel(self, perm: Sequence[int]) -> "FiniteAlgebra":
        """The isomorphic copy in which old element ``x`` is called ``perm[x]``."""
        n = self.size
        inv = [0] * n
        for x, px in enumerate(perm):
            inv[px] = x
        rows = [[perm[self.table[inv[i]][inv[j]]] for j in range(n)] for i in range(n)]
        return FiniteAlgebra(self.variety, rows)


# ---------------------------------------------------------------------------
# axioms


@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: tuple[int, ...]

    def __str__(self):
        return f"{self.axiom} fails at {self.witness}"


@dataclass(frozen=True)
class ValidationReport:
    variety: Variety
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok


def _rack_violations(t: Table, idempotent: bool) -> list[Violation]:
    n = len(t)
    found: list[Violation] = []
    for y in range(n):
        column = [t[x][y] for x in range(n)]
        if len(set(column)) != n:
            seen: dict[int, int] = {}
            for x, v in enumerate(column):
                if v in seen:
                    found.append(Violation("right-translation-bijective", (seen[v], x, y)))
                    break
                seen[v] = x
            break
    if idempotent:
        for x in range(n):
            if t[x][x] != x:
                found.append(Violation("idempotency", (x,)))
                break
    for x, y, z in itertools.product(range(n), repeat=3):
        if t[t[x][y]][z] != t[t[x][z]][t[y][z]]:
            found.append(Violation("self-distributivity", (x, y, z)))
            break
    return found


def _group_violations(t: Table) -> list[Violation]:
    n = len(t)
    found: list[Violation] = []
    for x, y, z in itertools.product(range(n), repeat=3):
        if t[t[x][y]][z] != t[x][t[y][z]]:
            found.append(Violation("associativity", (x, y, z)))
            break
    ids = [e for e in range(n) if all(t[e][x] == x and t[x][e] == x for x in range(n))]
    if not ids:
        found.append(Violation("identity", ()))
        return found
    e = ids[0]
    for x in range(n):
        if not any(t[x][y] == e and t[y][x] == e for y in range(n)):
            found.append(Violation("inverses", (x,)))
            break
    return found


def validate_algebra(table: Iterable[Iterable[int]], variety: Variety | str) -> ValidationReport:
    """Check every axiom of ``variety``; each failure carries one witness.

    Raises :class:`InputError` if the table is not square or has entries out
    of range.
    """
    variety = Variety.parse(variety)
    t = _as_table(table)
    _check_shape(t)
    if variety is Variety.GROUP:
        found = _group_violations(t)
    else:
        found = _rack_violations(t, idempotent=variety is Variety.QUANDLE)
    return ValidationReport(variety, tuple(found))


def make_algebra(variety: Variety | str, table: Iterable[Iterable[int]]) -> FiniteAlgebra:
    """Build an algebra, raising :class:`InputError` unless all axioms hold."""
    report = validate_algebra(table, variety)
    if not report.ok:
        raise InputError("; ".join(str(v) for v in report.violations))
    return FiniteAlgebra(report.variety, table)


# ---------------------------------------------------------------------------
# homomorphisms


def _check_compatible(dom: FiniteAlgebra, cod: FiniteAlgebra, values: Sequence[int]) -> None:
    if dom.variety is not cod.variety:
        raise InputError(f"variety mismatch: {dom.variety.value} -> {cod.variety.value}")
    if len(values) != dom.size:
        raise InputError(f"value array has length {len(values)}, domain has {dom.size}")
    for x, v in enumerate(values):
        if not 0 <= v < cod.size:
            raise InputError(f"value {v} at {x} out of range [0, {cod.size})")


def is_homomorphism(dom: FiniteAlgebra, cod: FiniteAlgebra, values: Sequence[int]) -> bool:
    """True iff ``values`` commutes with the operation table.

    Preserving ◁ already forces preservation of ◁⁻¹, and preserving the group
    product forces preservation of identity and inverses, so one table is
    enough.
    """
    values = tuple(values)
    _check_compatible(dom, cod, values)
    dt, ct = dom.table, cod.table
    for x in dom.elements:
        hx = values[x]
        row, crow = dt[x], ct[hx]
        for y in dom.elements:
            if values[row[y]] != crow[values[y]]:
                return False
    return True


@dataclass(frozen=True)
class Hom:
    """A map between algebras of one variety, given by its value array."""

    dom: FiniteAlgebra
    cod: FiniteAlgebra
    values: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        _check_compatible(self.dom, self.cod, self.values)

    @classmethod
    def checked(cls, dom: FiniteAlgebra, cod: FiniteAlgebra, values: Sequence[int]) -> "Hom":
        if not is_homomorphism(dom, cod, values):
            raise InputError("value array is not a homomorphism")
        return cls(dom, cod, values)

    def __repr__(self):
        return f"Hom({self.dom.size}->{self.cod.size}, {list(self.values)})"

    def __call__(self, x: int) -> int:
        return self.values[x]

    def is_homomorphism(self) -> bool:
        return is_homomorphism(self.dom, self.cod, self.values)

    def is_surjective(self) -> bool:
        return len(set(self.values)) == self.cod.size

    def is_injective(self) -> bool:
        return len(set(self.values)) == self.dom.size

    def is_iso(self) -> bool:
        return self.dom.size == self.cod.size and self.is_injective()

    def then(self, g: "Hom") -> "Hom":
        """The composite ``g ∘ self``."""
        if g.dom != self.cod:
            raise InputError("composite of non-composable homs")
        gv = g.values
        return Hom(self.dom, g.cod, tuple(gv[v] for v in self.values))

    def inverse(self) -> "Hom":
        if not self.is_iso():
            raise InputError("not an isomorphism")
        inv = [0] * self.cod.size
        for x, v in enumerate(self.values):
            inv[v] = x
        return Hom(self.cod, self.dom, inv)

    def image(self) -> frozenset[int]:
        return frozenset(self.values)


def identity(A: FiniteAlgebra) -> Hom:
    return Hom(A, A, tuple(A.elements))


def compose(*homs: Hom) -> Hom:
    """``compose(h, g, f) == h ∘ g ∘ f``."""
    if not homs:
        raise InputError("compose needs at least one hom")
    out = homs[-1]
    for h in reversed(homs[:-1]):
        out = out.then(h)
    return out


def is_surjection(h: Hom) -> bool:
    return h.is_surjective()


def terminal(variety: Variety | str) -> FiniteAlgebra:
    """The one-element algebra of a variety (T1 or the trivial group)."""
    return FiniteAlgebra(Variety.parse(variety), ((0,),))


def to_terminal(A: FiniteAlgebra) -> Hom:
    return Hom(A, terminal(A.variety), (0,) * A.size)


# ---------------------------------------------------------------------------
# congruences


class UnionFind:
    __slots__ = ("parent",)

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        parent = self.parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if ra < rb:
            self.parent[rb] = ra
        else:
            self.parent[ra] = rb
        return True

    def labels(self) -> list[int]:
        return [self.find(x) for x in range(len(self.parent))]


def normalize_labels(labels: Sequence[int]) -> tuple[int, ...]:
    """Renumber class labels in order of first occurrence."""
    seen: dict[int, int] = {}
    return tuple(seen.setdefault(v, len(seen)) for v in labels)


@dataclass(frozen=True)
class Congruence:
    """A partition of an algebra's carrier, stored as one class label per element.

    Labels are normalised (classes numbered by first occurrence), so two
    congruences are equal exactly when they are the same partition.  The
    constructor does not check compatibility with the operations; see
    :meth:`is_compatible`.
    """

    algebra: FiniteAlgebra
    labels: tuple[int, ...]

    def __post_init__(self):
        if len(self.labels) != self.algebra.size:
            raise InputError("partition length differs from carrier size")
        object.__setattr__(self, "labels", normalize_labels(self.labels))

    def __repr__(self):
        return f"Congruence({self.classes})"

    @classmethod
    def discrete(cls, A: FiniteAlgebra) -> "Congruence":
        return cls(A, tuple(A.elements))

    @classmethod
    def full(cls, A: FiniteAlgebra) -> "Congruence":
        return cls(A, (0,) * A.size)

    @classmethod
    def from_classes(cls, A: FiniteAlgebra, classes: Iterable[Iterable[int]]) -> "Congruence":
        labels = [-1] * A.size
        for i, block in enumerate(classes):
            for x in block:
                if labels[x] != -1:
                    raise InputError(f"element {x} appears in two classes")
                labels[x] = i
        if -1 in labels:
            raise InputError("classes do not cover the carrier")
        return cls(A, tuple(labels))

    @property
    def num_classes(self) -> int:
        return max(self.labels) + 1 if self.labels else 0

    @property
    def classes(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in range(self.num_classes)]
        for x, c in enumerate(self.labels):
            out[c].append(x)
        return tuple(tuple(c) for c in out)

    def related(self, a: int, b: int) -> bool:
        return self.labels[a] == self.labels[b]

    def pairs(self) -> Iterator[tuple[int, int]]:
        for block in self.classes:
            for a in block:
                for b in block:
                    yield a, b

    def is_discrete(self) -> bool:
        return self.num_classes == self.algebra.size

    def is_full(self) -> bool:
        return self.num_classes <= 1

    def __le__(self, other: "Congruence") -> bool:
        """Refinement: every class of ``self`` lies inside a class of ``other``."""
        image: dict[int, int] = {}
        for a, b in zip(self.labels, other.labels):
            if image.setdefault(a, b) != b:
                return False
        return True

    def __lt__(self, other: "Congruence") -> bool:
        return self <= other and self != other

    def __ge__(self, other: "Congruence") -> bool:
        return other <= self

    def __gt__(self, other: "Congruence") -> bool:
        return other < self

    def meet(self, other: "Congruence") -> "Congruence":
        return Congruence(self.algebra, tuple(hash(p) for p in zip(self.labels, other.labels)))

    def join(self, other: "Congruence") -> "Congruence":
        """The smallest congruence containing both (equivalence join suffices)."""
        uf = UnionFind(self.algebra.size)
        for labels in (self.labels, other.labels):
            first: dict[int, int] = {}
            for x, c in enumerate(labels):
                uf.union(first.setdefault(c, x), x)
        return Congruence(self.algebra, tuple(uf.labels()))

    def is_compatible(self) -> bool:
        return is_compatible(self.algebra, self.labels)

    def compose_relation(self, other: "Congruence") -> frozenset[tuple[int, int]]:
        """The relational composite ``self ∘ other`` as a set of pairs."""
        out = set()
        for a, b in self.pairs():
            for c in other.classes[other.labels[b]]:
                out.add((a, c))
        return frozenset(out)

    def permutes_with(self, other: "Congruence") -> bool:
        return self.compose_relation(other) == other.compose_relation(self)


def is_compatible(A: FiniteAlgebra, labels: Sequence[int]) -> bool:
    """True iff the partition ``labels`` is closed under every operation."""
    for t in A.binary_tables:
        for a in A.elements:
            for b in A.elements:
                if a < b and labels[a] == labels[b]:
                    ra, rb = t[a], t[b]
                    for c in A.elements:
                        if labels[ra[c]] != labels[rb[c]]:
                            return False
                        if labels[t[c][a]] != labels[t[c][b]]:
                            return False
    return True


def congruence_closure(A: FiniteAlgebra, seed: Iterable[tuple[int, int]]) -> Congruence:
    """The smallest congruence containing ``seed``.

    Union-find plus a worklist of merged pairs; every pair that causes a
    merge is pushed through all left and right translations of every
    operation until nothing new merges.
    """
    n = A.size
    uf = UnionFind(n)
    work: list[tuple[int, int]] = []
    for a, b in seed:
        if not (0 <= a < n and 0 <= b < n):
            raise InputError(f"seed pair ({a},{b}) out of range")
        if uf.union(a, b):
            work.append((a, b))
    tables = A.binary_tables
    while work:
        a, b = work.pop()
        for t in tables:
            ra, rb = t[a], t[b]
            for c in range(n):
                x, y = ra[c], rb[c]
                if uf.union(x, y):
                    work.append((x, y))
                x, y = t[c][a], t[c][b]
                if uf.union(x, y):
                    work.append((x, y))
    return Congruence(A, tuple(uf.labels()))


def quotient(A: FiniteAlgebra, C: Congruence) -> tuple[FiniteAlgebra, Hom]:
    """The quotient algebra ``A/C`` and the projection onto it.

    Classes are numbered by their smallest element.  Raises
    :class:`InputError` if ``C`` is not compatible with the operations.
    """
    if C.algebra != A:
        raise InputError("congruence lives on a different algebra")
    labels = C.labels
    reps = [block[0] for block in C.classes]
    rows = []
    for ra in reps:
        rows.append([labels[A.table[ra][rb]] for rb in reps])
    for a in A.elements:
        for b in A.elements:
            if rows[labels[a]][labels[b]] != labels[A.table[a][b]]:
                raise InputError(f"partition is not a congruence: ({a},{b}) breaks it")
    Q = FiniteAlgebra(A.variety, rows)
    return Q, Hom(A, Q, labels)


# ---------------------------------------------------------------------------
# limits and colimits


@dataclass(frozen=True)
class FibreProduct:
    """The pullback of ``f: X -> Z`` and ``g: Y -> Z``.

    ``pairs[i]`` is the ``(x, y)`` that apex element ``i`` stands for; pairs
    are listed in lexicographic order.  ``left`` and ``right`` are the two
    projections.
    """

    apex: FiniteAlgebra
    left: Hom
    right: Hom
    pairs: tuple[tuple[int, int], ...]

    def __iter__(self):
        return iter((self.apex, self.left, self.right))

    @cached_property
    def _index(self) -> dict[tuple[int, int], int]:
        return {p: i for i, p in enumerate(self.pairs)}

    def index(self, x: int, y: int) -> int:
        return self._index[(x, y)]

    def induced(self, h: Hom, k: Hom) -> Hom:
        """The unique map into the apex with ``left ∘ u = h`` and ``right ∘ u = k``."""
        if h.dom != k.dom:
            raise InputError("cone legs must share a domain")
        try:
            vals = tuple(self._index[(h.values[x], k.values[x])] for x in h.dom.elements)
        except KeyError:
            raise InputError("cone does not commute over the base") from None
        return Hom(h.dom, self.apex, vals)


def _subalgebra_table(A: FiniteAlgebra, op, pairs: Sequence[tuple[int, int]], index) -> list[list[int]]:
    return [[index[op(p, q)] for q in pairs] for p in pairs]


def pullback(f: Hom, g: Hom) -> FibreProduct:
    """``{(x, y) : f(x) = g(y)}`` as a subalgebra of the product."""
    if f.cod != g.cod:
        raise InputError("pullback of maps with different codomains")
    X, Y = f.dom, g.dom
    fibres: dict[int, list[int]] = {}
    for y in Y.elements:
        fibres.setdefault(g.values[y], []).append(y)
    pairs = tuple((x, y) for x in X.elements for y in fibres.get(f.values[x], ()))
    index = {p: i for i, p in enumerate(pairs)}
    tx, ty = X.table, Y.table
    rows = [[index[(tx[a][c], ty[b][d])] for (c, d) in pairs] for (a, b) in pairs]
    apex = FiniteAlgebra(X.variety, rows)
    left = Hom(apex, X, tuple(p[0] for p in pairs))
    right = Hom(apex, Y, tuple(p[1] for p in pairs))
    return FibreProduct(apex, left, right, pairs)


def product(A: FiniteAlgebra, B: FiniteAlgebra) -> FibreProduct:
    """``A × B`` with ``(a, b)`` stored at index ``a * |B| + b``."""
    return pullback(to_terminal(A), to_terminal(B))


def kernel_congruence(f: Hom) -> Congruence:
    return Congruence(f.dom, f.values)


def kernel_pair(f: Hom) -> FibreProduct:
    """``Eq(f)`` with its two projections ``d`` (left) and ``c`` (right)."""
    return pullback(f, f)


def coequalizer(f: Hom, g: Hom) -> tuple[FiniteAlgebra, Hom]:
    if f.dom != g.dom or f.cod != g.cod:
        raise InputError("coequalizer needs a parallel pair")
    C = congruence_closure(f.cod, zip(f.values, g.values))
    return quotient(f.cod, C)


def pushout_of_surjections(f: Hom, g: Hom) -> tuple[FiniteAlgebra, Hom, Hom]:
    """Pushout of a span ``B <-f- A -g-> C`` of surjections.

    The apex is ``B`` divided by the congruence generated by
    ``(f(a), f(a'))`` for every ``a, a'`` identified by ``g``.  Returns the
    apex and the two coprojections ``B -> P`` and ``C -> P``.
    """
    if f.dom != g.dom:
        raise InputError("pushout needs a span")
    if not (f.is_surjective() and g.is_surjective()):
        raise InputError("pushout is only computed for spans of surjections")
    A = f.dom
    first: dict[int, int] = {}
    seed = []
    for a in A.elements:
        b = first.setdefault(g.values[a], a)
        seed.append((f.values[a], f.values[b]))
    P, q = quotient(f.cod, congruence_closure(f.cod, seed))
    vals = [0] * g.cod.size
    for a in A.elements:
        vals[g.values[a]] = q.values[f.values[a]]
    return P, q, Hom(g.cod, P, vals)


def subalgebra(A: FiniteAlgebra, subset: Iterable[int]) -> tuple[FiniteAlgebra, Hom]:
    """The subalgebra on a closed subset (listed in increasing order) and its inclusion."""
    elems = sorted(set(subset))
    index = {x: i for i, x in enumerate(elems)}
    try:
        rows = [[index[A.table[a][b]] for b in elems] for a in elems]
    except KeyError:
        raise InputError("subset is not closed under the operation") from None
    S = FiniteAlgebra(A.variety, rows)
    return S, Hom(S, A, elems)


def image_factorisation(f: Hom) -> tuple[FiniteAlgebra, Hom, Hom]:
    """``f = inclusion ∘ corestriction`` through the image subalgebra."""
    S, inc = subalgebra(f.cod, f.values)
    index = {x: i for i, x in enumerate(inc.values)}
    return S, Hom(f.dom, S, tuple(index[v] for v in f.values)), inc


def principal_congruences(A: FiniteAlgebra) -> list[Congruence]:
    return [congruence_closure(A, [(a, b)]) for a in A.elements for b in A.elements if a < b]


def congruence_lattice(A: FiniteAlgebra) -> list[Congruence]:
    """All congruences of ``A``: joins of principal congruences, sorted by
    number of classes (descending) then labels."""
    found = {Congruence.discrete(A)}
    frontier = list(found)
    principals = set(principal_congruences(A))
    while frontier:
        nxt = []
        for c in frontier:
            for p in principals:
                j = c.join(p)
                if j not in found:
                    found.add(j)
                    nxt.append(j)
        frontier = nxt
    return sorted(found, key=lambda c: (-c.num_classes, c.labels))
