"""Symmetric coverings: spans of discrete fibrations ``β <- τ -> α`` with
``β`` a cube of base algebras.

For single extensions the span comes from a splitting: ``τ`` is the
pulled-back covering and ``β`` its reflection.  For double extensions the
span is assembled in two stages.  The square is first split at level 1 and
reflected onto a square of coverings.  Both vertical coverings of that
square are then split at level 0, after which every vertex is reflected.
The two spans are joined by a pullback.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .algebra import Congruence, Hom, congruence_lattice, identity, quotient
from .diagram import CubeDiagram, arrow, compose_cubes, face, identity_cube, map_vertices, reorder, transpose
from .errors import InputError, PropertyViolation
from .extension import cube_pullback, is_extension, pullback_at_vertex
from .fibration import is_discrete_fibration
from .formats import cube_to_json
from .galois import (
    CoveringVerdict,
    GaloisStructure,
    Verdict,
    base_congruence,
    covering_by_search,
    covering_oracle,
    in_base,
    is_normal_covering,
    is_trivial_covering,
    pull_back,
    reflect0,
    reflection_cube,
    verify_splitting,
)


@dataclass(frozen=True)
class SymmetricWitness:
    """A span ``β <- τ -> α``; both legs have their leg direction first."""

    alpha: CubeDiagram
    tau: CubeDiagram
    beta: CubeDiagram
    left: CubeDiagram = field(repr=False)
    right: CubeDiagram = field(repr=False)

    @property
    def dim(self) -> int:
        return self.alpha.dim

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "tau": cube_to_json(self.tau),
            "beta": cube_to_json(self.beta),
            "left": cube_to_json(self.left),
            "right": cube_to_json(self.right),
        }


@dataclass(frozen=True)
class WitnessCheck:
    ok: bool
    reason: str = ""

    def __bool__(self):
        return self.ok


def _base(gamma: GaloisStructure) -> GaloisStructure:
    return gamma.at_level(0)


def _as_cube(x) -> CubeDiagram:
    return arrow(x) if isinstance(x, Hom) else x


def verify_symmetric_witness(gamma: GaloisStructure, w: SymmetricWitness, form: str = "base") -> WitnessCheck:
    """Check a span of discrete fibrations.

    ``form="base"`` requires every vertex of ``β`` to be a base algebra;
    ``form="level"`` requires ``β``, read in direction 1, to run between
    coverings of the level below.  Accepted base-form spans are re-checked:
    ``τ`` must be a trivial covering in every direction and ``α`` must pass
    the covering oracle where one exists.  Failures of those re-checks raise
    :class:`PropertyViolation`.
    """
    if form not in ("base", "level"):
        raise InputError(f"unknown witness form {form!r}")
    n = w.alpha.dim
    if w.left.dim != n + 1 or w.right.dim != n + 1:
        raise InputError("legs must be one dimension above the span ends")
    g0 = _base(gamma)
    if face(w.left, 1, "dom") != w.tau or face(w.right, 1, "dom") != w.tau:
        return WitnessCheck(False, "legs do not start at tau")
    if face(w.left, 1, "cod") != w.beta:
        return WitnessCheck(False, "left leg does not end at beta")
    if face(w.right, 1, "cod") != w.alpha:
        return WitnessCheck(False, "right leg does not end at alpha")
    if not is_discrete_fibration(w.left):
        return WitnessCheck(False, "left leg is not a discrete fibration")
    if not is_discrete_fibration(w.right):
        return WitnessCheck(False, "right leg is not a discrete fibration")
    if form == "base" or n == 1:
        if not all(in_base(g0, V) for V in w.beta.vertices):
            return WitnessCheck(False, "beta has a vertex outside the base")
    else:
        for side in ("dom", "cod"):
            if covering_oracle(g0, face(w.beta, 1, side)).verdict is not Verdict.YES:
                return WitnessCheck(False, f"beta's {side} side is not a covering")
    if form == "base" and n <= 2:
        level = gamma.at_level(n - 1)
        for d in range(1, n + 1):
            if not is_trivial_covering(level, w.tau, d):
                raise PropertyViolation(f"symmetrically trivial cube is not trivial in direction {d}", witness=w.tau)
    level = gamma.at_level(n - 1)
    if level.has_oracle and covering_oracle(level, w.alpha).verdict is Verdict.NO:
        raise PropertyViolation("verified symmetric witness for a non-covering", witness=w.alpha)
    return WitnessCheck(True)


def _restore(leg: CubeDiagram, d: int) -> CubeDiagram:
    """Undo :func:`bring_to_front` on the cube directions of a leg."""
    n = leg.dim - 1
    if d == 1:
        return leg
    # leg direction 2 holds cube direction d; the others follow in order
    rest = [k for k in range(1, n + 1) if k != d]
    order = [1] + [2 if k == d else 3 + rest.index(k) for k in range(1, n + 1)]
    return reorder(leg, order)


def _witness(alpha: CubeDiagram, left: CubeDiagram, right: CubeDiagram, d: int) -> SymmetricWitness:
    left, right = _restore(left, d), _restore(right, d)
    return SymmetricWitness(face(right, 1, "cod"), face(left, 1, "dom"), face(left, 1, "cod"), left, right)


def vertexwise_reflection(gamma: GaloisStructure, cube: CubeDiagram) -> tuple[CubeDiagram, CubeDiagram]:
    """Reflect every vertex of ``cube`` into the base; returns the reflected
    cube and the connecting cube."""
    g0 = _base(gamma)
    return map_vertices(cube, [reflect0(g0, V)[1] for V in cube.vertices])


def _splitting(gamma: GaloisStructure, c: Hom, bound: int) -> Hom | None:
    """A splitting of ``c``: the identity when ``c`` is already trivial,
    otherwise the result of :func:`covering_by_search`."""
    g0 = _base(gamma)
    if is_trivial_covering(g0, c):
        return identity(c.cod)
    # the bound limits the catalog search, not the covering itself
    found = covering_by_search(g0, c, max(bound, c.dom.size))
    return _as_cube(found.witness).edge(0, 1) if found else None


def _descend(gamma: GaloisStructure, beta2: CubeDiagram, bound: int) -> tuple[CubeDiagram, CubeDiagram] | None:
    """From a square whose direction-2 edges are coverings, a leg
    ``τ -> beta2`` (a discrete fibration) with the direction-2 edges of ``τ``
    trivial coverings, and the leg ``τ -> β`` into the base."""
    e_y = _splitting(gamma, beta2.edge(1, 2), bound)
    if e_y is None:
        return None
    leg1 = pullback_at_vertex(beta2, 3, e_y)
    mid = face(leg1, 1, "dom")
    e_z = _splitting(gamma, mid.edge(0, 2), bound)
    if e_z is None:
        return None
    leg2 = pullback_at_vertex(mid, 2, e_z)
    down = compose_cubes(leg2, leg1, 1)
    tau = face(down, 1, "dom")
    _, up = vertexwise_reflection(gamma, tau)
    return down, up


def construct_witness_from_splitting(gamma: GaloisStructure, c, e, d: int = 1, bound: int = 12) -> SymmetricWitness | None:
    """Build a span from a splitting ``e`` of the covering ``c``.

    ``c`` and ``e`` are read as arrows in direction ``d``.  Returns None when
    a level-0 splitting needed for a double extension is not found within
    ``bound``.
    """
    c = _as_cube(c)
    e = _as_cube(e)
    n = c.dim
    if n not in (1, 2):
        raise InputError("witnesses are built for single and double extensions")
    level = gamma.at_level(n - 1)
    if not verify_splitting(level, c, e, d):
        raise InputError("e does not split c")
    right = pull_back(c, e, d)
    tau = face(right, 1, "dom")
    _, left = reflection_cube(level, tau, 1)
    if n == 1:
        return _witness(c, left, right, d)
    # left is now a leg into a square of coverings; descend to base vertices
    beta2 = face(left, 1, "cod")
    got = _descend(gamma, beta2, bound)
    if got is None:
        return None
    down, up = got
    joined = cube_pullback(left, down)
    to_tau2 = face(joined, 1, "dom")
    to_tau = face(joined, 2, "dom")
    return _witness(c, compose_cubes(to_tau, up, 1), compose_cubes(to_tau2, right, 1), d)


def find_symmetric_witness(gamma: GaloisStructure, alpha, bound: int = 12) -> CoveringVerdict:
    """Yes with a verified span, or Unknown; never No.

    Single extensions use :func:`covering_by_search` for a splitting.
    Double extensions try the square itself as its splitting in each
    direction.
    """
    alpha = _as_cube(alpha)
    n = alpha.dim
    if n == 1:
        split = covering_by_search(_base(gamma), alpha, bound)
        if split:
            w = construct_witness_from_splitting(gamma, alpha, split.witness, 1, bound)
            if w is not None and verify_symmetric_witness(gamma, w):
                return CoveringVerdict.yes(w)
        return CoveringVerdict.unknown(bound)
    if n == 2:
        level = gamma.at_level(1)
        for d in (1, 2):
            if not verify_splitting(level, alpha, alpha, d):
                continue
            w = construct_witness_from_splitting(gamma, alpha, alpha, d, bound)
            if w is not None and verify_symmetric_witness(gamma, w):
                return CoveringVerdict.yes(w)
        return CoveringVerdict.unknown(bound)
    raise InputError("witness search covers dimensions 1 and 2")


def _identity_leg(cube: CubeDiagram) -> CubeDiagram:
    return identity_cube(cube)


def _base_quotients(gamma: GaloisStructure, cube: CubeDiagram) -> Iterable[tuple[Congruence, ...]]:
    """Tuples of vertex congruences, each with a base quotient, that the
    edges respect."""
    g0 = _base(gamma)
    options = []
    for V in cube.vertices:
        floor = base_congruence(g0, V)
        options.append([C for C in congruence_lattice(V) if floor <= C])
    for combo in itertools.product(*options):
        if all(
            all(combo[S + (1 << (d - 1))].related(f.values[a], f.values[b]) for a, b in combo[S].pairs())
            for S, d, f in cube.all_edges()
        ):
            yield combo


def is_symmetrically_trivial(gamma: GaloisStructure, tau, strategy: str = "canonical") -> CoveringVerdict:
    """Whether a discrete fibration from ``tau`` into a base cube exists.

    ``canonical`` tests the vertexwise reflection only; a negative answer is
    exact for single extensions and Unknown otherwise.  ``search`` runs
    through every quotient cube with base vertices, so its answer is exact.
    """
    tau = _as_cube(tau)
    if not is_extension(tau):
        raise InputError("symmetric triviality is tested on extensions")
    beta, leg = vertexwise_reflection(gamma, tau)
    canonical = is_discrete_fibration(leg).is_df
    if strategy == "canonical":
        if canonical:
            return CoveringVerdict.yes(SymmetricWitness(tau, tau, beta, leg, _identity_leg(tau)))
        return CoveringVerdict.no() if tau.dim == 1 else CoveringVerdict.unknown()
    if strategy != "search":
        raise InputError(f"unknown strategy {strategy!r}")
    for combo in _base_quotients(gamma, tau):
        units = [quotient(V, C)[1] for V, C in zip(tau.vertices, combo)]
        b, l = map_vertices(tau, units)
        if is_discrete_fibration(l).is_df:
            if not canonical:
                raise PropertyViolation("a base cube receives a discrete fibration but the reflection does not", witness=tau)
            return CoveringVerdict.yes(SymmetricWitness(tau, tau, b, l, _identity_leg(tau)))
    return CoveringVerdict.no()


CLASSES = ("agree-yes", "agree-no", "oracle-yes-bound-exhausted", "witness-yes-oracle-no", "oracle-unknown")


def classify(oracle: Verdict, found: Verdict) -> str:
    if oracle is Verdict.UNKNOWN:
        return "oracle-unknown"
    if oracle is Verdict.YES:
        return "agree-yes" if found is Verdict.YES else "oracle-yes-bound-exhausted"
    return "witness-yes-oracle-no" if found is Verdict.YES else "agree-no"


# spans with larger vertices are summarised by their sizes only
WITNESS_JSON_LIMIT = 32


def theorem_instance(gamma: GaloisStructure, alpha, bound: int = 12) -> dict:
    """One main-theorem comparison, as a JSON-ready record."""
    alpha = _as_cube(alpha)
    n = alpha.dim
    oracle = covering_oracle(gamma.at_level(n - 1), alpha)
    try:
        found = find_symmetric_witness(gamma, alpha, bound)
    except PropertyViolation as exc:
        return {"sizes": [V.size for V in alpha.vertices], "oracle": oracle.verdict.value,
                "witness": "violation", "class": "witness-yes-oracle-no", "error": str(exc)}
    if oracle.verdict is Verdict.NO:
        # the obvious candidate spans must fail as well
        for d in range(1, n + 1):
            try:
                attempt = construct_witness_from_splitting(gamma, alpha, alpha, d, bound)
            except InputError:
                continue
            if attempt is not None and verify_symmetric_witness(gamma, attempt):
                found = CoveringVerdict.yes(attempt)
                break
    record = {
        "sizes": [V.size for V in alpha.vertices],
        "alpha": cube_to_json(alpha),
        "oracle": oracle.verdict.value,
        "witness": found.verdict.value,
        "class": classify(oracle.verdict, found.verdict),
    }
    if found:
        w = found.witness
        record["span_sizes"] = {"tau": [V.size for V in w.tau.vertices], "beta": [V.size for V in w.beta.vertices]}
        if max(record["span_sizes"]["tau"]) <= WITNESS_JSON_LIMIT:
            record["span"] = w.to_json()
    return record


def main_theorem_sweep(gamma: GaloisStructure, corpus: Sequence, n: int, bound: int = 12, workers: int = 1) -> dict:
    """Compare the covering oracle with the witness search over a corpus."""
    from .sweeps import parallel_map

    cubes = [_as_cube(a) for a in corpus]
    for a in cubes:
        if a.dim != n:
            raise InputError(f"corpus holds a {a.dim}-cube, expected dimension {n}")
    records = parallel_map(_instance_job, [(gamma.name, a, bound) for a in cubes], workers)
    counts = {k: 0 for k in CLASSES}
    failures = []
    for i, r in enumerate(records):
        r["index"] = i
        counts[r["class"]] += 1
        if r["class"] in ("oracle-yes-bound-exhausted", "witness-yes-oracle-no"):
            failures.append(i)
    return {
        "suite": "main-theorem",
        "structure": gamma.name,
        "dim": n,
        "bound": bound,
        "instances": records,
        "counts": counts,
        "failures": failures,
        "pass": not failures,
    }


def _instance_job(args) -> dict:
    name, alpha, bound = args
    return theorem_instance(GaloisStructure(name), alpha, bound)


def transpose_invariance(gamma: GaloisStructure, square: CubeDiagram) -> bool:
    """The level-1 oracle and the normality test agree in both directions."""
    level = gamma.at_level(1)
    a = covering_oracle(level, square).verdict
    b = covering_oracle(level, transpose(square)).verdict
    if level.has_oracle:
        n1 = is_normal_covering(level, square, 1).verdict
        n2 = is_normal_covering(level, square, 2).verdict
        return a == b == n1 == n2
    return a == b

