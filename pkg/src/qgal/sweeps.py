"""Named property suites run exhaustively over catalog corpora.

Work is split per catalog algebra (or per instance for the main theorem) and
run in a process pool.  Results are merged in catalog order, so a report does
not depend on the number of workers.
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Sequence

from .algebra import FiniteAlgebra, Hom, Variety, congruence_lattice, kernel_congruence, quotient
from .catalog import (
    MAX_ORDER,
    chains_of,
    congruence_orbit_reps,
    cubes_of,
    enumerate_algebras,
    enumerate_extension_cubes,
    grids_of,
    squares_of,
    surjection_corpus,
)
from .diagram import compose_cubes, face
from .errors import InputError, PropertyViolation
from .extension import (
    coequalizer_of_kernel_pair,
    cube_pullback,
    extension_direction_report,
    is_extension,
    kernel_pair_cube,
)
from .fibration import all_direction_pairs, df_pullback, is_df_recursive, is_discrete_fibration
from .galois import (
    STRUCTURES,
    GaloisStructure,
    Verdict,
    centralization_congruence,
    covering_oracle,
    is_strongly_birkhoff,
    is_trivial_covering,
    reflect_ext,
)

SUITES = (
    "calculus-lemmas",
    "direction-independence",
    "birkhoff",
    "factorisation",
    "quotient-stability",
    "df-closure",
    "centralisation",
    "main-theorem",
)


def thread_count(default: int | None = None) -> int:
    """Workers from ``QGAL_THREADS``, else ``default``, else the CPU count."""
    raw = os.environ.get("QGAL_THREADS")
    if raw:
        try:
            n = int(raw)
        except ValueError:
            raise InputError(f"QGAL_THREADS must be an integer, got {raw!r}") from None
        if n < 1:
            raise InputError("QGAL_THREADS must be positive")
        return n
    return default if default is not None else (os.cpu_count() or 1)


def parallel_map(fn: Callable, items: Sequence, workers: int = 1) -> list:
    """``[fn(x) for x in items]``, possibly in worker processes; order kept."""
    items = list(items)
    if workers <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * workers))))


class _Tally:
    """Per-check counters with the first few failing instances."""

    def __init__(self):
        self.checks: dict[str, list[int]] = {}
        self.failures: list[dict] = []

    def record(self, name: str, ok: bool, where: dict | None = None) -> None:
        c = self.checks.setdefault(name, [0, 0])
        c[0] += 1
        if not ok:
            c[1] += 1
            self.failures.append({"check": name, **(where or {})})

    def touch(self, name: str) -> None:
        self.checks.setdefault(name, [0, 0])

    def merge(self, other: dict) -> None:
        for name, (n, bad) in other["checks"].items():
            c = self.checks.setdefault(name, [0, 0])
            c[0] += n
            c[1] += bad
        self.failures.extend(other["failures"])

    def to_json(self) -> dict:
        return {"checks": {k: list(v) for k, v in sorted(self.checks.items())}, "failures": self.failures}


def _sizes(cube) -> list[int]:
    return [V.size for V in cube.vertices]


# ---------------------------------------------------------------------------
# per-algebra jobs


def _calculus_job(A: FiniteAlgebra) -> dict:
    t = _Tally()
    for name in ("weak-right-cancellation", "composite-pullback", "barr-kock-extension",
                 "barr-kock-coequaliser", "barr-kock-pullback", "pullbacks-reflect-extensions"):
        t.touch(name)
    for i, (left, right, outer) in enumerate(grids_of(A)):
        where = {"algebra": list(map(list, A.table)), "grid": i}
        if is_extension(outer):
            t.record("weak-right-cancellation", is_extension(right), where)
        if is_extension(left) and is_extension(right) and is_discrete_fibration(outer).is_df:
            ok = is_discrete_fibration(left).is_df and is_discrete_fibration(right).is_df
            t.record("composite-pullback", ok, where)
    for i, sq in enumerate(squares_of(A)):
        where = {"algebra": list(map(list, A.table)), "square": i}
        for d in (1, 2):
            k = kernel_pair_cube(sq, d)
            ext = is_extension(sq)
            t.record("barr-kock-extension", ext == is_extension(k.d) == is_extension(k.c), where)
            q = coequalizer_of_kernel_pair(k)
            target = face(k.square, 2, "dom")
            same = all(
                kernel_congruence(q.edge(j << 1, 1)) == kernel_congruence(_component(sq, d, j))
                for j in range(2)
            )
            t.record("barr-kock-coequaliser", same and face(q, 1, "dom") == face(target, 1, "cod"), where)
            pb = is_discrete_fibration(sq).is_df
            t.record("barr-kock-pullback", pb == is_discrete_fibration(k.d).is_df, where)
    for i, Q in enumerate(cubes_of(A, 3)):
        alpha = face(Q, 2, "cod")
        gamma = face(Q, 1, "cod")
        if not is_extension(gamma):
            continue
        pulled = face(cube_pullback(gamma, alpha), 1, "dom")
        if is_extension(pulled):
            t.record("pullbacks-reflect-extensions", is_extension(alpha), {"algebra": list(map(list, A.table)), "cube": i})
    return t.to_json()


def _component(sq, d: int, j: int):
    """Component ``j`` of ``sq`` read as an arrow in direction ``d``."""
    e = 3 - d
    S = (1 << (e - 1)) if j else 0
    return sq.edge(S, d)


def _direction_job(A: FiniteAlgebra) -> dict:
    t = _Tally()
    for n in (2, 3):
        for i, Q in enumerate(cubes_of(A, n)):
            report = extension_direction_report(Q)
            t.record(f"directions-n{n}", len(set(report.values())) == 1,
                     {"algebra": list(map(list, A.table)), "cube": i})
    for i, sq in enumerate(squares_of(A)):
        report = extension_direction_report(sq)
        t.record("directions-n2", len(set(report.values())) == 1, {"algebra": list(map(list, A.table)), "square": i})
    return t.to_json()


def _df_job(A: FiniteAlgebra) -> dict:
    t = _Tally()
    for name in ("df-equivalence-n2", "df-equivalence-n3", "df-composition", "df-composition-n3",
                 "df-pullback-stability", "pullback-of-extensions-is-df"):
        t.touch(name)
    where0 = {"algebra": list(map(list, A.table))}
    cubes = list(squares_of(A)) + list(cubes_of(A, 2)) + list(cubes_of(A, 3))
    for i, Q in enumerate(cubes):
        name = f"df-equivalence-n{Q.dim}"
        try:
            for pair in all_direction_pairs(Q.dim):
                is_df_recursive(Q, pair, cross_check=True)
            ok = True
        except PropertyViolation:
            ok = False
        t.record(name, ok, {**where0, "cube": i})
    for i, (left, right, outer) in enumerate(grids_of(A)):
        if is_discrete_fibration(left).is_df and is_discrete_fibration(right).is_df:
            t.record("df-composition", is_discrete_fibration(outer).is_df, {**where0, "grid": i})
    for i, Q in enumerate(cubes_of(A, 3)):
        alpha = face(Q, 2, "cod")
        gamma = face(Q, 1, "cod")
        if not is_extension(gamma):
            continue
        if is_discrete_fibration(alpha).is_df:
            try:
                df_pullback(alpha, gamma)
                ok = True
            except PropertyViolation:
                ok = False
            t.record("df-pullback-stability", ok, {**where0, "cube": i})
        if is_extension(alpha):
            out = cube_pullback(gamma, alpha)
            t.record("pullback-of-extensions-is-df", is_discrete_fibration(out).is_df, {**where0, "cube": i})
            # two pullback legs in a row: tau*tau -> tau -> alpha
            tau = face(out, 1, "dom")
            first = cube_pullback(tau, tau)
            t.record("df-composition-n3", is_discrete_fibration(compose_cubes(first, out, 1)).is_df, {**where0, "cube": i})
    return t.to_json()


def _factorisation_job(args) -> dict:
    name, A = args
    gamma = GaloisStructure(name)
    t = _Tally()
    for n in ("trivial-implies-covering", "trivial-factorisation", "covering-factorisation"):
        t.touch(n)
    for f in surjection_corpus_of(A):
        t.record("trivial-implies-covering",
                 not is_trivial_covering(gamma, f) or covering_oracle(gamma, f).verdict is Verdict.YES,
                 {"algebra": list(map(list, A.table)), "values": list(f.values)})
    for i, (tt, s) in enumerate(chains_of(A)):
        st = tt.then(s)
        where = {"algebra": list(map(list, A.table)), "chain": i}
        if is_trivial_covering(gamma, st):
            t.record("trivial-factorisation", bool(is_trivial_covering(gamma, tt)) and bool(is_trivial_covering(gamma, s)), where)
        if covering_oracle(gamma, st):
            t.record("covering-factorisation", bool(covering_oracle(gamma, tt)) and bool(covering_oracle(gamma, s)), where)
    return t.to_json()


def surjection_corpus_of(A: FiniteAlgebra):
    for (th,) in congruence_orbit_reps(A, 1):
        yield quotient(A, th)[1]


def _quotient_job(args) -> dict:
    name, A = args
    gamma = GaloisStructure(name)
    t = _Tally()
    for n in ("quotient-stability", "pullback-preserves-coverings", "pullback-reflects-coverings"):
        t.touch(n)
    for i, sq in enumerate(squares_of(A)):
        where = {"algebra": list(map(list, A.table)), "square": i}
        ext = is_extension(sq)
        pb = ext and is_discrete_fibration(sq).is_df
        for d in (1, 2):
            dom = bool(covering_oracle(gamma, face(sq, d, "dom")))
            cod = bool(covering_oracle(gamma, face(sq, d, "cod")))
            if ext and dom:
                t.record("quotient-stability", cod, {**where, "direction": d})
            if pb:
                if cod:
                    t.record("pullback-preserves-coverings", dom, {**where, "direction": d})
                if dom:
                    t.record("pullback-reflects-coverings", cod, {**where, "direction": d})
    return t.to_json()


def _centralisation_job(args) -> dict:
    name, A = args
    gamma = GaloisStructure(name)
    t = _Tally()
    t.touch("f1-is-covering")
    t.touch("f1-minimal")
    lattice = congruence_lattice(A)
    for th in lattice:
        B, f = quotient(A, th)
        where = {"algebra": list(map(list, A.table)), "kernel": list(th.labels)}
        try:
            F1, _ = reflect_ext(gamma, f)
            ok = covering_oracle(gamma, F1).verdict is Verdict.YES
        except PropertyViolation:
            ok = False
        t.record("f1-is-covering", ok, where)
        C = centralization_congruence(gamma, f)
        minimal = True
        for D in lattice:
            if not D <= th:
                continue
            Q, q = quotient(A, D)
            vals = [0] * Q.size
            for x in A.elements:
                vals[q.values[x]] = f.values[x]
            g = Hom(Q, B, tuple(vals))
            if covering_oracle(gamma, g) and not C <= D:
                minimal = False
        t.record("f1-minimal", minimal, where)
    return t.to_json()


# ---------------------------------------------------------------------------
# suites


def _per_algebra(job, catalog, workers: int, with_name: str | None = None) -> dict:
    items = [(with_name, A) for A in catalog] if with_name else list(catalog)
    tally = _Tally()
    for part in parallel_map(job, items, workers):
        tally.merge(part)
    return tally.to_json()


def _structures_for(structure: str | None) -> list[str]:
    if structure is None:
        return ["quandle-pi0", "group-ab"]
    if structure not in STRUCTURES:
        raise InputError(f"unknown structure {structure!r}")
    return [structure]


def _default_order(name: str, order_max: int | None) -> int:
    if order_max is not None:
        if order_max < 1:
            raise InputError("order bounds are positive")
        return order_max
    return 8 if STRUCTURES[name] is Variety.GROUP else 4


def run_suite(suite: str, structure: str | None = None, order_max: int | None = None, dim: int = 1,
              bound: int = 12, workers: int = 1) -> dict:
    """Run a named suite; the report is plain JSON data."""
    if suite not in SUITES:
        raise InputError(f"unknown suite {suite!r}")
    parts = {}
    for name in _structures_for(structure):
        order = _default_order(name, order_max)
        variety = STRUCTURES[name]
        if order > MAX_ORDER[variety]:
            raise InputError(f"{variety.value} catalogs stop at order {MAX_ORDER[variety]}")
        cat = enumerate_algebras(variety, order)
        if suite == "calculus-lemmas":
            parts[name] = _per_algebra(_calculus_job, cat, workers)
        elif suite == "direction-independence":
            parts[name] = _per_algebra(_direction_job, cat, workers)
        elif suite == "df-closure":
            parts[name] = _per_algebra(_df_job, cat, workers)
        elif suite == "factorisation":
            parts[name] = _per_algebra(_factorisation_job, cat, workers, name)
        elif suite == "quotient-stability":
            parts[name] = _per_algebra(_quotient_job, cat, workers, name)
        elif suite == "centralisation":
            parts[name] = _per_algebra(_centralisation_job, cat, workers, name)
        elif suite == "birkhoff":
            gamma = GaloisStructure(name)
            res = is_strongly_birkhoff(gamma, surjection_corpus(cat))
            parts[name] = {
                "checks": {"reflection-square-is-double-extension": [res["checked"], len(res["failures"])]},
                "failures": [{"check": "reflection-square-is-double-extension", "values": list(f.values),
                              "algebra": list(map(list, f.dom.table))} for f in res["failures"]],
            }
        elif suite == "main-theorem":
            from .symmetric import main_theorem_sweep

            gamma = GaloisStructure(name)
            if dim == 1:
                corpus = surjection_corpus(cat)
            elif dim == 2:
                corpus = list(enumerate_extension_cubes(cat, 2))
            else:
                raise InputError("the main-theorem sweep covers dimensions 1 and 2")
            parts[name] = main_theorem_sweep(gamma, corpus, dim, bound, workers)
    failing = 0
    for part in parts.values():
        if "counts" in part:
            failing += len(part["failures"])
        else:
            failing += sum(bad for _, bad in part["checks"].values())
    return {
        "suite": suite,
        "params": {"structure": structure, "order_max": order_max, "dim": dim, "bound": bound},
        "results": parts,
        "failures": failing,
        "pass": failing == 0,
    }


def unknown_count(report: dict) -> int:
    """Instances left undecided (bound exhaustion or no oracle)."""
    total = 0
    for part in report.get("results", {}).values():
        counts = part.get("counts", {})
        total += counts.get("oracle-yes-bound-exhausted", 0) + counts.get("oracle-unknown", 0)
    return total
