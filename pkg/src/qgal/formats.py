"""Text formats: ``.alg`` algebra files, catalog files and ``cube.json``.

An ``.alg`` record is a header line ``quandle n``, ``rack n`` or ``group n``
followed by ``n`` rows of ``n`` integers; row ``x`` column ``y`` holds
``x ◁ y`` (or ``x·y``).  Lines starting with ``#`` are comments.  Catalog
files concatenate records, each preceded by ``# id: <order>-<serial>``.

``cube.json`` stores ``{"dim", "variety", "vertices", "edges"}``.  Vertices
are keyed by little-endian bitstrings (character ``i`` is direction
``i + 1``) and hold operation tables.  Edges are keyed ``"<bitstring>,<d>"``
and hold value arrays.
"""
from __future__ import annotations

import json
from typing import Iterable

from .algebra import FiniteAlgebra, Variety, make_algebra
from .diagram import CubeDiagram, bitstring, build_cube, parse_bitstring
from .errors import InputError


def _records(text: str) -> list[tuple[str | None, list[str]]]:
    out: list[tuple[str | None, list[str]]] = []
    ident = None
    current: list[str] | None = None
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("id:"):
                ident = body[3:].strip()
            continue
        head = line.split()
        if head[0].lower() in ("quandle", "rack", "group"):
            current = [line]
            out.append((ident, current))
            ident = None
        elif current is None:
            raise InputError(f"table row before any header: {line!r}")
        else:
            current.append(line)
    return out


def _raw_record(lines: list[str]) -> tuple[Variety, list[list[int]]]:
    head = lines[0].split()
    if len(head) != 2:
        raise InputError(f"bad header {lines[0]!r}")
    variety = Variety.parse(head[0].lower())
    try:
        n = int(head[1])
        rows = [[int(v) for v in line.replace(",", " ").split()] for line in lines[1:]]
    except ValueError as exc:
        raise InputError(f"non-integer entry: {exc}") from None
    if len(rows) != n or any(len(r) != n for r in rows):
        raise InputError(f"expected {n} rows of {n} entries")
    return variety, rows


def _parse_record(lines: list[str]) -> FiniteAlgebra:
    return make_algebra(*_raw_record(lines))


def read_alg_table(text: str) -> tuple[Variety, list[list[int]]]:
    """Header and rows of a single ``.alg`` record, without axiom checks."""
    recs = _records(text)
    if len(recs) != 1:
        raise InputError(f"expected one algebra, found {len(recs)}")
    return _raw_record(recs[0][1])


def parse_alg(text: str) -> FiniteAlgebra:
    recs = _records(text)
    if len(recs) != 1:
        raise InputError(f"expected one algebra, found {len(recs)}")
    return _parse_record(recs[0][1])


def format_alg(A: FiniteAlgebra, ident: str | None = None) -> str:
    lines = []
    if ident is not None:
        lines.append(f"# id: {ident}")
    lines.append(f"{A.variety.value} {A.size}")
    lines.extend(" ".join(str(v) for v in row) for row in A.table)
    return "\n".join(lines) + "\n"


def parse_catalog(text: str) -> list[tuple[str | None, FiniteAlgebra]]:
    return [(ident, _parse_record(lines)) for ident, lines in _records(text)]


def format_catalog(entries: Iterable[tuple[str, FiniteAlgebra]]) -> str:
    return "".join(format_alg(A, ident) for ident, A in entries)


def cube_to_json(cube: CubeDiagram) -> dict:
    n = cube.dim
    return {
        "dim": n,
        "variety": cube.initial.variety.value,
        "vertices": {bitstring(S, n): [list(r) for r in V.table] for S, V in enumerate(cube.vertices)},
        "edges": {f"{bitstring(S, n)},{d}": list(f.values) for S, d, f in cube.all_edges()},
    }


def cube_from_json(obj) -> CubeDiagram:
    """Parse and validate a cube; every problem is an :class:`InputError`."""
    if isinstance(obj, str):
        try:
            obj = json.loads(obj)
        except json.JSONDecodeError as exc:
            raise InputError(f"malformed JSON: {exc}") from None
    try:
        n = int(obj["dim"])
        variety = Variety.parse(obj["variety"])
        raw_vertices = obj["vertices"]
        raw_edges = obj["edges"]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"cube JSON lacks a field: {exc}") from None
    if n < 0:
        raise InputError("negative dimension")
    vertices = [None] * (1 << n)
    for key, table in raw_vertices.items():
        if len(key) != n:
            raise InputError(f"vertex key {key!r} has the wrong length")
        vertices[parse_bitstring(key) if n else 0] = make_algebra(variety, table)
    if any(v is None for v in vertices):
        raise InputError("missing vertices")
    edges = {}
    for key, values in raw_edges.items():
        try:
            bits, d = key.split(",")
            edges[(parse_bitstring(bits) if n else 0, int(d))] = [int(v) for v in values]
        except ValueError:
            raise InputError(f"bad edge key {key!r}") from None
    return build_cube(n, vertices, edges)


def dumps(obj) -> str:
    """Deterministic JSON text."""
    return json.dumps(obj, sort_keys=True, indent=1) + "\n"
