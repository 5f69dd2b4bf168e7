"""``qgal`` command line.

Exit codes: 0 every check ran and nothing failed (a No verdict is a
successful check), 1 a property violation, 2 an Unknown verdict or bound
exhaustion, 3 bad input or usage.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .algebra import FiniteAlgebra, validate_algebra
from .catalog import MAX_ORDER, enumerate_algebras
from .diagram import CubeDiagram, arrow
from .errors import InputError, PropertyViolation
from .extension import is_nfold_extension
from .fibration import is_discrete_fibration
from .formats import cube_from_json, cube_to_json, dumps, format_catalog, parse_alg, read_alg_table
from .galois import (
    STRUCTURES,
    GaloisStructure,
    Verdict,
    covering_oracle,
    is_normal_covering,
    is_trivial_covering,
    reflect0,
    reflect_ext,
    structure_for,
)
from .reports import load_report, render_report
from .sweeps import SUITES, run_suite, thread_count, unknown_count
from .symmetric import find_symmetric_witness, is_symmetrically_trivial

EXIT_OK, EXIT_VIOLATION, EXIT_UNKNOWN, EXIT_INPUT = 0, 1, 2, 3

CHECKS = ("axioms", "extension", "df", "trivial", "covering", "normal", "symmetric")


class _Parser(argparse.ArgumentParser):
    """Usage errors become :class:`InputError` so they map to exit 3."""

    def error(self, message):
        raise InputError(message)


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _write(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc.strerror}") from None


def _load_cube(path: str) -> CubeDiagram:
    text = _read(path)
    if path.endswith(".alg"):
        raise InputError(f"{path}: this check takes a cube.json file")
    return cube_from_json(text)


def _structure(args, cube: CubeDiagram, level: int) -> GaloisStructure:
    if args.structure:
        gamma = GaloisStructure(args.structure, level)
        if gamma.variety is not cube.initial.variety:
            raise InputError(f"structure {args.structure} does not fit {cube.initial.variety.value} data")
        return gamma
    return structure_for(cube.initial.variety, level)


def _verdict_code(v: Verdict) -> int:
    return EXIT_UNKNOWN if v is Verdict.UNKNOWN else EXIT_OK


def _check_one(args, path: str) -> tuple[dict, int]:
    kind = args.what
    if kind == "axioms":
        variety, rows = read_alg_table(_read(path))
        report = validate_algebra(rows, variety)
        return {"verdict": "yes" if report.ok else "no",
                "violations": [{"axiom": v.axiom, "witness": list(v.witness)} for v in report.violations]}, EXIT_OK
    cube = _load_cube(path)
    if kind == "extension":
        v = is_nfold_extension(cube)
        return {"verdict": "yes" if v else "no", **v.to_json()}, EXIT_OK
    if kind == "df":
        v = is_discrete_fibration(cube)
        return {"verdict": "yes" if v else "no", **v.to_json()}, EXIT_OK
    if cube.dim < 1:
        raise InputError(f"{path}: expected an arrow or a higher cube")
    level = args.level if args.level is not None else cube.dim - 1
    gamma = _structure(args, cube, level)
    if kind == "trivial":
        v = is_trivial_covering(gamma, cube, args.direction)
    elif kind == "covering":
        v = covering_oracle(gamma, cube, args.direction)
    elif kind == "normal":
        v = is_normal_covering(gamma, cube, args.direction)
    elif args.strategy is not None:
        v = is_symmetrically_trivial(_structure(args, cube, 0), cube, args.strategy)
    else:
        v = find_symmetric_witness(_structure(args, cube, 0), cube, args.bound)
    out = {"structure": gamma.name, "level": gamma.level, **v.to_json()}
    if kind == "symmetric" and v.witness is not None:
        w = v.witness
        out["span_sizes"] = {"tau": [V.size for V in w.tau.vertices], "beta": [V.size for V in w.beta.vertices]}
        if args.witness_out:
            _write(args.witness_out, dumps(w.to_json()))
    return out, _verdict_code(v.verdict)


def cmd_check(args) -> int:
    if args.witness_out and len(args.files) != 1:
        raise InputError("--witness-out takes a single input file")
    results = []
    code = EXIT_OK
    for path in args.files:
        out, c = _check_one(args, path)
        results.append({"check": args.what, "file": path, **out})
        code = max(code, c)
    _write(None, dumps(results[0] if len(results) == 1 else results))
    return code


def cmd_gen(args) -> int:
    cat = enumerate_algebras(args.variety, args.order_max, thread_count())
    _write(args.out, format_catalog(zip(cat.ids(), cat)))
    if args.out:
        print(" ".join(f"{n}:{k}" for n, k in enumerate(cat.counts(), 1)))
    return EXIT_OK


def cmd_reflect(args) -> int:
    text = _read(args.file)
    if args.target in ("pi0", "ab"):
        A: FiniteAlgebra = parse_alg(text)
        want = "group-ab" if args.target == "ab" else None
        gamma = structure_for(A.variety)
        if (want == "group-ab") != (gamma.name == "group-ab"):
            raise InputError(f"{args.target} does not apply to a {A.variety.value}")
        B, unit = reflect0(gamma, A)
        _write(args.out, dumps({"reflection": cube_to_json(arrow(unit)), "unit": list(unit.values)}))
        return EXIT_OK
    cube = cube_from_json(text)
    if cube.dim != 1:
        raise InputError("F1 takes a single extension (a 1-cube)")
    gamma = structure_for(cube.initial.variety, 0)
    F1, conn = reflect_ext(gamma, cube.edge(0, 1))
    _write(args.out, dumps({"F1": cube_to_json(arrow(F1)), "unit_square": cube_to_json(conn)}))
    return EXIT_OK


def _sweep_dim(args) -> int:
    if args.level is None:
        return args.dim if args.dim is not None else 1
    if args.dim is not None and args.dim != args.level + 1:
        raise InputError("--dim must be --level + 1")
    return args.level + 1


def cmd_sweep(args) -> int:
    if args.bound < 1:
        raise InputError("--bound must be positive")
    report = run_suite(args.suite, args.structure, args.order_max, _sweep_dim(args), args.bound, thread_count())
    text = dumps(report)
    _write(args.out, text)
    if args.out:
        sys.stdout.write(render_report(report))
    if not report["pass"]:
        return EXIT_VIOLATION
    if unknown_count(report):
        return EXIT_UNKNOWN
    return EXIT_OK


def cmd_report(args) -> int:
    report = load_report(_read(args.file))
    sys.stdout.write(render_report(report))
    if report.get("failures"):
        return EXIT_VIOLATION
    if unknown_count(report):
        return EXIT_UNKNOWN
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qgal", description="Galois-theoretic checks over finite quandles, racks and groups.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", help="write a catalog of algebras up to isomorphism")
    g.add_argument("--variety", choices=("quandle", "rack", "group"), default="quandle")
    g.add_argument("--order-max", type=int, required=True)
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)

    c = sub.add_parser("check", help="run one check on .alg or cube.json files")
    c.add_argument("what", choices=CHECKS)
    c.add_argument("files", nargs="+")
    c.add_argument("--structure", choices=sorted(STRUCTURES))
    c.add_argument("--level", type=int, choices=(0, 1, 2))
    c.add_argument("--direction", type=int, default=1)
    c.add_argument("--bound", type=int, default=12)
    c.add_argument("--strategy", choices=("canonical", "search"),
                   help="for 'symmetric': test symmetric triviality instead of searching a witness")
    c.add_argument("--witness-out")
    c.set_defaults(func=cmd_check)

    r = sub.add_parser("reflect", help="reflect an algebra (pi0, ab) or an extension (F1)")
    r.add_argument("target", choices=("pi0", "ab", "F1"))
    r.add_argument("file")
    r.add_argument("--out")
    r.set_defaults(func=cmd_reflect)

    s = sub.add_parser("sweep", help="run a named property suite")
    s.add_argument("suite", choices=SUITES)
    s.add_argument("--structure", choices=sorted(STRUCTURES))
    s.add_argument("--level", type=int, choices=(0, 1, 2))
    s.add_argument("--order-max", type=int)
    s.add_argument("--dim", type=int)
    s.add_argument("--bound", type=int, default=12)
    s.add_argument("--out")
    s.set_defaults(func=cmd_sweep)

    p = sub.add_parser("report", help="render a sweep report as text")
    p.add_argument("file")
    p.set_defaults(func=cmd_report)
    return parser


def run(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.command == "gen":
            cap = MAX_ORDER[structure_for(args.variety).variety]
            if not 1 <= args.order_max <= cap:
                raise InputError(f"--order-max must be between 1 and {cap}")
        return args.func(args)
    except InputError as exc:
        print(f"qgal: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except PropertyViolation as exc:
        print(f"qgal: PROPERTY VIOLATION: {exc}", file=sys.stderr)
        return EXIT_VIOLATION


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
