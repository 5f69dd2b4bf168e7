"""Plain-text rendering of sweep reports.

Rendering is a pure function of the JSON, so two equal reports always
print the same text.
"""
from __future__ import annotations

import json

from .errors import InputError

_HARD = ("witness-yes-oracle-no", "oracle-yes-bound-exhausted")


def load_report(text: str) -> dict:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed report JSON: {exc}") from None
    if not isinstance(obj, dict):
        raise InputError("a report is a JSON object")
    return obj


def _theorem_lines(name: str, part: dict) -> tuple[list[str], int, int]:
    counts = part.get("counts", {})
    if not isinstance(counts, dict):
        raise InputError(f"{name}: counts must be an object")
    total = sum(counts.values())
    lines = [f"[{name}] main theorem, dim {part.get('dim', '?')}, bound {part.get('bound', '?')}"]
    width = max([len(k) for k in counts] + [5])
    for cls in sorted(counts):
        mark = "  <-- FAIL" if cls in _HARD and counts[cls] else ""
        lines.append(f"  {cls:<{width}}  {counts[cls]:>6}{mark}")
    instances = part.get("instances", [])
    bad = [r for r in instances if r.get("class") in _HARD]
    for r in bad:
        lines.append(f"  ! instance {r.get('index')}: class {r['class']}, sizes {r.get('sizes')}, "
                     f"oracle {r.get('oracle')}, witness {r.get('witness')}")
    return lines, total, len(bad) if instances else sum(counts.get(c, 0) for c in _HARD)


def _check_lines(name: str, part: dict) -> tuple[list[str], int, int]:
    checks = part.get("checks", {})
    if not isinstance(checks, dict):
        raise InputError(f"{name}: checks must be an object")
    lines = [f"[{name}]"]
    total = failed = 0
    width = max([len(k) for k in checks] + [5])
    for check in sorted(checks):
        try:
            n, bad = checks[check]
        except (TypeError, ValueError):
            raise InputError(f"{name}/{check}: expected [count, failures]") from None
        total += n
        failed += bad
        mark = "  <-- FAIL" if bad else ""
        lines.append(f"  {check:<{width}}  {n:>6} checked  {bad:>4} failed{mark}")
    for f in part.get("failures", []):
        lines.append("  ! " + json.dumps(f, sort_keys=True))
    return lines, total, failed


def render_report(report: dict | str) -> str:
    """Counts per verdict class or check, with failing instances inline."""
    if isinstance(report, str):
        report = load_report(report)
    results = report.get("results", {})
    if not isinstance(results, dict):
        raise InputError("report results must be an object")
    out = [f"suite: {report.get('suite', '?')}"]
    total = failed = 0
    for name in sorted(results):
        part = results[name]
        if not isinstance(part, dict):
            raise InputError(f"result {name!r} must be an object")
        lines, n, bad = (_theorem_lines if "counts" in part else _check_lines)(name, part)
        out.extend(lines)
        total += n
        failed += bad
    out.append(f"{total} instances")
    if failed:
        out.append(f"!!! {failed} FAILURE(S) !!!")
    else:
        out.append("all passed")
    return "\n".join(out) + "\n"
