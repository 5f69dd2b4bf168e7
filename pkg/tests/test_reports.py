import pytest

from qgal.errors import InputError
from qgal.fixtures import R3, p
from qgal.algebra import to_terminal
from qgal.formats import dumps
from qgal.galois import structure_for
from qgal.reports import load_report, render_report
from qgal.symmetric import main_theorem_sweep


def _theorem_report():
    part = main_theorem_sweep(structure_for("quandle"), [p(), to_terminal(R3)], 1, bound=4)
    return {"suite": "main-theorem", "results": {"quandle-pi0": part}, "failures": 0, "pass": True}


def test_empty_report():
    assert render_report({}) == "suite: ?\n0 instances\nall passed\n"
    assert "0 instances" in render_report("{}")


def test_theorem_table():
    text = render_report(_theorem_report())
    lines = text.splitlines()
    assert lines[0] == "suite: main-theorem"
    assert any(line.split() == ["agree-yes", "1"] for line in lines)
    assert any(line.split() == ["agree-no", "1"] for line in lines)
    assert "FAIL" not in text and lines[-2:] == ["2 instances", "all passed"]


def test_hard_failure_is_highlighted():
    report = _theorem_report()
    inst = report["results"]["quandle-pi0"]["instances"][1]
    inst["class"] = "witness-yes-oracle-no"
    counts = report["results"]["quandle-pi0"]["counts"]
    counts["agree-no"] -= 1
    counts["witness-yes-oracle-no"] += 1
    text = render_report(report)
    assert "<-- FAIL" in text and "! instance 1:" in text
    assert text.rstrip().endswith("!!! 1 FAILURE(S) !!!")


def test_check_parts():
    report = {"suite": "birkhoff", "results": {"group-ab": {"checks": {"square": [5, 0]}},
                                               "quandle-pi0": {"checks": {"square": [7, 1]},
                                                               "failures": [{"check": "square", "values": [0]}]}}}
    text = render_report(report)
    assert "12 instances" in text and '! {"check": "square", "values": [0]}' in text
    assert text.index("[group-ab]") < text.index("[quandle-pi0]")


def test_rendering_is_pure():
    report = _theorem_report()
    assert render_report(report) == render_report(dumps(report))


def test_malformed_reports():
    for text in ("{oops", "[1, 2]", '"text"'):
        with pytest.raises(InputError):
            load_report(text)
    with pytest.raises(InputError):
        render_report({"results": {"x": {"checks": {"a": 3}}}})
    with pytest.raises(InputError):
        render_report({"results": []})
