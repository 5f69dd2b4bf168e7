import pytest

from qgal.errors import InputError
from qgal.formats import dumps
from qgal.sweeps import SUITES, parallel_map, run_suite, thread_count, unknown_count


def _square(x):
    return x * x


def test_thread_count(monkeypatch):
    monkeypatch.setenv("QGAL_THREADS", "3")
    assert thread_count() == 3
    monkeypatch.setenv("QGAL_THREADS", "zero")
    with pytest.raises(InputError):
        thread_count()
    monkeypatch.setenv("QGAL_THREADS", "0")
    with pytest.raises(InputError):
        thread_count()
    monkeypatch.delenv("QGAL_THREADS")
    assert thread_count(5) == 5 and thread_count() >= 1


def test_parallel_map_keeps_order():
    items = list(range(20))
    assert parallel_map(_square, items, 1) == parallel_map(_square, items, 2) == [x * x for x in items]
    assert parallel_map(_square, [], 2) == []


@pytest.mark.parametrize("suite", [s for s in SUITES if s not in ("df-closure", "calculus-lemmas")])
def test_small_suites_pass(suite):
    rep = run_suite(suite, "quandle-pi0", order_max=3)
    assert rep["pass"] and rep["failures"] == 0
    assert unknown_count(rep) == 0


def test_report_parallel_independent():
    a = run_suite("quotient-stability", "quandle-pi0", order_max=3, workers=1)
    b = run_suite("quotient-stability", "quandle-pi0", order_max=3, workers=2)
    assert dumps(a) == dumps(b)


def test_bad_arguments():
    with pytest.raises(InputError):
        run_suite("nonsense")
    with pytest.raises(InputError):
        run_suite("birkhoff", "monoid-pi0")
    with pytest.raises(InputError):
        run_suite("birkhoff", "quandle-pi0", order_max=0)
    with pytest.raises(InputError):
        run_suite("main-theorem", "quandle-pi0", order_max=2, dim=3)
    with pytest.raises(InputError):
        run_suite("birkhoff", "group-ab", order_max=17)


def test_unknown_count():
    rep = {"results": {"a": {"counts": {"oracle-unknown": 2, "agree-yes": 4}}, "b": {"checks": {}}}}
    assert unknown_count(rep) == 2
