"""The eleven acceptance criteria, one test each.

Every test prints a single PASS/FAIL line for its criterion; the same lines
are collected into the terminal summary. Run directly with
``python tests/test_acceptance.py`` to get just the eleven lines.
"""

import sys

import pytest

from fkalg import suite

try:
    from conftest import ACCEPTANCE
except ImportError:  # run as a script
    ACCEPTANCE = {}


def _report(res) -> str:
    line = f"criterion {res.number:2d} {'PASS' if res.passed else 'FAIL'}  {res.title} ({res.seconds:.1f} s)"
    ACCEPTANCE[res.number] = (res.title, res.passed)
    print(line)
    for c in res.checks:
        if not c.passed:
            print(f"    failed: {c.name}: expected {c.expected!r}, got {c.got!r}")
    return line


def _run(ws, number):
    """Each criterion runs once per session; later requests reuse the result."""
    fresh = ("criterion", number) not in ws._memo
    res = ws._get(("criterion", number), lambda: suite.run(ws, "paper", "all", only=[number])[0])
    if fresh:
        _report(res)
    return res


def _assert(res):
    failed = [c.name for c in res.checks if not c.passed]
    assert not failed, failed


@pytest.mark.parametrize("number", range(1, 12), ids=[fn.__name__.removeprefix("crit_") for fn in suite.FULL])
def test_criterion(ws, number):
    res = _run(ws, number)
    assert res.checks, "a criterion must check something"
    _assert(res)


def test_semisimplicity_exploration_is_reported(ws):
    res = _run(ws, 3)
    for a in ("(0, 1)", "(1, 3)"):
        info = res.results[f"D_4{a}"]
        assert info["dim"] == 576
        assert info["radical dim"] >= 0


def test_deformation_constants_are_logged(ws):
    res = _run(ws, 10)
    assert {"q1", "q2"} <= set(res.results)
    assert res.results["deformation"]["log"]


if __name__ == "__main__":
    from fkalg.pipeline import Cache
    w = suite.Workspace(Cache.from_env())
    ok = True
    for r in suite.run(w, "paper"):
        _report(r)
        ok &= r.passed
    sys.exit(0 if ok else 1)
