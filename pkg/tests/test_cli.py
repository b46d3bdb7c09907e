import json

import pytest

from fkalg.cli import EXIT_CHECK, EXIT_OK, EXIT_USAGE, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def report(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


def test_dim_of_E3(capsys):
    code, r = report(capsys, "dim", "--family", "E", "--n", "3")
    assert code == EXIT_OK
    assert r["results"]["dim"] == 12 and r["results"]["hilbert_profile"] == [1, 3, 4, 3, 1]
    assert set(r) == {"schema", "command", "inputs", "results", "checks", "timing"}


@pytest.mark.parametrize("argv", [
    ["dim", "--n", "2", "--family", "E"],
    ["dim", "--n", "3"],  # D_n needs both parameters
    ["dim", "--n", "3", "--a1", "one", "--a2", "1"],
    ["ext", "--n", "3", "--from", "e", "--to", "(1 9)"],
    ["deform", "--n", "3"],
    ["nonsense"],
])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == EXIT_USAGE


def test_reports_are_deterministic(capsys):
    argv = ["dim", "--n", "3", "--a1", "1", "--a2", "-1"]
    a = report(capsys, *argv)[1]
    b = report(capsys, *argv)[1]
    a.pop("timing"), b.pop("timing")
    assert a == b
    assert a["inputs"]["a2"] == "-1"


def test_ext_between_sign_characters(capsys):
    code, r = report(capsys, "ext", "--n", "3", "--from", "e", "--to", "(1 3)")
    assert code == EXIT_OK and r["results"]["dim"] == 1
    code, r = report(capsys, "ext", "--n", "3", "--from", "e", "--to", "(1 2)")
    assert r["results"]["dim"] == 0


def test_ext_between_two_dim_simples(capsys):
    code, r = report(capsys, "ext", "--n", "4", "--a1", "1", "--a2", "1", "--from", "e", "--to", "s2")
    assert code == EXIT_OK and r["results"]["dim"] == 2


def test_quick_verification(capsys, cache_dir):
    code, r = report(capsys, "verify", "--suite", "quick", "--cache-dir", cache_dir)
    assert code == EXIT_OK
    assert r["checks"] and all(c["pass"] for c in r["checks"])


def test_text_output(capsys):
    code, out = run(capsys, "dim", "--family", "E", "--n", "3", "--emit", "text")
    assert code == EXIT_OK and out.startswith("dim: ok") and "dim: 12" in out


def test_corrupt_cache_exits_nonzero(capsys, tmp_path):
    argv = ["dim", "--n", "3", "--a1", "1", "--a2", "1", "--cache-dir", str(tmp_path)]
    assert run(capsys, *argv)[0] == EXIT_OK
    for p in tmp_path.glob("algebra-*.json"):
        p.write_text("{")
    assert run(capsys, *argv)[0] == EXIT_CHECK


def test_quiver_dot(capsys, cache_dir):
    code, out = run(capsys, "quiver", "--n", "4", "--a1", "1", "--a2", "1", "--emit", "dot",
                    "--cache-dir", cache_dir)
    assert code == EXIT_OK
    assert out.startswith("digraph") and out.count("->") == 18
