import json

import pytest

from macdonald.cli import main
from macdonald.core import make_params, parse_element


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--json")
    return code, json.loads(out), err


def test_info(capsys):
    code, rep, _ = run_json(capsys, "info", "--beta", "4")
    assert code == 0
    assert rep["beta"] == "4" and rep["command"] == "info"
    assert rep["results"]["torsion_order"] == "27"
    assert rep["results"]["split"] is True
    assert rep["results"]["center_generators"] == ["A^3", "B^3"]
    assert rep["verdicts"][0]["pass"] is True


def test_mul_and_round_trip(capsys):
    code, out, _ = run(capsys, "mul", "--beta", "4", "B", "A")
    assert code == 0 and out.strip() == "product: A*C^2*B^4"
    _, rep, _ = run_json(capsys, "mul", "--beta", "-3", "A^-2*C*B^5", "B^3*A*C")
    p = make_params(-3)
    expected = parse_element(p, "A^-2*C*B^5") * parse_element(p, "B^3*A*C")
    assert parse_element(p, rep["results"]["product"]) == expected


def test_ord_and_conj(capsys):
    assert run(capsys, "ord", "--beta", "7", "C")[1].splitlines()[1] == "order: 12"
    assert "infinite" in run(capsys, "ord", "--beta", "4", "A*B")[1]
    assert run(capsys, "conj", "--beta", "4", "B", "A")[1].strip() == "conjugate: C^2*B^4"


def test_aut(capsys):
    code, rep, _ = run_json(capsys, "aut", "--beta", "4", "--order")
    assert code == 0 and rep["results"]["order"] == "162"
    _, rep, _ = run_json(capsys, "aut", "--beta", "3", "--list")
    assert len(rep["results"]["automorphisms"]) == 32
    _, rep, _ = run_json(capsys, "aut", "--beta", "4", "--matrix", "A*B^3", "B")
    assert rep["results"]["matrix"][0] == ["1", "0", "0", "1"]
    _, rep, _ = run_json(capsys, "aut", "--beta", "5", "--decompose", "A^-1", "B^-1")
    assert rep["results"]["delta1_exponent"] == "1" and rep["results"]["inner_by"] == "1"


def test_iso(capsys):
    code, rep, _ = run_json(capsys, "iso", "--beta", "4", "--gamma", "-2")
    assert code == 0 and rep["results"]["isomorphic"] is True
    assert rep["results"]["forward"] == {"A": "A^-1", "B": "B"}
    _, rep, _ = run_json(capsys, "iso", "--beta", "4", "--gamma", "5")
    assert rep["results"]["isomorphic"] is False
    _, rep, _ = run_json(capsys, "iso", "--beta", "4", "--gamma", "7", "-p", "3")
    assert rep["results"]["i"] == "2"


def test_lgroup(capsys):
    code, rep, _ = run_json(capsys, "lgroup", "--beta", "6", "--aut-order")
    assert code == 0 and rep["results"]["aut_order"] == "12500"
    _, rep, _ = run_json(capsys, "lgroup", "--beta", "6", "--omega", "A", "A*B")
    assert rep["results"]["omega"] == [["1", "0"], ["1", "1"]]
    code, _, err = run(capsys, "lgroup", "--beta", "4")
    assert code == 2 and "gcd" in err


@pytest.mark.parametrize("suite", ["torsion", "center", "aut", "lambda", "iso"])
def test_verify_suites_pass(capsys, suite):
    code, rep, _ = run_json(capsys, "verify", "--beta", "4", "--suite", suite)
    assert code == 0
    assert rep["verdicts"] and all(v["pass"] for v in rep["verdicts"])
    assert all(set(v) == {"locus", "expected", "computed", "pass"} for v in rep["verdicts"])


def test_verify_all(capsys):
    code, rep, _ = run_json(capsys, "verify", "--beta", "6", "--suite", "all")
    assert code == 0 and rep["results"]["skipped"] == {}
    code, rep, _ = run_json(capsys, "verify", "--beta", "3", "--suite", "all")
    assert code == 0 and "lgroup" in rep["results"]["skipped"]


def test_verify_inapplicable_suite_is_usage_error(capsys):
    code, _, err = run(capsys, "verify", "--beta", "4", "--suite", "lgroup")
    assert code == 2 and "does not apply" in err


def test_failed_verdict_exits_one(capsys, monkeypatch):
    from macdonald import cli
    from macdonald.verify import Verdict

    monkeypatch.setattr(cli, "run_suite", lambda beta, suite: ([Verdict("some locus", "1", "2", False)], {}))
    code, _, err = run(capsys, "verify", "--beta", "4")
    assert code == 1 and "some locus" in err


def test_export(capsys):
    code, out, _ = run(capsys, "export", "--beta", "6", "--format", "gap")
    assert code == 0 and "T := F / [" in out and "L := F / [" in out
    code, rep, _ = run_json(capsys, "export", "--beta", "4", "--format", "json")
    assert rep["results"]["torsion_presentation"]["relators"] == ["B^9", "C^3", "C^-1*B*C*B^-7"]
    assert "l_presentation" not in rep["results"]


def test_big_integers_are_strings(capsys):
    beta = str(2**64 + 5)
    _, rep, _ = run_json(capsys, "mul", "--beta", beta, "B^-1", "A")
    assert rep["beta"] == beta
    assert isinstance(rep["results"]["product"], str)


@pytest.mark.parametrize("argv", [
    ["info", "--beta", "2"],
    ["info", "--beta", "1"],
    ["mul", "--beta", "4", "B", "X"],
    ["aut", "--beta", "4", "--matrix", "A*B", "B"],
])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_argparse_errors_exit_two(capsys):
    with pytest.raises(SystemExit) as info:
        main(["mul", "--beta", "4"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        main(["nonsense"])
    assert info.value.code == 2
