from __future__ import annotations

import io
import json
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest
from fractions import Fraction

from blockforest import cli, unlabeled
from blockforest.algebra import Series

SCHEMA = json.loads((Path(__file__).parents[1] / "schemas" / "output.schema.json").read_text())


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.main(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def rows(tsv: str):
    lines = tsv.split("\n")
    assert lines[-1] == ""
    return [line.split("\t") for line in lines[1:-1]]


def test_count():
    code, out, _ = run("count", "husimi", "4")
    assert code == 0 and rows(out) == [["husimi", "4", "29"]]
    assert rows(run("count", "husimi", "1")[1]) == [["husimi", "1", "1"]]


def test_count_by_distribution():
    code, out, _ = run("count", "cacti", "3", "--by-distribution")
    assert out.startswith("distribution\tcount\n")
    assert rows(out) == [["n_2=2", "3"], ["n_3=1", "1"]]


def test_unlabeled():
    _, out, _ = run("unlabeled", "triangular", "9")
    assert [r[2] for r in rows(out)] == ["1", "0", "1", "0", "1", "0", "2", "0", "4"]
    _, out, _ = run("unlabeled", "husimi", "6")
    assert [r[2] for r in rows(out)][:4] == ["1", "1", "2", "4"]
    assert rows(run("unlabeled", "oriented", "1")[1]) == [["1", "1", "1"]]
    assert run("unlabeled", "husimi", "--order", "4")[1] == run("unlabeled", "husimi", "4")[1]


def test_weighted():
    _, out, _ = run("unlabeled", "oriented", "4", "--weighted")
    assert ["4", "y2*y3", "4", "1"] in rows(out)
    code, _, err = run("unlabeled", "husimi", "4", "--weighted")
    assert code == 2 and "oriented" in err


def test_prufer():
    assert run("prufer", "encode", "3; {1,2},{2,3}")[1] == "lambda: 2; pi: {1}|{3}\n"
    assert run("prufer", "decode", "lambda: 2; pi: {1}|{3}")[1] == "3; {1,2},{2,3}\n"
    assert run("prufer", "encode", "3; {1,2,3}")[1] == "lambda: ; pi: {1,2,3}\n"
    code, _, err = run("prufer", "decode", "lambda: 2; pi: {1}|{3}\nlambda: 7; pi: {1}")
    assert code == 3 and "line 2" in err


def test_virial():
    code, out, _ = run("virial", "2", "--format", "json")
    rep = json.loads(out)
    assert code == 0 and rep["coefficients"][0]["virial"] == "0.5"
    rep = json.loads(run("virial", "2", "--alpha", "4pi", "--format", "json")[1])
    assert rep["coefficients"][0]["virial"] == "0.0625"
    rep = json.loads(run("virial", "3", "--format", "json")[1])
    assert rep["verification"]["verdict"] == "agree"
    assert float(rep["verification"]["max_residual"]) < 1e-12


def test_virial_refuses_above_limit():
    code, _, err = run("virial", "5", "--oracle-limit", "4")
    assert code == 3 and "refusing" in err


def test_oracle():
    _, out, _ = run("oracle", "husimi", "5", "--unlabeled", "--by-distribution")
    assert sum(int(r[1]) for r in rows(out)) == 9
    assert rows(run("oracle", "cacti", "4")[1]) == [["cacti", "4", "labeled", "31"]]
    assert run("oracle", "husimi", "3", "--rooted")[0] == 2


@pytest.mark.parametrize("argv", [
    ["count", "nope", "3"],
    ["count", "husimi", "0"],
    ["count", "husimi", "x"],
    ["virial", "1"],
    ["virial", "2", "--alpha", "-3"],
    ["unlabeled", "husimi", "4", "--order", "5"],
    [],
])
def test_usage_errors(argv):
    assert run(*argv)[0] == 2


@pytest.mark.parametrize("argv", [
    ["count", "oriented", "5", "--by-distribution"],
    ["unlabeled", "oriented", "5"],
    ["unlabeled", "oriented", "5", "--weighted"],
    ["prufer", "encode", "4; {1,2,3},{3,4}"],
    ["prufer", "decode", "lambda: 3; pi: {1,2}|{4}"],
    ["virial", "4"],
    ["oracle", "triangular", "7", "--unlabeled", "--rooted"],
    ["selftest"],
])
def test_json_schema_and_determinism(argv):
    first = run(*argv, "--format", "json")
    second = run(*argv, "--format", "json")
    assert first == second
    assert first[0] == 0
    jsonschema.validate(json.loads(first[1]), SCHEMA)
    assert run(*argv)[1] == run(*argv)[1]


def test_selftest_reports_named_failure(monkeypatch):
    good = unlabeled.husimi_rooted_recurrence

    def broken(N):
        s = list(good(N))
        s[5] += 1
        return Series(s, N)

    monkeypatch.setattr(unlabeled, "husimi_rooted_recurrence", broken)
    code, out, _ = run("selftest")
    assert code == 4
    failed = [r for r in rows(out) if r[1] == "FAIL"]
    assert failed[0][0] == "unlabeled-recurrence-vs-functional"
    assert "husimi" in failed[0][2] and "x^5" in failed[0][2]


def test_consistency_failure_exit_code(monkeypatch):
    good = unlabeled.triangular_rooted_recurrence
    monkeypatch.setattr(unlabeled, "triangular_rooted_recurrence",
                        lambda N: good(N) + Series([0, 0, 0, Fraction(1)], N))
    assert run("unlabeled", "triangular", "5")[0] == 4


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "blockforest", "count", "husimi", "5"],
                       capture_output=True, text=True, check=True)
    assert r.stdout == "species\tn\tcount\nhusimi\t5\t311\n"
