import io
import json
from pathlib import Path

import jsonschema
import numpy as np
import pytest

from orbitmult.cli import main
from orbitmult.orbit_space import LinearForm

SCHEMAS = Path(__file__).resolve().parents[1] / "docs" / "schema"


def schema(name):
    return json.loads((SCHEMAS / f"{name}.schema.json").read_text())


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_cg():
    code, text = run("cg", "--lambda", "3,1", "--alpha", "2", "--mu", "4,2")
    assert code == 0
    data = json.loads(text)
    jsonschema.validate(data, schema("cg_result"))
    assert data["n"] == 1 and data["c"] == ["1/2", "3/2"]


def test_cg_rational_alpha_and_negative_weights():
    code, text = run("cg", "--lambda", "-1,-1", "--alpha", "1/3", "--mu", "0,-1")
    assert code == 0
    data = json.loads(text)
    jsonschema.validate(data, schema("cg_result"))
    assert data["c"] == ["6"] and data["path"] == "Theorem4Scalar"
    code, text = run("cg", "--lambda=-1,-1", "--alpha=-2", "--mu=-1,-2")
    assert json.loads(text)["n"] == 1


def test_branch():
    code, text = run("branch", "--lambda", "3,1", "--alpha-sign", "+", "--mu", "3,0")
    data = json.loads(text)
    jsonschema.validate(data, schema("branch"))
    assert code == 0 and data == {"m": 1, "k": 1}
    code, text = run("branch", "--lambda", "1,0", "--alpha-sign", "-", "--mu", "2,1", "--convention", "conjugate")
    assert json.loads(text) == {"m": 1, "k": 2}


def test_decompose():
    code, text = run("decompose", "--lambda", "1,0", "--k", "1")
    assert code == 0 and text.strip() == "(1,-1) (0,0)"


def test_compare_converse_failure_row():
    code, text = run("compare", "--lambda", "-1,-1", "--alpha", "1", "--mu-box", "-2:2")
    assert code == 0
    lines = text.splitlines()
    assert lines[0] == "mu,n,m,agree,paper_form_flag"
    assert '"0,-1",1,0,true,false' in lines


def test_compare_flags_two_block_disagreement():
    code, text = run("compare", "--lambda", "0,0,0", "--alpha", "2", "--mu-box", "-6:6", "--format", "json")
    rows = json.loads(text)
    jsonschema.validate(rows, schema("compare"))
    by_mu = {tuple(r["mu"]): r for r in rows}
    assert by_mu[(5, 5, 0)]["paper_form_flag"] is True and by_mu[(5, 5, 0)]["n"] == 0
    assert by_mu[(5, 0, 0)]["paper_form_flag"] is False and by_mu[(5, 0, 0)]["n"] == 1
    assert by_mu[(0, 0, 0)]["paper_form_flag"] is None


def test_compare_k_max():
    code, text = run("compare", "--lambda", "2,0", "--alpha", "-1", "--k-max", "2", "--format", "json")
    rows = json.loads(text)
    assert [tuple(r["mu"]) for r in rows] == [(2, 0), (2, -1), (1, 0), (2, -2), (1, -1), (0, 0)]
    assert all(r["m"] == 1 and r["n"] == 1 for r in rows)


def test_verify_exit_codes(monkeypatch):
    code, text = run("verify", "--lambda", "3,1", "--alpha", "2", "--mu", "4,2", "--budget", "20000")
    data = json.loads(text)
    jsonschema.validate(data, schema("verify"))
    assert code == 0 and data["witness_confirmed"] is True and data["search_found"]
    code, text = run("verify", "--lambda", "0,0,0", "--alpha", "2", "--mu", "5,5,0", "--budget", "20000")
    assert code == 0 and json.loads(text)["search_found"] is False
    # a budget of one sample cannot reach c = (1/2, 3/2): the oracle reports a mismatch
    code, _ = run("verify", "--lambda", "3,1", "--alpha", "2", "--mu", "4,2", "--budget", "1")
    assert code == 2
    monkeypatch.setenv("ORBITMULT_SEED", "99")
    code, text = run("verify", "--lambda", "3,1", "--alpha", "2", "--mu", "4,2", "--seed", "5")
    assert json.loads(text)["seed"] == 99


def test_table():
    code, text = run("table", "--lambda", "1,0", "--alpha", "3", "--k-max", "1")
    data = json.loads(text)
    jsonschema.validate(data, schema("branching_table"))
    assert [[c["nu"] for c in r["constituents"]] for r in data["rows"]] == [[[1, 0]], [[1, -1], [0, 0]]]
    code, text = run("table", "--lambda", "1,0", "--alpha", "3", "--k-max", "1", "--format", "csv")
    assert text.splitlines()[0] == "k,nu,dim"


@pytest.mark.parametrize(
    "argv",
    [
        ("cg", "--lambda", "1,2", "--alpha", "1", "--mu", "1,0"),
        ("cg", "--lambda", "1,0", "--alpha", "0", "--mu", "1,0"),
        ("cg", "--lambda", "1,0", "--alpha", "x", "--mu", "1,0"),
        ("cg", "--lambda", "1,0", "--alpha", "1", "--mu", "1,0,0"),
        ("compare", "--lambda", "1,0", "--alpha", "1", "--mu-box", "3:1"),
        ("decompose", "--lambda", "1,0", "--k", "-1"),
        ("nonsense",),
    ],
)
def test_usage_errors(argv):
    code, _ = run(*argv)
    assert code == 1


def test_deterministic_output():
    args = ("compare", "--lambda", "2,1,0", "--alpha", "-1", "--mu-box", "-1:2")
    assert run(*args) == run(*args)


def test_n_equals_one_warns(capsys):
    code, text = run("cg", "--lambda", "2", "--alpha", "1", "--mu", "5")
    assert code == 0 and json.loads(text)["c"] == ["6"]
    assert "warning" in capsys.readouterr().err


def test_linear_form_schema():
    phi = LinearForm(np.array([[1.0, 1j], [-1j, 0.0]]), [0.5, 1j], 2.0)
    jsonschema.validate(phi.to_json(), schema("linear_form"))
