import json
import os
import pathlib

import jsonschema
import pytest

import hnn_lab

SCHEMAS = pathlib.Path(
    os.environ.get("HNNLAB_SCHEMA_DIR", pathlib.Path(__file__).resolve().parents[2] / "schemas")
)


def schema(name):
    return json.loads((SCHEMAS / f"{name}.schema.json").read_text())


def test_verify_corrected_and_printed():
    rows = hnn_lab.verify()
    assert len(rows) == 27
    assert all(r["pass"] for r in rows)
    printed = hnn_lab.verify(as_printed=True)
    assert [r["number"] for r in printed if not r["pass"]] == [11]


def test_britton_and_word_problem():
    form, t_count = hnn_lab.britton("Tdt")
    assert (form, t_count) == ("DaacBC", 0)
    assert hnn_lab.britton("Tat")[1] == 2
    assert hnn_lab.is_trivial("tT")
    assert not hnn_lab.is_trivial("t")


def test_group_invariants():
    assert hnn_lab.indices() == (12, 12)
    assert hnn_lab.tree_degree() == 24
    assert hnn_lab.abelianize() == (1, ["21"])
    assert hnn_lab.abelianize(as_printed=True) == (1, [])
    assert hnn_lab.classify("t") == "elliptic, infinite order"


def test_errors_surface_as_exceptions():
    with pytest.raises(hnn_lab.HnnLabError):
        hnn_lab.britton("tq")


def test_run_results_match_schemas():
    code, _, result = hnn_lab.run("verify")
    assert code == 0
    jsonschema.validate(result, schema("verify"))

    code, _, result = hnn_lab.run("--seed", 3, "--samples", 20, "verify", "--mutate")
    assert code == 0
    assert result["mutations"]["caught"] == 20
    jsonschema.validate(result, schema("verify"))

    code, _, result = hnn_lab.run("fsa-check", "--radius", 4)
    assert code == 0
    jsonschema.validate(result, schema("fsa-check"))
    assert result["finite_to_one"]["bound"] == 1

    code, _, result = hnn_lab.run("fsa-check", "--automaton", "zsquared-adversarial", "--radius", 8)
    assert code == 1
    jsonschema.validate(result, schema("fsa-check"))
    assert result["fellow_traveller"]["violation"]["distance"] > result["cap"]

    code, _, result = hnn_lab.run("britton", "--word", "tq")
    assert code == 2
    jsonschema.validate(result, schema("error"))


def test_automaton_file_round_trip(tmp_path):
    automaton = {
        "alphabet": ["x", "X", "y", "Y"],
        "states": ["start", "xs", "Xs", "ys", "Ys"],
        "initial": "start",
        "accepting": ["start", "xs", "Xs", "ys", "Ys"],
        "transitions": [
            ["start", "x", "xs"], ["xs", "x", "xs"],
            ["start", "X", "Xs"], ["Xs", "X", "Xs"],
            ["start", "y", "ys"], ["xs", "y", "ys"], ["Xs", "y", "ys"], ["ys", "y", "ys"],
            ["start", "Y", "Ys"], ["xs", "Y", "Ys"], ["Xs", "Y", "Ys"], ["Ys", "Y", "Ys"],
        ],
    }
    jsonschema.validate(automaton, schema("automaton"))
    path = tmp_path / "nf.json"
    path.write_text(json.dumps(automaton))
    code, _, from_file = hnn_lab.run("fsa-check", "--automaton", path, "--radius", 5)
    _, _, builtin = hnn_lab.run("fsa-check", "--automaton", "zsquared", "--radius", 5)
    assert code == 0
    assert from_file["fellow_traveller"]["zeta"] == builtin["fellow_traveller"]["zeta"]
    assert from_file["finite_to_one"] == builtin["finite_to_one"]
