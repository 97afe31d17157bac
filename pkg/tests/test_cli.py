"""Command-line front end and JSON specifications."""

import json
from fractions import Fraction

import pytest

from levelmeasure.cli import DEMOS, EXIT_INPUT, EXIT_INVALID, EXIT_OK, expected_output, main
from levelmeasure.glm import example_step_data
from levelmeasure.measure import Paving
from levelmeasure.specs import (
    SpecError,
    dump_number,
    loads,
    measure_to_json,
    parse_cao,
    parse_function,
    parse_measure,
    parse_paving,
    paving_to_json,
    parse_semicopula,
)
from levelmeasure.stepfun import StepFunction

F = Fraction


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def ex43c_files(tmp_path):
    cao, mu, f, paving = example_step_data()
    m = tmp_path / "mu.json"
    m.write_text(json.dumps(measure_to_json(mu)))
    p = tmp_path / "paving.json"
    p.write_text(json.dumps(paving_to_json(paving)))
    return str(m), str(p)


# --- demos ---------------------------------------------------------------------------

@pytest.mark.parametrize("name", sorted(DEMOS))
def test_demo_matches_stored_output(capsys, name):
    code, out, _ = run(capsys, "demo", name)
    assert code == EXIT_OK
    assert expected_output(name) in out and "matches stored output" in out


def test_demo_all(capsys):
    code, out, _ = run(capsys, "demo", "all")
    assert code == EXIT_OK
    assert out.count("matches stored output") == len(DEMOS)


def test_demo_reports_a_mismatch(capsys, monkeypatch):
    monkeypatch.setitem(DEMOS, "ex321", lambda: "level variant: 0.4\nsurvival variant: 0")
    code, out, _ = run(capsys, "demo", "ex321")
    assert code == EXIT_INVALID and "MISMATCH" in out and "+level variant: 0.4" in out


# --- glm ---------------------------------------------------------------------------

def test_glm_step_function_as_json(capsys, ex43c_files):
    mu, paving = ex43c_files
    code, out, _ = run(capsys, "glm", "--measure", mu, "--paving", paving, "--cao", '{"kind": "sup"}',
                       "--function", "0.25,0.75,1", "--format", "json")
    assert code == EXIT_OK
    step = StepFunction.from_json(out)
    assert step.breakpoints == (F(1, 4), 1) and step.values == (1, F(1, 2), 0)


def test_glm_pointwise_values(capsys, ex43c_files):
    mu, paving = ex43c_files
    code, out, _ = run(capsys, "glm", "--measure", mu, "--paving", paving, "--cao", '{"kind": "sup"}',
                       "--function", "0.25,0.75,1", "--at", "0", "1/2", "5", "--format", "csv")
    assert code == EXIT_OK
    assert out.splitlines() == ["a,glm", "0,1", "0.5,0.5", "5,0"]


def test_glm_level_and_survival_kinds(capsys):
    spec = '{"kind": "counting", "n": 2}'
    code, out, _ = run(capsys, "glm", "--kind", "level", "--measure", spec, "--function", "1,2")
    assert code == EXIT_OK and out.splitlines() == ["[0, 1] -> 2", "(1, 2] -> 1", "(2, inf) -> 0"]
    code, out, _ = run(capsys, "glm", "--kind", "survival", "--measure", spec, "--function", "1,2",
                       "--at", "1", "--format", "csv")
    assert code == EXIT_OK and out.splitlines() == ["a,survival", "1,1"]


def test_glm_with_parametric_family(capsys):
    cao = '{"kind": "psi_family", "params": {"phi": "linear:1", "p": 1}}'
    args = ("glm", "--measure", '{"kind": "uniform", "n": 2}', "--function", "1,1", "--cao", cao)
    code, _, err = run(capsys, *args)
    assert code == EXIT_INPUT and "--at" in err
    code, out, _ = run(capsys, *args, "--at", "1", "--format", "json")
    assert code == EXIT_OK and json.loads(out) == [{"t": 1, "glm": 1}]


def test_dimension_mismatch_is_an_input_error(capsys):
    code, _, err = run(capsys, "glm", "--measure", '{"kind": "counting", "n": 3}', "--function", "1,2")
    assert code == EXIT_INPUT and "ground set has 3" in err


def test_negative_query_point_is_rejected(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["glm", "--measure", '{"kind": "counting", "n": 1}', "--function", "1", "--at", "-1"])
    assert exc.value.code == 2
    capsys.readouterr()


# --- integrate -----------------------------------------------------------------------

@pytest.mark.parametrize("variant, expected", [("level", "0.5"), ("survival", "0")])
def test_integrate_seminormed_jump_example(capsys, variant, expected):
    mu = '{"kind": "table", "n": 3, "values": [0, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5]}'
    code, out, _ = run(capsys, "integrate", "seminormed", "--semicopula", "jump_example", "--measure", mu,
                       "--function", "0.5,0,0", "--variant", variant, "--format", "csv")
    assert code == EXIT_OK
    assert out.splitlines()[1] == f"seminormed,{variant},{expected}"


def test_integrate_choquet_of_additive_measure_is_mean(capsys):
    code, out, _ = run(capsys, "integrate", "choquet", "--measure", '{"kind": "uniform", "n": 3}',
                       "--function", "0.25,0.75,1", "--format", "json")
    assert code == EXIT_OK and json.loads(out)[0]["value"] == "2/3"


def test_integrate_functionals(capsys):
    args = ("--measure", '{"kind": "uniform", "n": 2}', "--function", "1,2", "--format", "csv")
    _, low, _ = run(capsys, "integrate", "gsf_functional", "--cao", '{"kind": "sup"}', *args)
    _, mid, _ = run(capsys, "integrate", "choquet", *args)
    _, high, _ = run(capsys, "integrate", "glm_functional", "--cao", '{"kind": "sup"}', *args)
    value = lambda out: F(out.splitlines()[1].split(",")[2])  # noqa: E731
    assert value(low) <= value(mid) == F(3, 2) <= value(high)


# --- check ---------------------------------------------------------------------------

def test_check_measure(capsys):
    code, out, _ = run(capsys, "check", "measure", "--spec", '{"kind": "counting", "n": 2}')
    assert code == EXIT_OK and out.startswith("pass")
    code, out, _ = run(capsys, "check", "measure", "--spec", '{"values": [0, 2, 1, 1]}')
    assert code == EXIT_INVALID and "FAIL" in out and "0b01" in out


def test_check_cao(capsys):
    code, out, _ = run(capsys, "check", "cao", "--spec", '{"kind": "sum"}', "--n", "3", "--sandwich")
    assert code == EXIT_INVALID  # sum passes C1/C2 but is not a mean
    lines = out.splitlines()
    assert len(lines) == 2 and "FAIL" in lines[1] and '"f"' in lines[1]
    code, out, _ = run(capsys, "check", "cao", "--spec", '{"kind": "sum"}', "--n", "3")
    assert code == EXIT_OK


def test_check_pfca_runs_tagged_properties(capsys):
    spec = '{"kind": "psi_family", "params": {"phi": "linear:1", "p": 2}}'
    code, out, _ = run(capsys, "check", "pfca", "--spec", spec, "--n", "2", "--trials", "30")
    assert code == EXIT_OK and len(out.splitlines()) >= 2
    code, _, err = run(capsys, "check", "cao", "--spec", spec, "--n", "2")
    assert code == EXIT_INPUT and "check pfca" in err


def test_check_semicopula(capsys):
    code, out, _ = run(capsys, "check", "semicopula", "--spec", "jump_example")
    assert code == EXIT_OK and "left limits" in out
    code, _, err = run(capsys, "check", "semicopula", "--spec", "max")
    assert code == EXIT_INPUT


# --- indices -----------------------------------------------------------------------

def test_indices_table(capsys, tmp_path):
    path = tmp_path / "records.json"
    path.write_text(json.dumps({"records": [{"name": "A", "papers": [5, 4, 3, 2, 1]},
                                            {"name": "B", "papers": []}]}))
    code, out, _ = run(capsys, "indices", "--records", str(path), "--index", "h,g,f", "--verify",
                       "--format", "csv")
    assert code == EXIT_OK
    assert out.splitlines() == ["record,papers,h,g,f", "A,5,3,3,3", "B,0,0,0,0"]


def test_indices_strict_rejects_unsorted(capsys, tmp_path):
    path = tmp_path / "records.csv"
    path.write_text("1\n3\n2\n")
    code, out, _ = run(capsys, "indices", "--records", str(path), "--index", "h", "--format", "csv")
    assert code == EXIT_OK and out.splitlines()[1] == "1,3,2"
    code, _, err = run(capsys, "indices", "--records", str(path), "--strict")
    assert code == EXIT_INPUT and "nonincreasing" in err


def test_indices_input_errors(capsys, tmp_path):
    code, _, err = run(capsys, "indices", "--records", str(tmp_path / "missing.csv"))
    assert code == EXIT_INPUT
    path = tmp_path / "r.csv"
    path.write_text("5\n")
    code, _, err = run(capsys, "indices", "--records", str(path), "--index", "zeta")
    assert code == EXIT_INPUT and "unknown index" in err


# --- specs ---------------------------------------------------------------------------

def test_json_floats_are_exact_decimals():
    assert loads("[0.1, 2.0]") == [F(1, 10), 2]


def test_measure_spec_kinds_and_round_trip():
    for spec in ({"kind": "counting", "n": 3}, {"kind": "uniform", "n": 2}, {"kind": "additive", "weights": [1, 2]},
                 {"kind": "possibility", "pi": [1, 0.5]}, {"kind": "necessity", "pi": [1, 0.5]},
                 {"kind": "indicator", "n": 2}):
        mu = parse_measure(spec)
        again = parse_measure(json.loads(json.dumps(measure_to_json(mu))))
        assert again.values == mu.values
    with pytest.raises(SpecError):
        parse_measure({"kind": "gaussian"})
    with pytest.raises(SpecError):
        parse_measure({"kind": "counting"})
    with pytest.raises(SpecError, match="no such file"):
        parse_measure("missing.json")


def test_paving_spec_round_trip():
    p = Paving.of(3, [1, 6])
    assert parse_paving(paving_to_json(p), 3) == p
    assert parse_paving(["0b001"], 3) == Paving.of(3, [1])
    assert parse_paving({"kind": "power_set"}, 2).is_power_set()


def test_cao_specs():
    mu = parse_measure({"kind": "counting", "n": 2})
    assert parse_cao({"kind": "sum"})((1, 2), 0b11) == 3
    assert parse_cao({"kind": "sup", "empty": "zero"}).empty == 0
    assert parse_cao({"kind": "ess_inf"}, mu)((1, 2), 0b11) == 1
    wrapped = parse_cao({"kind": "scaled", "params": {"inner": {"kind": "sum"}, "lam": 2}})
    assert wrapped((1, 2), 0b11) == 6
    assert parse_cao({"kind": "mean", "params": {"weights": [1, 3]}})((0, 4), 0b11) == 3
    with pytest.raises(SpecError):
        parse_cao({"kind": "ess_inf"})
    with pytest.raises(SpecError):
        parse_cao({"kind": "sum", "empty": "one"})
    with pytest.raises(SpecError):
        parse_cao({"params": {}})


def test_function_and_semicopula_specs(tmp_path):
    assert parse_function("1/2, 0.25; 3") == (F(1, 2), F(1, 4), 3)
    assert parse_function("[1, 0.5]") == (1, F(1, 2))
    path = tmp_path / "f.txt"
    path.write_text("1,2")
    assert parse_function(str(path), 2) == (1, 2)
    for bad in ("1,-1", "1,inf", "1,x"):
        with pytest.raises(SpecError):
            parse_function(bad)
    assert parse_semicopula('{"kind": "prod"}').name == "prod"
    with pytest.raises(SpecError):
        parse_semicopula('{"kind": "max"}')


def test_dump_number():
    assert dump_number(F(1, 3)) == "1/3" and dump_number(F(4, 2)) == 2
    assert dump_number(float("inf")) == "inf" and dump_number(5) == 5
