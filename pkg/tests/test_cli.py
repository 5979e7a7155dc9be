"""Command line interface."""

import json

from click.testing import CliRunner

from cuntzcar.cli import main


def run(*args):
    return CliRunner().invoke(main, list(args))


def test_necklace():
    out = run("necklace", "--n", "7")
    assert out.exit_code == 0 and out.output.strip() == "18"


def test_branch():
    out = run("branch", "--p", "2")
    assert out.exit_code == 0
    assert out.output.splitlines()[0] == "B_2 = 3"


def test_normal_form():
    assert run("normal-form", "s[1;1] + s[2;2]").output.strip() == "I"
    assert run("normal-form", "a1 a2*").output.strip() == "-a2* a1"


def test_normal_form_syntax_error():
    out = run("normal-form", "(a1")
    assert out.exit_code == 2


def test_restrict():
    assert run("restrict", "--endo", "phi[2,3]", "--n", "3").output.strip() == "K1 a4"
    assert run("restrict", "--endo", "hat_phi(2)", "--n", "2", "--closed").output.strip() == "a2*"


def test_restrict_unknown_name():
    assert run("restrict", "--endo", "nope", "--n", "1").exit_code == 2


def test_state(tmp_path):
    path = tmp_path / "state.json"
    out = run("state", "--lambda", "0.25", "--modes", "2", "--expr", "a1* a1 a2* a2", "--json", str(path))
    assert out.exit_code == 0
    assert "omega(a1* a1) = 0.25" in out.output
    rows = json.loads(path.read_text())["rows"]
    assert float(rows[-1]["value"]) == 0.0625


def test_state_needs_input():
    assert run("state").exit_code == 2
    assert run("state", "--lambda", "0.2", "--beta", "1").exit_code == 2


def test_npoint():
    out = run("npoint", "--example", "1", "--ops", "a2@0.3 a2*@0.9")
    assert out.exit_code == 0
    assert abs(float(out.output) - 0.8253356149096783) < 1e-12


def test_npoint_bad_ops():
    assert run("npoint", "--example", "1", "--ops", "b2@0.3").exit_code == 2


def test_suite_command(tmp_path):
    js, cs = tmp_path / "r.json", tmp_path / "r.csv"
    out = run("suite", "branching", "--p", "3", "--json", str(js), "--csv", str(cs))
    assert out.exit_code == 0, out.output
    assert json.loads(js.read_text())["suite"] == "branching"
    assert cs.read_text().startswith("suite,id,status,witness")


def test_suite_config_errors():
    assert run("suite", "rfs", "--n-max", "99").exit_code == 2
    assert run("suite", "bogus").exit_code == 2
    assert run("suite", "kms", "--set", "oops").exit_code == 2
    assert run("suite", "kms", "--set", "unknown=1").exit_code == 2
