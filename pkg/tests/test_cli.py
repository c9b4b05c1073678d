import dataclasses
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from qmeron.cli import EXIT_FAIL, EXIT_PASS, EXIT_USAGE, main
from qmeron.report import run_scenario
from qmeron.scenarios import CATALOG, ScenarioError, get_scenario, list_scenarios, resolve_parameters

IDS = ["classical-s3", "classical-r4-chart", "quantum-s3-meron", "quantum-r4q-meron",
       "hodge-audit", "calculus-audit", "warped-product-audit"]


def run(argv, capsys):
    code = main(argv)
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def test_catalog_is_fixed_and_ordered():
    assert [s.id for s in list_scenarios()] == IDS
    assert len({s.id for s in CATALOG}) == len(IDS)
    assert all(s.anchors for s in CATALOG)


def test_list_json_carries_parameter_schemas(capsys):
    code, out, _ = run(["list", "--format", "json"], capsys)
    assert code == EXIT_PASS
    items = json.loads(out)
    assert [i["id"] for i in items] == IDS
    for i in items:
        assert i["paper_anchors"]
        assert any(p["name"] == "q" for p in i["parameters"])
    r4q = next(i for i in items if i["id"] == "quantum-r4q-meron")
    assert {p["name"]: p["default"] for p in r4q["parameters"]}["eps"] == "1/2"


def test_list_text(capsys):
    code, out, _ = run(["list"], capsys)
    assert code == EXIT_PASS
    assert [line.split()[0] for line in out.splitlines()] == IDS


@pytest.mark.parametrize("argv", [
    ["verify", "no-such-scenario"],
    ["verify", "classical-s3", "--q", "3/2"],
    ["verify", "classical-s3", "--q", "0"],
    ["verify", "classical-s3", "--q", "x"],
    ["verify", "classical-s3", "--param", "nope=1"],
    ["verify", "classical-s3", "--param", "lc"],
    ["verify", "classical-s3", "--param", "lc=1/0"],
    ["verify", "classical-s3", "--param", "lc=1", "--param", "lc=2"],
    ["verify", "classical-s3", "--param", "q=1/2"],
    ["verify", "quantum-s3-meron", "--param", "ah=0"],
    ["verify", "classical-s3", "--format", "xml"],
    ["frobnicate"],
    [],
])
def test_usage_errors_exit_2(argv, capsys):
    code, _out, _err = run(argv, capsys)
    assert code == EXIT_USAGE


def test_get_scenario_and_parameter_resolution():
    with pytest.raises(ScenarioError):
        get_scenario("nope")
    s = get_scenario("quantum-r4q-meron")
    assert resolve_parameters(s, {})["eps"] == Fraction(1, 2)
    with pytest.raises(ScenarioError):
        resolve_parameters(get_scenario("quantum-s3-meron"), {"ah": Fraction(0)})


def test_verify_json_schema(capsys):
    code, out, _ = run(["verify", "classical-s3"], capsys)
    assert code == EXIT_PASS
    rep = json.loads(out)
    assert set(rep) >= {"scenario", "parameters", "checks", "engine", "status"}
    assert rep["scenario"] == "classical-s3"
    assert rep["parameters"] == {"lc": "symbolic", "q": "symbolic"}
    assert set(rep["engine"]) == {"presentation_assumptions", "sign_resolutions"}
    assert rep["status"] == "pass"
    for c in rep["checks"]:
        assert set(c) == {"name", "paper_anchor", "status", "residual"}
        assert c["status"] in ("pass", "fail")
    assert "lc*(lc - 1)*(2*lc - 1)/2" in rep["artifacts"]["ym_residual"]


def test_verify_text_and_out_file(tmp_path, capsys):
    target = tmp_path / "r.txt"
    code, out, _ = run(["verify", "classical-s3", "--format", "text", "--out", str(target)], capsys)
    assert code == EXIT_PASS and out == ""
    text = target.read_text(encoding="utf-8")
    assert text.startswith("scenario: classical-s3")
    assert text.rstrip().endswith("status: pass")


def test_quantum_meron_at_half_is_a_solution():
    rep = run_scenario(get_scenario("quantum-s3-meron"), {"eps": Fraction(1, 2)})
    assert rep.status == "pass"
    assert rep.is_solution is True
    assert rep.parameters["eps"] == "1/2"


def test_r4q_default_is_a_solution():
    rep = run_scenario(get_scenario("quantum-r4q-meron"))
    assert rep.status == "pass" and rep.is_solution is True
    assert rep.artifacts["volume"] == "(r·r·r)·dr∧ω-∧ω+∧ωz"


def test_non_solution_parameters_still_pass_their_closed_form_checks():
    rep = run_scenario(get_scenario("classical-s3"), {"lc": Fraction(1, 4)})
    assert rep.status == "pass" and rep.is_solution is False


def test_failed_check_gives_exit_1(monkeypatch, capsys):
    from qmeron import scenarios

    s = get_scenario("classical-s3")

    def broken(ctx, out):
        scenarios.add_bool(out, "deliberately failing", "ccu", False, "1")

    monkeypatch.setattr("qmeron.cli.get_scenario", lambda sid: dataclasses.replace(s, runner=broken))
    code, out, _ = run(["verify", "classical-s3", "--format", "text"], capsys)
    assert code == EXIT_FAIL
    assert "[FAIL] deliberately failing (ccu)" in out
    assert "status: fail" in out


def test_reports_are_byte_identical_across_processes():
    cmd = [sys.executable, "-m", "qmeron", "verify", "hodge-audit"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b


@pytest.mark.slow
@pytest.mark.parametrize("q", ["1/4", "1/2", "3/4"])
@pytest.mark.parametrize("sid", IDS)
def test_specialisation_coherence(sid, q):
    rep = run_scenario(get_scenario(sid), {}, Fraction(q))
    assert rep.status == "pass", [c.name for c in rep.checks if not c.passed]
    assert rep.parameters["q"] == q
