import io
import json
from pathlib import Path

import pytest

from almostwitt.cli import main
from almostwitt.scenario import ScenarioError, load_scenario

ROOT = Path(__file__).resolve().parent.parent
SCEN = ROOT / "scenarios"


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


def test_empty_scenario():
    code, text = run("run", str(SCEN / "empty.yaml"))
    assert code == 0
    assert "0 checks" in text


def test_empty_scenario_json():
    code, text = run("--format", "json", "run", str(SCEN / "empty.yaml"))
    assert code == 0
    assert json.loads(text)["checks"] == []


def test_nilpotent_lift_scenario():
    code, text = run("--format", "json", "run", str(SCEN / "nilpotent_lift_z4.yaml"))
    assert code == 0
    report = json.loads(text)
    lift = report["checks"][1]["result"]
    assert lift["ideal"] == ["(0, 0)", "(1, 0)", "(2, 0)", "(3, 0)"]


def test_wrong_expectation_gives_diff():
    code, text = run("run", str(SCEN / "wrong_expectation.yaml"))
    assert code == 1
    assert '- "status": "Yes"' in text and '+ "status": "No"' in text


def test_output_is_deterministic(tmp_path):
    a = run("--format", "json", "run", str(SCEN / "nilpotent_lift_z4.yaml"))
    b = run("--format", "json", "run", str(SCEN / "nilpotent_lift_z4.yaml"))
    assert a == b
    cert = tmp_path / "c.json"
    run("--certificates", str(cert), "run", str(SCEN / "criterion_09_witt_perfect.yaml"))
    first = cert.read_bytes()
    run("run", str(SCEN / "criterion_09_witt_perfect.yaml"), "--certificates", str(cert))
    assert cert.read_bytes() == first


def test_parse_error_location(tmp_path):
    bad = tmp_path / "bad.yaml"
    bad.write_text("name: x\nrings:\n  R: \"residue{4\"\n")
    code, text = run("run", str(bad))
    assert code == 2
    assert text.startswith(f"{bad}:3:")
    assert "error:" in text


def test_duplicate_key_is_an_error():
    with pytest.raises(ScenarioError) as e:
        load_scenario("rings:\n  R: \"residue{2}\"\n  R: \"residue{3}\"\n", "dup.yaml")
    assert e.value.line == 3


def test_unknown_op_is_located():
    with pytest.raises(ScenarioError) as e:
        load_scenario("checks:\n  - op: frobnicate\n", "x.yaml")
    assert e.value.line == 2


@pytest.mark.parametrize("path", sorted(p.name for p in SCEN.glob("*.yaml") if p.name != "wrong_expectation.yaml"))
def test_shipped_scenarios_pass(path):
    code, text = run("run", str(SCEN / path))
    assert code == 0, text


def test_witt_subcommand():
    code, text = run("--format", "json", "witt", "add", "[1, 0]", "[1, 0]", "--ring", "residue{2}")
    assert code == 0
    assert json.loads(text)["checks"][0]["result"]["value"] == "[0, 1]"
    code, text = run("--format", "json", "--prime", "3", "witt", "ghost", "[2, 1]", "--ring", "integers")
    assert json.loads(text)["checks"][0]["result"]["value"] == ["2", "11"]


def test_lift_subcommand():
    code, text = run("--format", "json", "lift", "nilpotent", "--source", "product{residue{4}, residue{4}}",
                     "--target", "product{residue{2}, residue{2}}", "--ideal", "(1, 0)")
    assert code == 0
    assert json.loads(text)["checks"][0]["result"]["ideal"] == ["(0, 0)", "(1, 0)", "(2, 0)", "(3, 0)"]


def test_almost_subcommand():
    code, text = run("almost", "zero", "--module", "R/(t)")
    assert code == 0 and "No" in text
    code, text = run("almost", "iso", "--map", "inclusion", "--format", "json")
    assert json.loads(text)["checks"][0]["result"]["status"] == "Yes"


def test_descent_subcommand():
    code, text = run("--prime", "3", "descent")
    assert code == 0
    assert "A0/(x+y): NotFlat, dim ker = 1, dim Tor image = 1" in text


def test_tilt_subcommand():
    code, text = run("--format", "json", "tilt", "--ring", "monomial_algebra{p=2, level=4}", "--precision", "4")
    assert code == 0
    assert "t^(1/16)" in json.loads(text)["checks"][0]["result"]["detail"]
    code, text = run("tilt", "--perfection", "--ring", "monomial_algebra{p=2, quotient=[u^2], var=u}")
    assert code == 0 and "residue{2}" in text


def test_bad_ring_text():
    code, text = run("witt", "add", "[1]", "[1]", "--ring", "residue{x}")
    assert code == 2 and text.startswith("error:")
