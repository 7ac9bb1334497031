"""One test per acceptance criterion; the pass/fail lines are summarised at the end of the run."""
from pathlib import Path

import pytest

from almostwitt.acceptance import CRITERIA, run_criterion
from almostwitt.cli import main

SCEN = Path(__file__).resolve().parent.parent / "scenarios"


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n, report_line):
    r = run_criterion(n)
    print(r.line())
    report_line(r.line())
    assert r.ok, r.details


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion_has_a_passing_scenario(n, capsys):
    files = sorted(SCEN.glob(f"criterion_{n:02d}_*.yaml"))
    assert len(files) == 1
    assert main(["run", str(files[0])]) == 0
    capsys.readouterr()
