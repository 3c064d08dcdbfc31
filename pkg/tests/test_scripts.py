import runpy
import sys
from pathlib import Path

import pytest

SCRIPTS = Path(__file__).resolve().parent.parent / "scripts"


@pytest.mark.parametrize(
    "name, argv, needle",
    [
        ("moment_table.py", ["--ensemble", "gue", "--max-L", "4", "--wick"], "(4)\t2*n^3 + n  wick ok"),
        ("genus_census.py", ["--max-L", "4"], "(2,2)\ttotal=3\tg=-1:1  g=0:2\tok"),
        ("mc_battery.py", ["--seeds", "2", "--samples", "2000", "--ensemble", "gue", "--layout", "2"], "2/2"),
    ],
)
def test_script_runs(name, argv, needle, capsys, monkeypatch):
    monkeypatch.setattr(sys, "argv", [name, *argv])
    runpy.run_path(str(SCRIPTS / name), run_name="__main__")
    assert needle in capsys.readouterr().out
