import csv
import io
import json
import subprocess
import sys

import pytest

from rmtmoments.cli import main
from rmtmoments.polynomial import MomentPolynomial


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture(autouse=True)
def no_env_cache(monkeypatch):
    monkeypatch.delenv("RMTM_CACHE", raising=False)


@pytest.mark.parametrize(
    "argv, expected",
    [
        (["eval", "--ensemble", "gue", "--layout", "4"], "2*n^3 + n"),
        (["eval", "--ensemble", "gue", "--layout", "4", "--n", "2"], "18"),
        (["eval", "--ensemble", "wishart-real", "--layout", "2"], "p^2*n + p*n^2 + p*n"),
        (["eval", "--ensemble", "wishart-real", "--layout", "2", "--n", "8", "--p", "6"], str(48 * 15)),
        (["eval", "--ensemble", "gue", "--layout", ""], "1"),
        (["eval", "--ensemble", "goe", "--layout", "3,2"], "0"),
    ],
)
def test_eval(capsys, argv, expected):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert out.strip() == expected


def test_eval_json_round_trips(capsys):
    code, out, _ = run(capsys, "eval", "--ensemble", "gue", "--layout", "30", "--format", "json")
    data = json.loads(out)
    poly = MomentPolynomial.from_json(data["polynomial"])
    assert poly.to_text() == data["text"]
    assert all(isinstance(t["coeff"], str) for t in data["polynomial"])


@pytest.mark.parametrize(
    "argv",
    [
        ["eval", "--ensemble", "gue", "--layout", "-2"],
        ["eval", "--ensemble", "gue", "--layout", "x"],
        ["eval", "--ensemble", "nope", "--layout", "2"],
        ["eval", "--ensemble", "wishart-real", "--layout", "2", "--n", "3"],
        ["genus", "--layout", "3"],
        ["verify", "--ensemble", "goe", "--layout", "4", "--method", "closed-form"],
        ["verify", "--ensemble", "gue", "--layout", "2", "--method", "montecarlo", "--n", "4"],
        ["cache", "save"],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert out == ""
    assert err


def test_genus(capsys):
    code, out, _ = run(capsys, "genus", "--layout", "4", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert data["counts"] == {"0": "2", "1": "1"} and data["expansion_check"] is True
    code, out, _ = run(capsys, "genus", "--layout", "2,2", "--format", "json")
    assert sum(int(v) for v in json.loads(out)["counts"].values()) == 3
    code, out, _ = run(capsys, "genus", "--layout", "2")
    assert out.splitlines() == ["0: 1", "expansion_check: true"]


def test_verify_wick_and_closed_form(capsys):
    code, out, _ = run(capsys, "verify", "--ensemble", "goe", "--layout", "4", "--method", "wick")
    report = json.loads(out)
    assert code == 0 and report["match"] is True and report["method"] == "wick"
    code, out, _ = run(capsys, "verify", "--ensemble", "gue", "--layout", "6", "--method", "closed-form")
    report = json.loads(out)
    assert code == 0 and report["match"] and report["method"] == "closed_form"
    assert report["expected"] == "5*n^4 + 10*n^2"


def test_verify_montecarlo(capsys):
    code, out, _ = run(capsys, "verify", "--ensemble", "gue", "--layout", "2", "--method", "montecarlo",
                       "--n", "8", "--samples", "100000", "--seed", "42")
    report = json.loads(out)
    assert code == 0 and report["match"]
    assert abs(report["actual"] - 64) <= 5 * report["std_error"]


def test_verify_budget_exit_3(capsys):
    code, _, err = run(capsys, "verify", "--ensemble", "gue", "--layout", "14", "--method", "wick")
    assert code == 3 and "12" in err


def test_table_csv(capsys):
    code, out, _ = run(capsys, "table", "--ensemble", "gue", "--max-L", "4", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0
    assert [r["layout"] for r in rows] == ["2", "1,1", "4", "3,1", "2,2", "2,1,1", "1,1,1,1"]
    by_layout = {r["layout"]: r["moment"] for r in rows}
    assert by_layout["2"] == "n^2" and by_layout["4"] == "2*n^3 + n" and by_layout["2,2"] == "n^4 + 2*n^2"


def test_table_wishart_and_goe(capsys):
    code, out, _ = run(capsys, "table", "--ensemble", "wishart-complex", "--max-L", "2", "--format", "json")
    assert [r["layout"] for r in json.loads(out)] == ["1", "2", "1,1"]
    code, out, _ = run(capsys, "table", "--ensemble", "goe", "--max-L", "2", "--format", "json")
    assert json.loads(out)[0] == {"layout": "2", "total": 2,
                                  "polynomial": [{"en": 2, "ep": 0, "coeff": "1"}, {"en": 1, "ep": 0, "coeff": "1"}],
                                  "text": "n^2 + n"}


def test_table_ceiling_exit_3(capsys):
    code, _, err = run(capsys, "table", "--ensemble", "gue", "--max-L", "22")
    assert code == 3
    assert "20" in err


def test_table_independent_of_cache_warmth(capsys, tmp_path):
    path = str(tmp_path / "c.json")
    run(capsys, "cache", "save", "--cache-file", path, "--ensemble", "wishart-real", "--max-L", "7")
    _, cold, _ = run(capsys, "table", "--ensemble", "wishart-real", "--max-L", "6", "--format", "csv")
    _, warm, _ = run(capsys, "table", "--ensemble", "wishart-real", "--max-L", "6", "--format", "csv",
                     "--cache-file", path)
    assert cold == warm


def test_cache_round_trip_and_version(capsys, tmp_path):
    path = tmp_path / "cache.json"
    code, out, _ = run(capsys, "cache", "stats", "--format", "json")
    assert json.loads(out) == {"entries": {"gue": 0, "goe": 0, "wishart-complex": 0, "wishart-real": 0},
                               "hits": 0, "misses": 0}
    code, out, _ = run(capsys, "cache", "save", "--cache-file", str(path), "--max-L", "6", "--format", "json")
    saved = json.loads(out)["entries"]
    assert code == 0 and all(v > 0 for v in saved.values())
    code, out, _ = run(capsys, "cache", "load", "--cache-file", str(path), "--format", "json")
    assert code == 0 and json.loads(out)["entries"] == saved
    payload = json.loads(path.read_text())
    payload["version"] = "0.0.0"
    path.write_text(json.dumps(payload))
    code, _, err = run(capsys, "cache", "load", "--cache-file", str(path))
    assert code == 2 and "version" in err


def test_env_var_cache(capsys, tmp_path, monkeypatch):
    path = tmp_path / "env.json"
    monkeypatch.setenv("RMTM_CACHE", str(path))
    run(capsys, "cache", "save", "--ensemble", "gue", "--max-L", "4")
    code, out, _ = run(capsys, "cache", "stats", "--format", "json")
    assert json.loads(out)["entries"]["gue"] > 0


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "rmtmoments", "eval", "--ensemble", "gue", "--layout", "4"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0
    assert res.stdout.strip() == "2*n^3 + n"
