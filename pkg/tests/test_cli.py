import csv
import io
import json

import pytest

from conftest import F8, F8_ODD
from oddfarey.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_list(capsys):
    code, out = run(capsys, "list", "--q", "8")
    assert code == 0
    assert out.strip() == ", ".join(f"{f.numerator}/{f.denominator}" for f in F8)
    code, out = run(capsys, "list", "--q", "8", "--odd")
    assert out.strip() == ", ".join(f"{f.numerator}/{f.denominator}" for f in F8_ODD)
    code, out = run(capsys, "list", "--q", "1")
    assert out.strip() == "1/1"


def test_list_csv_and_json(capsys):
    _, out = run(capsys, "list", "--q", "5", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["index", "fraction", "decimal"]
    assert len(rows) == 11
    _, out = run(capsys, "list", "--q", "5", "--format", "json")
    assert json.loads(out) == [
        "1/5", "1/4", "1/3", "2/5", "1/2", "3/5", "2/3", "3/4", "4/5", "1/1",
    ]


def test_stats(capsys):
    code, out = run(capsys, "stats", "--q", "8", "--h", "1")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["q", "h", "deltas", "count", "windows", "ratio", "ratio_decimal"]
    data = {r[2]: (int(r[3]), int(r[4]), r[5]) for r in rows[1:]}
    assert data["1"] == (7, 12, "7/12")
    assert data["7"] == (1, 12, "1/12")


def test_rho(capsys):
    code, out = run(capsys, "rho", "--delta", "2")
    assert code == 0
    assert "1/6" in out and "exact" in out
    code, out = run(capsys, "rho", "--delta", "1,1", "--tol", "1/1000", "--format", "json")
    assert code == 0
    row = json.loads(out)
    assert row["exact"] is False and row["converged"] is True


def test_rho_table(capsys):
    code, out = run(capsys, "rho-table", "--h", "1", "--delta-max", "4")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0
    assert rows[0][0] == "deltas"
    assert [r[1] for r in rows[1:]] == ["2/3", "1/6", "1/15", "1/30"]


def test_compare(capsys):
    code, out = run(capsys, "compare", "--delta", "2", "--q", "500", "--format", "json")
    assert code == 0
    row = json.loads(out)
    assert row["lo"] == "1/6"
    assert float(row["deviation"]) < 0.01


def test_region(capsys):
    code, out = run(capsys, "region", "--ks", "2", "--format", "json")
    data = json.loads(out)
    assert data["area"] == "1/6"
    assert len(data["vertices"]) >= 3
    code, out = run(capsys, "region", "--quadrangle", "6,1,1", "--format", "json")
    assert json.loads(out)["area"] == "1/84"


def test_orbit(capsys):
    code, out = run(capsys, "orbit", "--point", "3/4,1/2", "--steps", "3")
    trace = json.loads(out)
    assert trace[0] == {"x": "3/4", "y": "1/2", "kappa": 3}
    assert len(trace) == 4


def test_paths(capsys):
    code, out = run(capsys, "paths", "--delta", "1,1", "--format", "json")
    fams = json.loads(out)
    assert len(fams) == 4
    assert {f["arity"] for f in fams} == {1, 2, 3}


def test_lattice(capsys):
    code, out = run(capsys, "lattice", "--ks", "", "--q", "8", "--parity", "odd,any")
    assert out.strip() == "13"
    code, out = run(
        capsys, "lattice", "--ks", "2", "--q", "60", "--parity", "odd,even",
        "--interval", "0,1", "--format", "json",
    )
    row = json.loads(out)
    assert row["count"] > 0


def test_short_interval(capsys):
    code, out = run(
        capsys, "short-interval", "--q", "200", "--delta", "2",
        "--interval", "0,1/2", "--format", "json",
    )
    row = json.loads(out)
    assert row["lo"] == "1/6"
    assert float(row["deviation_times_sqrtq_over_logq"]) <= 5


def test_verify_suites(capsys):
    code, out = run(capsys, "verify", "tuple-identity", "--q", "30")
    assert code == 0 and "PASS" in out and "FAIL" not in out
    code, out = run(capsys, "verify", "tuple-identity", "--q", "100", "--delta", "2,3")
    assert code == 0
    code, out = run(capsys, "verify", "parity-swap", "--q", "30", "--k", "3")
    assert code == 0
    code, out = run(capsys, "verify", "areas", "--k", "20")
    assert code == 0
    code, out = run(capsys, "verify", "stabilization")
    assert code == 0
    code, out = run(capsys, "verify", "completeness", "--k", "30")
    assert code == 0
    code, out = run(
        capsys, "verify", "interval-identity", "--q", "30", "--interval", "1/4,3/4"
    )
    assert code == 0


def test_config_file(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"tol": "1/100"}))
    code, out = run(capsys, "--config", str(cfg), "rho", "--delta", "1,1", "--format", "json")
    assert code == 0
    row = json.loads(out)
    assert row["converged"] is True and row["cutoff"] <= 500


def test_bad_arguments(capsys):
    with pytest.raises(SystemExit):
        main(["rho", "--delta", "x"])
    with pytest.raises(SystemExit):
        main(["lattice", "--ks", "2", "--q", "10", "--parity", "odd"])
    assert main(["list", "--q", "0"]) == 2  # ValueError path
