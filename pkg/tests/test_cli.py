import json
import os

import jsonschema
import numpy as np
import pytest

from calogero_eop import cli, reports

SCHEMA = reports.load_schema()


def _run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def _valid(doc):
    jsonschema.validate(doc, SCHEMA)


def test_identities_json_is_valid_and_deterministic(capsys):
    code, out, _ = _run(capsys, "identities", "--samples", "2000", "--seed", "3")
    assert code == 0
    doc = json.loads(out)
    _valid(doc)
    assert doc["passed"] and len(doc["identities"]) == 6
    assert doc["xi_spot"]["values"] == pytest.approx([-1.0, -1.0])
    assert _run(capsys, "identities", "--samples", "2000", "--seed", "3")[1] == out
    assert "time" not in out.lower()


def test_spectrum_analytic(capsys):
    code, out, _ = _run(capsys, "spectrum", "--family", "SCARF", "--g", "4", "--f1", "0",
                        "--nmax", "1", "--lmax", "1")
    assert code == 0
    doc = json.loads(out)
    _valid(doc)
    E = {(lv["n"], lv["ell"]): lv["energy"] for lv in doc["levels"]}
    s = np.sqrt(1.5)
    assert E[(0, 0)] == pytest.approx(7 * s)
    assert E[(1, 0)] == pytest.approx(9 * s)
    assert E[(0, 1)] == pytest.approx(10 * s)


def test_spectrum_numeric_pt_reports_gap(capsys):
    code, out, _ = _run(capsys, "spectrum", "--family", "PT_ECKART", "--g", "10", "--f1", "1",
                        "--mode", "both", "--nmax", "1", "--lmax", "2", "--grid-points", "1024")
    assert code == 0
    doc = json.loads(out)
    _valid(doc)
    assert doc["missing_levels"] == [1]
    assert {lv["ell"] for lv in doc["levels"]} == {0, 2}


def test_parameter_error_exit_code(capsys):
    code, out, err = _run(capsys, "spectrum", "--family", "SCARF", "--g", "4", "--f1", "5")
    assert code == 2 and out == ""
    assert "f1 < g+1/2" in err


def test_usage_errors(capsys):
    assert _run(capsys, "identities", "--samples", "0")[0] == 2
    assert _run(capsys, "tables", "--format", "csv")[0] == 2
    with pytest.raises(SystemExit) as info:
        cli.main(["spectrum", "--family", "HARMONIC"])
    assert info.value.code == 2
    capsys.readouterr()


def test_sample_csv(capsys, tmp_path):
    path = tmp_path / "v.csv"
    code, _, _ = _run(capsys, "sample", "--family", "PT_ECKART", "--g", "10", "--f1", "1",
                      "--grid-points", "100", "--format", "csv", "--out", str(path))
    assert code == 0
    raw = path.read_bytes()
    assert b"\r" not in raw
    lines = raw.decode().splitlines()
    assert lines[0] == "x,value_re,value_im"
    data = np.array([[float(v) for v in ln.split(",")] for ln in lines[1:]])
    assert data.shape == (100, 3)
    assert np.all(np.diff(data[:, 0]) > 0)
    assert np.max(np.abs(data[:, 2])) > 0
    # round trip of %.17g is exact
    assert float(lines[1].split(",")[0]) == data[0, 0]


def test_sample_real_family_and_json(capsys):
    code, out, _ = _run(capsys, "sample", "--family", "SCARF", "--grid-points", "100",
                        "--format", "csv", "--target", "wavefunction", "--channel", "radial")
    assert code == 0
    rows = out.splitlines()[1:]
    assert len(rows) == 100 and all(r.endswith(",0") for r in rows)
    code, out, _ = _run(capsys, "sample", "--family", "SCARF", "--grid-points", "100")
    doc = json.loads(out)
    _valid(doc)
    assert len(doc["x"]) == 100


def test_config_file_and_precedence(capsys, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# spot check\nfamily = SCARF\ng = 4\nf1=0\ngrid-points = 100\n")
    code, out, _ = _run(capsys, "spectrum", "--config", str(cfg), "--nmax", "0", "--lmax", "0")
    assert code == 0
    doc = json.loads(out)
    assert doc["parameters"]["couplings"]["g"] == 4.0
    assert doc["levels"][0]["lambda_ell"] == pytest.approx(6.0)
    code, out, _ = _run(capsys, "spectrum", "--config", str(cfg), "--g", "10",
                        "--nmax", "0", "--lmax", "0")
    assert json.loads(out)["parameters"]["couplings"]["g"] == 10.0


def test_config_errors(capsys, tmp_path):
    bad = tmp_path / "bad.cfg"
    bad.write_text("colour = blue\n")
    assert _run(capsys, "identities", "--config", str(bad))[0] == 2
    bad.write_text("g = lots\n")
    assert _run(capsys, "identities", "--config", str(bad))[0] == 2
    assert _run(capsys, "identities", "--config", str(tmp_path / "missing.cfg"))[0] == 3


def test_unwritable_output(capsys, tmp_path):
    target = tmp_path / "no" / "such" / "dir" / "out.json"
    assert _run(capsys, "identities", "--samples", "100", "--out", str(target))[0] == 3


def test_tables_writes_both_files(capsys, tmp_path):
    code, _, err = _run(capsys, "tables", "--grid-points", "2048", "--out", str(tmp_path))
    assert code == 0
    names = sorted(os.listdir(tmp_path))
    assert names == ["table1.json", "table2.json"]
    for name in names:
        doc = json.loads((tmp_path / name).read_text())
        _valid(doc)
        assert all(r["status"] == "PASS" for r in doc["rows"])
        ids = {a["id"] for a in doc["adjudications"]}
        assert "lambda_pt_eckart" in ids
    assert err.count("PASS") == 10 and "FAIL" not in err


def test_verify_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert _run(capsys, "verify", "--samples", "2000", "--out", str(a))[0] == 0
    assert _run(capsys, "verify", "--samples", "2000", "--out", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()
    doc = json.loads(a.read_text())
    _valid(doc)
    assert doc["passed"]
