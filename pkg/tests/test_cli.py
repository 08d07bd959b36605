import csv
import io
import json
import subprocess
import sys

import pytest

from harmdens.cli import main, parse_grid


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_expand_cp2(capsys):
    code, out, _ = run(capsys, "expand", "--space", "cp", "--k", "2", "--order", "8")
    doc = json.loads(out)
    assert code == 0
    assert doc["H2"] == "-1" and doc["H4"] == "2/5"
    assert doc["agreement"] is True
    assert doc["formula"]["H8"] == doc["H8"]


def test_flatten_flat(capsys):
    code, out, _ = run(capsys, "flatten", "--space", "flat", "--m", "4", "--order", "6")
    doc = json.loads(out)
    assert code == 0
    assert doc["psi"] == ["1"] + ["0"] * 6


def test_flatten_cp2_coefficients(capsys):
    code, out, _ = run(capsys, "flatten", "--space", "cp", "--k", "2", "--order", "10")
    psi = json.loads(out)["psi"]
    assert psi[0::2] == ["1", "1/2", "13/72", "1177/19440", "7369/362880", "681907/97977600"]


def test_flatten_grid_csv(capsys, tmp_path):
    target = tmp_path / "grid.csv"
    code, _, _ = run(capsys, "flatten", "--space", "cp", "--k", "2", "--grid", "0.1:0.5:0.1",
                     "--format", "csv", "--out", str(target))
    rows = list(csv.reader(io.StringIO(target.read_text())))
    assert code == 0
    assert rows[0] == ["r", "beta", "eta", "psi", "residual"]
    assert len(rows) == 6
    assert float(rows[1][0]) == 0.1
    assert len(rows[1][2].replace("-", "").replace(".", "").split("e")[0]) >= 16


def test_prescribe_round_trip_embedded(capsys):
    code, out, _ = run(capsys, "prescribe", "--space", "hp", "--k", "2",
                       "--coeffs", "1,0,1/3,0,-2/7,0,5")
    doc = json.loads(out)
    assert code == 0
    assert doc["round_trip"] is True
    assert doc["achieved"] == doc["target"]


def test_classify_sorted_and_odd(capsys):
    code, out, _ = run(capsys, "classify", "--m", "8")
    docs = json.loads(out)
    assert [d["space"] for d in docs] == ["CP^4", "HP^2", "CH^4", "HH^2", "R^8"]
    assert docs[0]["counts"] == [6, 1, 1]
    code, out, _ = run(capsys, "classify", "--m", "5", "--odd")
    docs = json.loads(out)
    assert docs[0]["spectrum"] == [["-1", 2], ["0", 2], ["2", 1]]


def test_table_format(capsys):
    code, out, _ = run(capsys, "classify", "--space", "op2", "--format", "table")
    assert code == 0
    assert out.splitlines()[0].split() == ["space", "m", "eigenvalue", "multiplicity"]
    assert "-7/5" in out


@pytest.mark.parametrize("argv", [
    ["prescribe", "--space", "cp", "--k", "2", "--coeffs", "1,1"],
    ["prescribe", "--space", "cp", "--k", "2", "--coeffs", "2,0"],
    ["flatten", "--space", "cp", "--k", "2", "--grid", "0.1:1:0"],
    ["flatten", "--space", "cp"],
    ["expand", "--space", "cp", "--k", "2", "--order", "-1"],
    ["classify", "--space", "sphere", "--m", "3"],
    ["expand", "--space", "dodecahedron", "--m", "4"],
    ["expand", "--bogus"],
])
def test_domain_errors_exit_1(capsys, argv):
    code = None
    try:
        code = main(argv)
    except SystemExit as exc:
        code = exc.code
    assert code == 1
    assert capsys.readouterr().err


def test_parse_grid():
    assert parse_grid("0.05:1.4:0.01")[-1] == 1.4
    assert len(parse_grid("0.05:1.4:0.01")) == 136


def test_deterministic_output(capsys):
    first = run(capsys, "classify")[1]
    assert run(capsys, "classify")[1] == first


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "harmdens", "expand", "--space", "sphere",
                          "--m", "4", "--order", "4"], capture_output=True, text=True)
    assert res.returncode == 0
    assert json.loads(res.stdout)["H4"] == "13/120"
