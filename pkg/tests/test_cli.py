import json
import subprocess
import sys

import pytest

from wildram.cli import SCHEMA_VERSION, load_job, main, run
from wildram.errors import ParseError


def call(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_swan_text(capsys):
    code, out, _ = call(capsys, "swan", "--p", "2", "--f", "1/x^3")
    assert code == 0
    assert "slope_r: 4" in out and "swan: 3" in out and "dimtot: 4" in out


def test_charform_json(capsys):
    code, out, _ = call(capsys, "charform", "--p", "2", "--f", "y/x^2", "--format", "json")
    d = json.loads(out)
    assert code == 0 and d["schema_version"] == SCHEMA_VERSION
    assert d["result"]["alpha"] == "y^(1/2)" and d["result"]["beta"] == "1"
    assert d["result"]["radicial_depth"] == 1


def test_json_is_deterministic(capsys):
    argv = ("charcycle", "--p", "2", "--f", "y/x^2", "--format", "json")
    first = call(capsys, *argv)[1]
    assert all(call(capsys, *argv)[1] == first for _ in range(3))
    d = json.loads(first)["result"]
    assert d["integrality"]["integral_coefficients"] is True
    assert d["total_dimension_divisor"] == {"D": "2"}


def test_charcycle_curve_default(capsys):
    d = json.loads(call(capsys, "charcycle", "--p", "3", "--f", "1/x^4", "--format", "json")[1])["result"]
    assert d["cycle"]["dim"] == 1
    coeffs = [c["coeff"]["num"] for c in d["cycle"]["components"]]
    assert coeffs == ["-1", "-5"]


def test_restrict(capsys):
    argv = ("restrict", "--p", "2", "--f", "y/x^2", "--x", "t", "--y", "c + t", "--param", "c=1", "--format", "json")
    d = json.loads(call(capsys, *argv)[1])["result"]
    assert d["restricted_dimtot"] == 1 and d["intersection"] == 2
    assert d["noncharacteristic"] is False and d["consistent"] is True


def test_euler(capsys):
    d = json.loads(call(capsys, "euler", "--p", "2", "--f", "x*y", "--format", "json")[1])["result"]
    assert (d["chi_c"], d["chi_Y"]) == (1, 4)
    d = json.loads(call(capsys, "euler", "--surface", "p2", "--R", "3", "--format", "json")[1])["result"]
    assert d["chi_c"] == 3


@pytest.mark.parametrize(
    "argv,code",
    [
        (("swan", "--p", "2", "--f", "1/(x+1)"), 2),
        (("swan", "--p", "4", "--f", "1/x"), 3),
        (("charform", "--p", "3", "--f", "x"), 3),
        (("euler", "--p", "2", "--f", "x^3*y"), 3),
        (("restrict", "--p", "2", "--f", "1/x", "--x", "t"), 2),
        (("restrict", "--p", "2", "--f", "1/x", "--x", "t", "--y", "t", "--param", "c"), 2),
    ],
)
def test_exit_codes(capsys, argv, code):
    assert call(capsys, *argv)[0] == code


def test_error_report_shape():
    status, report = run({"command": "swan", "p": 2, "f": "x^"})
    assert status == 2 and report["status"] == "error" and report["error"]["type"] == "ParseError"
    status, report = run({"command": "nope"})
    assert status == 2


def test_toml_job_and_batch(tmp_path, capsys):
    a = tmp_path / "a.toml"
    a.write_text('command = "swan"\n[character]\np = 3\nf = "1/x^2"\n')
    b = tmp_path / "b.toml"
    b.write_text('command = "restrict"\n[character]\np = 2\nf = "y/x^2"\n[curve]\nx = "t^2"\ny = "t"\n')
    c = tmp_path / "c.toml"
    c.write_text('command = "euler"\n[character]\np = 2\nf = "x*y"\n[surface]\nname = "p2"\n')
    job = load_job(str(a))
    assert job["p"] == 3 and job["command"] == "swan"
    code, out, _ = call(capsys, "run", str(a))
    assert code == 0 and json.loads(out)["result"]["slope_r"] == 3
    code, out, _ = call(capsys, "--batch", str(a), str(b), str(c))
    jobs = json.loads(out)["jobs"]
    assert code == 0 and [j["command"] for j in jobs] == ["swan", "restrict", "euler"]
    assert jobs[1]["result"]["restricted_dimtot"] == 4
    assert jobs[2]["result"]["chi_Y"] == 4


def test_bad_job_files(tmp_path, capsys):
    bad = tmp_path / "bad.toml"
    bad.write_text("command = \n")
    with pytest.raises(ParseError):
        load_job(str(bad))
    other = tmp_path / "other.toml"
    other.write_text('command = "frobnicate"\n')
    with pytest.raises(ParseError):
        load_job(str(other))
    assert call(capsys, "--batch", str(bad))[0] == 2
    assert call(capsys, "swan", "--job", str(tmp_path / "missing.toml"))[0] == 2


def test_custom_surface_file(tmp_path, capsys):
    model = tmp_path / "quadric.toml"
    model.write_text('[surface]\nname = "Q"\nmatrix = [[0, 1], [1, 0]]\nK = [-2, -2]\nchi_top = 4\n')
    code, out, _ = call(capsys, "euler", "--surface", str(model), "--R", "2,3", "--format", "json")
    assert code == 0 and json.loads(out)["result"]["chi_c"] == 6


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "wildram.cli", "swan", "--p", "3", "--f", "1/x"], capture_output=True, text=True)
    assert proc.returncode == 0 and "slope_r: 2" in proc.stdout


def test_selftest_status_tracks_rows(capsys):
    code, out, _ = call(capsys, "selftest", "--format", "json")
    res = json.loads(out)["result"]
    assert res["passed"] + res["failed"] == len(res["rows"]) > 20
    assert code == (1 if res["failed"] else 0)
    names = {r["name"] for r in res["rows"] if r["pass"]}
    assert "p=2 f=x*y: chi_c(U) and chi(Y)" in names
