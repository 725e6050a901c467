import json
import os
from pathlib import Path
import subprocess
import sys

import pytest

from ksurf.cli import EXIT_NUMERIC, EXIT_OK, EXIT_PRECONDITION, EXIT_USAGE, main, parse_profile
from ksurf.errors import PreconditionError

C_K_ONE = 1.1983933613115831541  # mpmath oracle


def test_sphere_writes_three_files(tmp_path, capsys):
    assert main(["sphere", "--space", "h2r", "--K", "1", "--output-dir", str(tmp_path)]) == EXIT_OK
    names = sorted(p.name for p in tmp_path.iterdir())
    assert names == ["sphere_h2r_K1.obj", "sphere_h2r_K1_profile.csv", "sphere_h2r_K1_report.json"]
    csv = (tmp_path / "sphere_h2r_K1_profile.csv").read_text().splitlines()
    assert csv[0] == "u,k,h" and len(csv) == 66
    report = json.loads((tmp_path / "sphere_h2r_K1_report.json").read_text())
    assert report["space"] == "h2r" and abs(report["k_max"] - 1.0850385019483877703) < 1e-14
    obj = (tmp_path / "sphere_h2r_K1.obj").read_text()
    assert "# seed: 20240611" in obj and "# chart: ambient" in obj


def test_sphere_disk_obj(tmp_path):
    assert main(["sphere", "--K", "2", "--disk-obj", "--n-u", "16", "--n-v", "16",
                 "--output-dir", str(tmp_path)]) == EXIT_OK
    assert (tmp_path / "sphere_h2r_K2_disk.obj").read_text().count("# chart: disk") == 1
    assert main(["sphere", "--space", "s2r", "--disk-obj", "--output-dir", str(tmp_path)]) == EXIT_USAGE


def test_sphere_is_deterministic(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for d in (a, b):
        assert main(["sphere", "--space", "s2r", "--K", "0.5", "--output-dir", str(d)]) == EXIT_OK
    for f in a.iterdir():
        assert f.read_bytes() == (b / f.name).read_bytes()


@pytest.mark.parametrize("profile", ["quadratic", "cosh", "poly:0,0,1,0,0.1"])
def test_helicoid(tmp_path, profile):
    assert main(["helicoid", "--profile", profile, "--n-y", "24", "--n-t", "24",
                 "--output-dir", str(tmp_path)]) == EXIT_OK
    curv = next(tmp_path.glob("*_curvature.json"))
    assert json.loads(curv.read_text())["pass"]
    end = json.loads(next(tmp_path.glob("*_simple_end.json")).read_text())
    assert "clusters_at_zero" in end
    assert len(list(tmp_path.glob("*.obj"))) == 1


def test_helicoid_bad_profiles(tmp_path):
    assert main(["helicoid", "--profile", "sine", "--output-dir", str(tmp_path)]) == EXIT_PRECONDITION
    assert main(["helicoid", "--profile", "poly:0,1", "--output-dir", str(tmp_path)]) == EXIT_PRECONDITION
    assert main(["helicoid", "--profile", "poly:0,0,0,1", "--output-dir", str(tmp_path)]) == EXIT_PRECONDITION
    assert main(["helicoid", "--t-range", "1", "0", "--output-dir", str(tmp_path)]) == EXIT_USAGE
    with pytest.raises(PreconditionError):
        parse_profile("poly:a,b,c")


def test_usage_errors():
    for argv in (["sphere", "--K", "-1"], ["sphere", "--space", "r3"], ["sphere", "--n-u", "4"],
                 ["verify", "--tol", "oops"], []):
        with pytest.raises(SystemExit) as exc:
            main(argv)
        assert exc.value.code == EXIT_USAGE


def test_verify_unknown_tolerance(capsys):
    assert main(["verify", "--tol", "nonsense=1", "--no-replay"]) == EXIT_USAGE


def test_verify_failure_exit_code(tmp_path):
    out = tmp_path / "r.json"
    code = main(["verify", "--no-replay", "--grid", "8", "--mesh", "32",
                 "--tol", "structural_identity=0", "--output", str(out)])
    report = json.loads(out.read_text())
    assert code == EXIT_NUMERIC and not report["pass"]
    entry = next(e for e in report["criteria"] if e["name"] == "structural_identity")
    assert entry["bound"] == 0.0 and not entry["pass"]


def test_ck_table(capsys):
    assert main(["ck-table", "--K", "0.1", "1", "10"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "K,epsilon,c_K"
    assert lines[-1] == "# monotone_decreasing: true"
    k, e, c = lines[2].split(",")
    assert (k, e) == ("1", "-1") and abs(float(c) - C_K_ONE) < 1e-9


def test_ck_table_output_file(tmp_path):
    out = tmp_path / "ck.csv"
    assert main(["ck-table", "--K", "10", "1", "--epsilon", "1", "--output", str(out)]) == EXIT_OK
    assert out.read_text().splitlines()[-1] == "# monotone_decreasing: false"


def test_module_entry_point(tmp_path):
    res = subprocess.run([sys.executable, "-m", "ksurf", "ck-table", "--K", "1"], capture_output=True,
                         text=True, check=False)
    assert res.returncode == 0 and res.stdout.startswith("K,epsilon,c_K\n")
