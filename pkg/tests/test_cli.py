"""Command-line interface: subcommands, formats, exit codes."""

import io
import json
import subprocess
import sys

import pytest

from pgh import cli


def run_cli(*argv):
    """Invoke main() in-process, capturing stdout."""
    buf = io.StringIO()
    old = sys.stdout
    sys.stdout = buf
    try:
        code = cli.main(list(argv))
    finally:
        sys.stdout = old
    return code, buf.getvalue()


def test_group_family():
    code, out = run_cli("group", "--family", "G2", "--p", "3", "--m", "2")
    assert code == 0
    assert "order: 243" in out
    assert "quotient: [9, 9]" in out


def test_group_file(tmp_path):
    from pgh import catalog
    path = tmp_path / "g5.json"
    path.write_text(catalog.serialize(catalog.g5(3)))
    code, out = run_cli("group", "--file", str(path))
    assert code == 0
    assert "n: 6" in out and "k: 3" in out and "d: 3" in out


def test_group_bad_params_exit_2():
    code, _ = run_cli("group", "--family", "G6", "--p", "5")
    assert code == 2


def test_group_requires_one_source():
    code, _ = run_cli("group", "--family", "G2", "--p", "3", "--m", "2",
                      "--file", "x.json")
    assert code == 2


def test_group_missing_file_exit_2(tmp_path):
    code, _ = run_cli("group", "--file", str(tmp_path / "none.json"))
    assert code == 2


def test_multiplier_json():
    code, out = run_cli("multiplier", "--family", "G2", "--p", "3",
                        "--m", "2", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["multiplier"] == [3, 3, 3]


def test_capable_true_false():
    code, out = run_cli("capable", "--family", "E1", "--p", "3")
    assert code == 0 and "capable: true" in out
    code, out = run_cli("capable", "--family", "Q8", "--p", "2")
    assert code == 0 and "capable: false" in out
    assert "epicenter_order: 2" in out


def test_bounds_values_and_errors():
    code, out = run_cli("bounds", "--n", "7", "--k", "4", "--d", "3")
    assert code == 0 and "bounds.rai: 10" in out
    code, _ = run_cli("bounds", "--n", "3", "--k", "5", "--d", "1")
    assert code == 2


def test_bounds_csv_deterministic():
    _, a = run_cli("bounds", "--n", "6", "--k", "3", "--d", "3",
                   "--format", "csv")
    _, b = run_cli("bounds", "--n", "6", "--k", "3", "--d", "3",
                   "--format", "csv")
    assert a == b
    assert a.splitlines()[0] == "n,k,d,bounds.green,bounds.niroomand,bounds.rai"
    assert a.splitlines()[1] == "6,3,3,15,8,8"


def test_verify_sweep_suite():
    code, out = run_cli("verify", "--suite", "sweep", "--p", "3")
    assert code == 0
    assert "sweep_attainers_equal_classified_families" in out
    assert "0 failed" in out


def test_verify_capability_suite_csv():
    code, out = run_cli("verify", "--suite", "capability", "--p", "3",
                        "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "name,pass,detail"
    assert all(",true," in line or line.endswith(",true")
               or ",true" in line for line in lines[1:])


def test_verify_json_deterministic():
    _, a = run_cli("verify", "--suite", "homology", "--p", "3",
                   "--format", "json")
    _, b = run_cli("verify", "--suite", "homology", "--p", "3",
                   "--format", "json")
    assert a == b
    doc = json.loads(a)
    assert doc["failed"] == 0


def test_verify_bad_prime():
    code, _ = run_cli("verify", "--suite", "sweep", "--p", "7")
    assert code == 2


def test_entry_point_installed():
    proc = subprocess.run(["pgh", "bounds", "--n", "3", "--k", "1", "--d", "2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "bounds.rai: 2" in proc.stdout


@pytest.mark.slow
def test_verify_all_p3_deep():
    code, out = run_cli("verify", "--suite", "all", "--p", "3", "--deep")
    assert code == 0
    assert "0 failed" in out
