import json
import subprocess
import sys

import pytest

from isingpvi.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_corr_high_c02_in_t(capsys):
    code, out, _ = run(capsys, "corr", "--M", "0", "--N", "2", "--regime", "high", "--order", "20")
    assert code == 0
    s = json.loads(out)["series"]
    assert s["var"] == "t" and s["valuation"] == 1
    assert s["coeffs"][:3] == ["1/8", "1/16", "39/1024"]


def test_corr_all_routes_cross_checked(capsys):
    code, out, _ = run(capsys, "corr", "--M", "1", "--N", "3", "--order", "12", "--route", "all")
    agree = json.loads(out)["agree"]
    assert code == 0 and agree == {"fixture": True, "fw": True, "recursion": True}


def test_t_output_refused_for_odd_support(capsys):
    code, _, err = run(capsys, "corr", "--M", "1", "--N", "1", "--regime", "high", "--var", "t")
    assert code == 2 and "odd" in err
    code, out, _ = run(capsys, "corr", "--M", "1", "--N", "1", "--regime", "high")
    assert code == 0 and json.loads(out)["series"]["var"] == "k"


def test_csv(capsys):
    code, out, _ = run(capsys, "corr", "--N", "3", "--order", "8", "--format", "csv")
    lines = out.strip().split("\n")
    assert code == 0 and lines[0] == "power_t,numerator,denominator"
    assert lines[1:3] == ["0,1,1", "1,-1,4"]


def test_output_file(tmp_path, capsys):
    p = tmp_path / "c.json"
    code, out, _ = run(capsys, "corr", "--N", "2", "--order", "8", "--output", str(p))
    assert code == 0 and out == ""
    assert json.loads(p.read_text())["N"] == 2


@pytest.mark.parametrize("argv", [
    ["verify-ode", "--M", "1", "--N", "2", "--regime", "high", "--tilde", "--order", "20"],
    ["verify-ode", "--M", "2", "--N", "2", "--order", "12"],
    ["fit-cosgrove", "--M", "0", "--N", "3", "--order", "22"],
    ["okamoto", "--M", "1", "--N", "2", "--regime", "high", "--tilde", "--order", "20"],
    ["boundary", "--M", "0", "--N", "3", "--order", "12"],
    ["boundary", "--n", "1/3", "2/5", "3/7", "5/6", "--branch", "B1", "--order", "5"],
    ["factor", "--order", "10"],
    ["identities", "--order", "8"],
])
def test_commands_pass(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0 and json.loads(out)["pass"] is True


def test_obstructed_boundary_fails(capsys):
    code, out, _ = run(capsys, "boundary", "--n", "1/3", "2/5", "3/7", "88/105", "--branch", "B4",
                       "--order", "5")
    sols = json.loads(out)["solutions"]
    assert code == 1 and "obstruction" in sols[0]


def test_fit_too_short_fails(capsys):
    code, out, _ = run(capsys, "fit-cosgrove", "--M", "0", "--N", "3", "--order", "4")
    assert code == 1 and json.loads(out)["pass"] is False


@pytest.mark.parametrize("argv,msg", [
    (["corr", "--N", "2", "--regime", "low", "--tilde"], "high temperature"),
    (["corr", "--M", "2", "--N", "1"], "0 <= M <= N"),
    (["verify-ode", "--M", "1", "--N", "2", "--regime", "high"], "--tilde"),
    (["corr", "--order", "3"], "at least 4"),
])
def test_invalid_jobs(capsys, argv, msg):
    code, _, err = run(capsys, *argv)
    assert code == 2 and msg in err


def test_order_cap_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("ISINGPVI_ORDER_CAP", "10")
    code, _, err = run(capsys, "corr", "--order", "12")
    assert code == 2 and "cap" in err
    code, out, _ = run(capsys, "corr")
    assert code == 0 and json.loads(out)["order"] == 10


def test_fixture_dir(tmp_path, capsys):
    raw = {"C(0,2) low": {"M": 0, "N": 2, "regime": "low",
                          "poly": {"t": -1, "terms": [{"c": [1], "E": 2, "K": 0}]}}}
    (tmp_path / "fixtures.json").write_text(json.dumps(raw))
    code, out, _ = run(capsys, "corr", "--N", "2", "--order", "10", "--route", "all",
                       "--fixture-dir", str(tmp_path))
    assert code == 1 and json.loads(out)["agree"]["fixture"] is False


def test_selftest_subset(capsys):
    code, out, err = run(capsys, "selftest", "--criteria", "1", "10")
    assert code == 0 and "PASS  1" in err and "PASS 10" in err
    assert [c["criterion"] for c in json.loads(out)["criteria"]] == [1, 10]


def test_module_entry_point_is_deterministic():
    cmd = [sys.executable, "-m", "isingpvi", "corr", "--M", "1", "--N", "2", "--regime", "high",
           "--tilde", "--order", "12"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and json.loads(a)["tilde"] is True
