import json

import pytest

from deltoid.cli import main, rat_arg
from deltoid.exact import Rat


def run_json(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_rat_arg_parsing():
    assert rat_arg("9/4") == Rat(9, 4)
    assert rat_arg("7") == Rat(7)
    import argparse

    with pytest.raises(argparse.ArgumentTypeError):
        rat_arg("1.5")
    with pytest.raises(argparse.ArgumentTypeError):
        rat_arg("1/0")


def test_usage_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["eigen", "--lambda", "0", "--pq", "1,1"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["eigen", "--lambda", "4", "--pq", "nope"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == 2
    capsys.readouterr()


def test_eigen_contract_example(capsys):
    code, rep = run_json(capsys, ["eigen", "--lambda", "4", "--pq", "1,1"])
    assert code == 0
    res = rep["result"]
    assert res["mu"] == "9"
    assert res["norm2"] == "1/81"
    recs = {(r["i"], r["j"]): r for r in res["coefficients"]}
    assert recs[(1, 1)]["re_num"] == 1 and recs[(1, 1)]["re_den"] == 1
    assert recs[(0, 0)]["re_num"] == -1 and recs[(0, 0)]["re_den"] == 9
    assert rep["schema_version"] == 1
    assert rep["config"]["command"] == "eigen"


def test_moments_normalization(capsys):
    code, rep = run_json(
        capsys, ["moments", "--lambda", "7/2", "--max-degree", "2"]
    )
    assert code == 0
    assert rep["result"]["moments"]["1,1"] == "1/8"
    assert rep["result"]["moments"]["0,0"] == "1"


def test_report_determinism(tmp_path):
    out = tmp_path / "rep.json"
    argv = ["su3", "check", "--samples", "15", "--seed", "4",
            "--out", str(out)]
    assert main(argv) == 0
    first = out.read_bytes()
    assert main(argv) == 0
    assert out.read_bytes() == first


def test_cd_verify_small(capsys):
    code, rep = run_json(
        capsys,
        ["cd", "verify", "--lambda", "4", "--rho", "9/4", "--n", "8",
         "--grid", "20", "--trials", "10"],
    )
    assert code == 0
    assert rep["result"]["passed"] is True
    assert rep["result"]["min_margin"] >= -1e-10


def test_cd_scan_b_with_surface(tmp_path, capsys):
    csv = tmp_path / "surface.csv"
    code, rep = run_json(
        capsys,
        ["cd", "scan-b", "--a", "1/3", "--grid", "30", "--refine",
         "--csv", str(csv)],
    )
    assert code == 0
    assert 1.124 < rep["result"]["inf_estimate"] < 1.135
    lines = csv.read_text().splitlines()
    assert lines[0] == "theta,phi,b"
    assert len(lines) > 100
    th, ph, b = lines[1].split(",")
    float(th), float(ph), float(b)


def test_cd_probe(capsys):
    code, rep = run_json(
        capsys, ["cd", "probe", "--a", "2/5", "--curve", "quad", "--c", "1"]
    )
    assert code == 0
    assert rep["result"]["sign_matches"] is True
    assert rep["result"]["limit_estimate"] < 0
    assert min(rep["result"]["b_values"]) < -1e3


def test_cd_factor_check(capsys):
    code, rep = run_json(
        capsys, ["cd", "factor-check", "--a1", "1/6", "--b1", "9/4"]
    )
    assert code == 0
    assert rep["result"]["reduced_form_checked"] is True
    assert rep["result"]["k_const"] == "-9/16"


def test_su3_check(capsys):
    code, rep = run_json(capsys, ["su3", "check", "--samples", "20"])
    assert code == 0
    res = rep["result"]
    assert res["passed"] is True
    assert res["commutator_entries"] == 36
    lo, hi = res["trace_moment"]["ci95"]
    assert lo < 1 / 9 < hi


def test_heat_trace_csv(capsys):
    code = main(["heat", "trace", "--lambda", "4", "--degree", "20",
                 "--nt", "5"])
    out = capsys.readouterr().out
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "t,sup_heat_diag"
    assert len(lines) == 6
    sups = [float(l.split(",")[1]) for l in lines[1:]]
    assert all(a > b for a, b in zip(sups, sups[1:]))


def test_heat_trace_shallow_truncation_fails(capsys):
    code = main(["heat", "trace", "--lambda", "1", "--degree", "3",
                 "--t-min", "0.01", "--t-max", "0.05", "--nt", "3"])
    err = capsys.readouterr().err
    assert code == 1
    assert "truncation" in err


def test_bounds_subcommands(capsys):
    code, rep = run_json(
        capsys, ["bounds", "supnorm", "--lambda", "4", "--max-degree", "12"]
    )
    assert code == 0 and rep["result"]["passed"] is True
    code, rep = run_json(
        capsys, ["bounds", "hk", "--lambda", "4", "--max-k", "8"]
    )
    assert code == 0 and rep["result"]["passed"] is True


def test_sobolev_series_defaults(capsys):
    code, rep = run_json(capsys, ["sobolev", "series"])
    assert code == 0
    assert rep["result"]["max_min_ratio"] < 10
    assert rep["result"]["exponent"] == 5.0


def test_kernel_check_exit_codes(capsys):
    code, rep = run_json(
        capsys, ["kernel", "check", "--lambda", "4", "--max-k", "8",
                 "--nu", "exp"]
    )
    assert code == 0
    assert rep["result"]["sup_abs"] <= rep["result"]["series_value"]
    code, rep = run_json(
        capsys, ["kernel", "check", "--lambda", "4", "--max-k", "8",
                 "--nu", "delta1"]
    )
    assert code == 1  # projector kernel tops its own weight series


def test_accept_delegates(monkeypatch, capsys, tmp_path):
    import deltoid.acceptance as acc
    from deltoid.acceptance import CriterionResult

    fake = [
        CriterionResult(1, "one", True, "fine", 0.0),
        CriterionResult(2, "two", True, "fine", 0.0),
    ]
    monkeypatch.setattr(acc, "run_all", lambda printer=None: fake)
    out = tmp_path / "acc.json"
    assert main(["accept", "--suite", "primary", "--out", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert rep["result"]["passed"] is True
    assert len(rep["result"]["criteria"]) == 2
    assert "seconds" not in json.dumps(rep)

    fake[1] = CriterionResult(2, "two", False, "broken", 0.0)
    assert main(["accept"]) == 1
    capsys.readouterr()
