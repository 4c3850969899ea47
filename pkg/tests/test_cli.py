import json
import math

import pytest

from superbargmann.bargmann import coherent_superposition
from superbargmann.cli import main
from superbargmann.verify import CHECKS, PAIR_CHECKS, SuiteConfig, converge_table, eval_grid, run_suite

FAST = ["--n", "2,3", "--a", "2"]


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_default_verify_reports_only_unscaled_translation(capsys):
    code, out, err = run(capsys, "verify")
    report = json.loads(out)
    failed = [e["id"] for e in report["entries"] if not e["passed"]]
    # the unscaled translation-Weyl statement is the single identity that does not hold
    assert failed == ["translation_weyl"]
    assert code == 1
    assert "FAIL translation_weyl" in err
    for e in report["entries"]:
        assert e["passed"] == (e["max_err"] <= e["tolerance"])
    assert report["summary"] == {"total": len(CHECKS), "passed": len(CHECKS) - 1, "failed": 1}


def test_verify_pair_checks_pass(capsys):
    args = ["verify", *FAST, "--format", "csv"]
    code = main(args + ["--tolerance", "translation_weyl=10"])
    out, _ = capsys.readouterr()
    assert code == 0
    assert out.splitlines()[0] == "id,identity,max_err,tolerance,passed,amplification"


def test_forced_failure_names_identity(capsys):
    code, _, err = run(capsys, "verify", *FAST, "--tolerance", "bso_oracle=1e-30", "--tolerance", "translation_weyl=10")
    assert code == 1
    assert "FAIL bso_oracle" in err


def test_guard_is_usage_error(capsys):
    code, _, err = run(capsys, "verify", "--n", "60", "--a", "2")
    assert code == 2
    assert "cancellation guard" in err


def test_usage_errors(capsys, tmp_path):
    assert run(capsys, "verify", "--tolerance", "nonsense=1e-3")[0] == 2
    assert run(capsys, "verify", "--tolerance", "bso_oracle=-1")[0] == 2
    assert run(capsys, "verify", "--tolerance", "bso_oracle")[0] == 2
    assert run(capsys, "verify", "--a", "0.5")[0] == 2
    assert run(capsys, "verify", "--quad-order", "1000")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "eval", "sigma_n", "--grid", "1j")[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text('{"colour": 1}')
    assert run(capsys, "verify", "--config", str(bad))[0] == 2
    assert run(capsys, "verify", "--config", str(tmp_path / "missing.json"))[0] == 2


def test_config_file_and_override(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"n_list": [60], "a_list": [2.0], "format": "csv", "z_grid": ["0", [1, 1]]}))
    # the file alone trips the guard; the flag overrides n
    assert run(capsys, "eval", "bso", "--config", str(cfg))[0] == 2
    code, out, _ = run(capsys, "eval", "bso", "--config", str(cfg), "--n", "2")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "n,a,k,z_re,z_im,re,im"
    assert len(lines) == 3


def test_eval_values(capsys):
    code, out, _ = run(capsys, "eval", "fn", "--grid", "0", "--n", "2", "--a", "2", "--format", "csv")
    assert code == 0
    assert out.splitlines()[1] == "2,2.0,0,0.0,0.0,1.0,0.0"
    code, out, _ = run(capsys, "eval", "sigma_n", "--grid=-1,0,0.5,1", "--n", "4", "--a", "2", "--format", "json")
    assert len(json.loads(out)["rows"]) == 4


def test_eval_bso_origin(capsys):
    code, out, _ = run(capsys, "eval", "bso", "--grid", "0", "--n", "2", "--a", "2", "--format", "csv")
    # pi^(1/4) (2.25 exp(-1/4) - 1.5 + 0.25 exp(-1/4))
    expected = 3.141592653589793**0.25 * (2.5 * 0.7788007830714049 - 1.5)
    assert abs(float(out.splitlines()[1].split(",")[5]) - expected) < 1e-14


def test_eval_hkn_and_coherent(capsys):
    code, out, _ = run(capsys, "eval", "hkn", "--k", "2", "--grid", "0.5,1+1j", "--n", "4", "--a", "1.5", "--format", "csv")
    assert code == 0 and len(out.splitlines()) == 3
    code, out, _ = run(capsys, "eval", "coherent_sum", "--grid", "0", "--n", "4", "--a", "2", "--format", "csv")
    assert code == 0


def test_csv_deterministic(capsys, tmp_path):
    paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
    for p in paths:
        assert main(["eval", "hkn", "--k", "1", "--n", "3,5", "--a", "1.5,2", "--format", "csv", "--out", str(p)]) == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()
    verify_paths = [tmp_path / "v1.csv", tmp_path / "v2.csv"]
    for p in verify_paths:
        main(["verify", *FAST, "--format", "csv", "--out", str(p)])
    assert verify_paths[0].read_bytes() == verify_paths[1].read_bytes()
    capsys.readouterr()


def test_converge(capsys):
    code, out, _ = run(capsys, "converge", "superosc", "--format", "csv")
    assert code == 0
    rows = [line.split(",") for line in out.splitlines()[1:]]
    assert [int(r[2]) for r in rows] == [10, 50, 200]
    gaps = [float(r[3]) for r in rows]
    assert gaps[0] > gaps[1] > gaps[2]
    code, out, _ = run(capsys, "converge", "weyl", "--format", "json")
    assert [r["n"] for r in json.loads(out)["rows"]] == [4, 8, 16]
    code, out, _ = run(capsys, "converge", "fourier_limit", "--grid", "1", "--format", "json")
    assert code == 0
    assert run(capsys, "converge", "weyl", "--n", "60")[0] == 2


def test_weyl_converge_target_at_origin():
    rows = converge_table("weyl", 2.0, [6])
    expected = abs(coherent_superposition(6, 2.0)(0.0) - math.exp(-1.0))
    assert abs(rows[0][1] - expected) < 1e-12


def test_suite_config_validation():
    with pytest.raises(ValueError):
        SuiteConfig(format="xml").validate()
    with pytest.raises(ValueError):
        SuiteConfig(x_grid=(1j,)).validate()
    assert SuiteConfig(n_list=(60,), a_list=(2.0,), allow_unstable=True).validate()


def test_pair_checks_known():
    assert set(PAIR_CHECKS) <= set(CHECKS)
    report = run_suite(SuiteConfig(n_list=(3,), a_list=(2.0,)), ids=["moment_sum", "sum_product"])
    assert report.ok and [e.id for e in report.entries] == ["moment_sum", "sum_product"]


def test_eval_grid_rejects_unknown():
    with pytest.raises(ValueError):
        eval_grid("nope", 2, 2.0, [0])
