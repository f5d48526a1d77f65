import json
import subprocess
import sys

import pytest

from fkalg.cli import main
from fkalg.presentations import fk_presentation, save_presentation


def run_json(capsys, *argv):
    code = main(list(argv) + ["--format", "json"])
    return code, json.loads(capsys.readouterr().out)


def test_dims_n3(capsys):
    code, rep = run_json(capsys, "dims", "--n", "3", "--max-degree", "6")
    assert code == 0
    assert rep["series"] == {"coefficients": [1, 3, 4, 3, 1, 0, 0], "exact_to": 6, "complete": True}
    assert rep["dimension"] == 12
    assert rep["exit_code"] == 0
    assert rep["config"]["n"] == 3 and rep["version"] and rep["timings"]["total"] >= 0


def test_dims_n6_inconclusive(capsys):
    code, rep = run_json(capsys, "dims", "--n", "6", "--max-degree", "4")
    assert code == 1
    assert rep["series"]["coefficients"] == [1, 15, 125, 765, 3831]
    assert rep["dimension"].startswith("inconclusive")
    assert rep["numerology"]["status"] == "consistent"


def test_dims_bad_n(capsys):
    assert main(["dims", "--n", "2", "--max-degree", "4"]) == 2
    assert "n" in capsys.readouterr().err


def test_argparse_error_is_usage():
    assert main(["dims", "--max-degree", "nope"]) == 2
    assert main(["bogus"]) == 2


def test_budget_exit_code(capsys):
    code, rep = run_json(capsys, "dims", "--n", "5", "--max-degree", "6", "--max-basis", "60")
    assert code == 1
    assert rep["budget_exceeded"]
    assert rep["series"]["coefficients"] == [1, 10, 55, 220, 711]


def test_budget_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("FKALG_MAX_BASIS", "60")
    code, rep = run_json(capsys, "dims", "--n", "5", "--max-degree", "6")
    assert code == 1
    assert rep["config"]["max_basis"] == 60


def test_bad_environment_budget(capsys, monkeypatch):
    monkeypatch.setenv("FKALG_MAX_BASIS", "-3")
    assert main(["dims", "--n", "3", "--max-degree", "4"]) == 2


def test_presentation_file(tmp_path, capsys):
    path = tmp_path / "e4.json"
    save_presentation(fk_presentation(4), path)
    code, rep = run_json(capsys, "dims", "--presentation", str(path), "--max-degree", "13")
    assert code == 0
    assert rep["dimension"] == 576


def test_nichols(capsys):
    code, rep = run_json(capsys, "nichols", "--n", "3", "--max-degree", "5")
    assert code == 0
    assert rep["nichols"]["dims"] == [1, 3, 4, 3, 1, 0]
    code, rep = run_json(capsys, "nichols", "--n", "4", "--max-degree", "3")
    assert rep["nichols"]["dims"] == [1, 6, 19, 42]
    code, rep = run_json(capsys, "nichols", "--n", "5", "--max-degree", "2")
    assert rep["nichols"]["dims"] == [1, 10, 55]


def test_nichols_budget(capsys):
    assert main(["nichols", "--n", "5", "--max-degree", "4", "--max-tensor-dim", "1000"]) == 1


def test_bad_primes(capsys):
    assert main(["nichols", "--n", "3", "--max-degree", "2", "--primes", "7,11"]) == 2
    assert main(["nichols", "--n", "3", "--max-degree", "2", "--primes", "2147483628"]) == 2


def test_compare(capsys):
    code, rep = run_json(capsys, "compare", "--n", "3", "--max-degree", "5")
    assert code == 0 and rep["all_equal"]
    assert rep["kernel"]["verdict"] == "equal" and rep["kernel"]["kernel_dim"] == 5
    code, rep = run_json(capsys, "compare", "--n", "4", "--max-degree", "4")
    assert code == 0 and rep["all_equal"]


def test_compare_kernel_n6(capsys):
    main(["compare", "--n", "6", "--max-degree", "2"])
    assert "equal (dim 100)" in capsys.readouterr().out


def test_factor(capsys):
    code, rep = run_json(capsys, "factor", "1,3,4,3,1", "--complete")
    assert code == 0 and rep["factor"]["factors"] == [2, 2, 3]
    code, rep = run_json(capsys, "factor", "1", "--complete")
    assert rep["factor"]["factors"] == []
    code, rep = run_json(capsys, "factor", "1,15,125", "--prefix")
    assert not rep["factor"]["consistent"]
    assert "C(15,2)" in rep["factor"]["reason"]


def test_factor_malformed(capsys):
    assert main(["factor", "1,x,3", "--complete"]) == 2
    assert main(["factor", "--complete"]) == 2


def test_factor_series_file(tmp_path, capsys):
    main(["dims", "--n", "4", "--max-degree", "13", "--format", "json", "--output", str(tmp_path / "r.json")])
    capsys.readouterr()
    code, rep = run_json(capsys, "factor", "--series-file", str(tmp_path / "r.json"), "--complete")
    assert code == 0 and rep["factor"]["factors"] == [2, 2, 3, 3, 4, 4]
    (tmp_path / "s.json").write_text("[1, 1]")
    code, rep = run_json(capsys, "factor", "--series-file", str(tmp_path / "s.json"), "--complete")
    assert rep["factor"]["factors"] == [2]


def test_ybe(capsys):
    assert main(["ybe", "--n", "3"]) == 0
    assert main(["ybe", "--n", "5"]) == 0
    assert main(["ybe", "--n", "2"]) == 2


def test_csv(capsys):
    main(["dims", "--n", "3", "--max-degree", "4", "--format", "csv"])
    assert capsys.readouterr().out.splitlines()[:3] == ["degree,coefficient", "0,1", "1,3"]


def test_table(capsys):
    main(["dims", "--n", "3", "--max-degree", "6"])
    assert "dimension: 12" in capsys.readouterr().out


def test_reproducible_output_byte_identical(tmp_path):
    outs = []
    for workers in ("1", "2"):
        path = tmp_path / f"w{workers}.json"
        code = main(["dims", "--n", "5", "--max-degree", "5", "--workers", workers,
                     "--reproducible", "--format", "json", "--output", str(path)])
        assert code == 0 or code == 1
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "fkalg", "ybe", "--n", "3"], capture_output=True, text=True)
    assert res.returncode == 0
