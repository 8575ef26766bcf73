import json

import pytest
from click.testing import CliRunner

from antichains import cli, verification
from antichains.evaluate import CSV_HEADER, read_csv
from antichains.verification import CheckResult


@pytest.fixture
def run():
    runner = CliRunner()

    def invoke(*args):
        return runner.invoke(cli.main, list(args))

    return invoke


def test_exact_sperner(run):
    res = run("exact", "--n", "5", "--size", "10")
    assert res.exit_code == 0 and res.output.strip() == "2"


def test_exact_total_and_profile(run):
    assert run("exact", "--n", "4").output.strip() == "168"
    profile = run("exact", "--n", "2", "--profile").output.split()
    assert profile == ["1", "4", "1"]


def test_exact_weighted_layers(run):
    res = run("exact", "--n", "4", "--layers", "1..3", "--lambda", "1/2")
    assert res.exit_code == 0 and res.output.strip() == "2017/64"


def test_coeffs_text_and_json(run):
    res = run("coeffs", "--kind", "R", "--j", "1", "--parity", "even")
    assert res.exit_code == 0
    assert res.output.strip() == "R_1^0 = 2*n*β/(n + 2)"
    data = json.loads(run("coeffs", "--kind", "P", "--j", "1", "--parity", "odd", "--format", "json").output)
    assert [d["branch"] for d in data] == [1, 2]


def test_compare_csv(run, tmp_path):
    out = tmp_path / "psi.csv"
    res = run("compare", "--n", "6", "--theorem", "1.1", "--out", str(out))
    assert res.exit_code == 0
    text = out.read_text()
    assert text.splitlines()[0] == ",".join(CSV_HEADER)
    (rec,) = read_csv(text)
    assert rec.exact == 7828354 and 0.8 < float(rec.ratio) < 1.05


def test_compare_psi_nm_to_stdout(run):
    res = run("compare", "--n", "6", "--theorem", "1.3", "--m", "15")
    assert res.exit_code == 0
    (rec,) = read_csv(res.output)
    assert rec.param == "m=15" and float(rec.formula) == 15504


def test_window(run):
    res = run("window", "--n", "1000", "--c", "0")
    assert res.exit_code == 0 and "limit_constant = 0.3021" in res.output


def test_verify_pass(run):
    res = run("verify", "--suite", "ursell")
    assert res.exit_code == 0 and "ursell: PASS" in res.output


def test_verify_failure_exits_one(run, monkeypatch):
    monkeypatch.setattr(verification, "run_suite", lambda name: [CheckResult("forced", False, "x")])
    res = run("verify", "--suite", "appendix")
    assert res.exit_code == 1 and "FAIL" in res.output


def test_usage_errors_exit_two(run):
    assert run("coeffs", "--kind", "Q", "--j", "1", "--parity", "even").exit_code == 2
    assert run("exact", "--n", "3", "--lambda", "1/0").exit_code == 2
    assert run("exact", "--n", "3", "--layers", "3..1").exit_code == 2
    assert run("window", "--n", "5").exit_code == 2
    assert run("compare", "--n", "6", "--theorem", "1.4", "--t", "9").exit_code == 2


def test_resource_guard_exits_three(run):
    assert run("exact", "--n", "7").exit_code == 3


def test_precision_is_restored(run):
    import mpmath

    before = mpmath.mp.prec
    run("--precision", "80", "window", "--n", "10")
    assert mpmath.mp.prec == before
