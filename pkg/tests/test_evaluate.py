from fractions import Fraction
from itertools import combinations
from math import comb

import mpmath
import pytest

from antichains.evaluate import (
    CSV_HEADER,
    ComparisonRecord,
    DepthExceededError,
    FormulaSpec,
    binomial_pmf,
    binomial_pointmass,
    compare_psi,
    compare_psi_nm,
    comparability_probability,
    default_truncation,
    eval_log_psi,
    eval_psi_nm,
    local_limit_pointmass,
    log_psi_exponent,
    read_csv,
    records_to_csv,
    sparse_regime,
    threshold_window,
)
from antichains.lattice import is_antichain, layer_masks
from antichains.oracle import count_antichains


def test_even_six_against_exact():
    log_est = eval_log_psi(6, FormulaSpec("T1.1-Korshunov", "even"))
    exact = count_antichains(6)
    assert 0.95 <= float(log_est / mpmath.log(exact)) <= 1.05
    assert 0.80 <= float(mpmath.exp(log_est) / exact) <= 1.05


@pytest.mark.parametrize("size", [4, 6, 8, 10])
def test_refined_first_order_equals_closed_form_for_even_n(size):
    closed = log_psi_exponent(size, FormulaSpec("T1.1-Korshunov", "even"))
    refined = log_psi_exponent(size, FormulaSpec("T1.4-refined", "even", t=1))
    assert closed == refined


def test_odd_five_is_reported():
    for theorem in ("T1.1-Korshunov", "T1.4-refined"):
        rec = compare_psi(5, theorem)
        assert rec.exact == 7581 and rec.ratio > 0


def test_parity_mismatch_and_unknown_theorem():
    with pytest.raises(ValueError):
        log_psi_exponent(5, FormulaSpec("T1.1-Korshunov", "even"))
    with pytest.raises(ValueError):
        FormulaSpec("T9", "even")
    with pytest.raises(ValueError):
        log_psi_exponent(6, FormulaSpec("T1.3-psi-nm", "even"))


def test_refined_depth_guard():
    with pytest.raises(DepthExceededError):
        log_psi_exponent(6, FormulaSpec("T1.4-refined", "even", t=6))


def test_truncation_rule():
    assert default_truncation(Fraction(1)) == 0
    assert default_truncation(Fraction(3, 4)) == 1
    assert default_truncation(Fraction(1, 2)) == 2
    assert default_truncation(Fraction(1, 10)) == 14
    with pytest.raises(ValueError):
        default_truncation(Fraction(0))


def test_psi_nm_full_middle():
    assert eval_psi_nm(6, 20) == 1
    assert eval_psi_nm(5, 10) == 2


def test_psi_nm_three_quarters():
    assert eval_psi_nm(6, 15) == 15504
    assert count_antichains(6, by_size=True)[15] >= 15504


@pytest.mark.parametrize("size,m", [(6, 3), (7, 9), (9, 40)])
def test_psi_nm_empty_sum_is_prefactor_times_binomial(size, m):
    N = comb(size, size // 2)
    assert eval_psi_nm(size, m, t=1) == (1 if size % 2 == 0 else 2) * comb(N, m)


def test_psi_nm_depth_exceeded():
    with pytest.raises(DepthExceededError):
        eval_psi_nm(6, 1)
    with pytest.raises(ValueError):
        eval_psi_nm(6, 21)


def test_psi_nm_uses_r_terms():
    # beta = 1/2 at n=6: t=2, one R_1 term
    beta = Fraction(1, 2)
    expected = comb(20, 10) * mpmath.exp(20 * (2 * beta * 6 / Fraction(8)) * float((1 - beta) ** 3))
    assert abs(eval_psi_nm(6, 10) / expected - 1) < 1e-12


def test_compare_psi_nm_marks_depth():
    rows = compare_psi_nm(6)
    assert len(rows) == 20
    deep = [r for r in rows if r.variant.endswith("depth-exceeded")]
    assert deep and all(r.formula is None for r in deep)
    assert rows[-1].exact == 1 and rows[-1].ratio == 1


def test_threshold_window_constants():
    out = threshold_window(1000, 0)
    with mpmath.workprec(200):
        target = 3 / mpmath.sqrt(2 * mpmath.pi)
        assert abs(out["limit_constant"] - mpmath.exp(-target)) < mpmath.mpf(10) ** -50
    assert abs(float(out["limit_constant"]) - 0.3021) < 1e-3
    assert abs(out["cluster_sum_1"] / target - 1) < 0.10
    far = threshold_window(1000, 50)
    assert far["limit_exponent"] < 1e-40 and far["limit_constant"] <= 1


def test_threshold_window_odd_and_guard():
    out = threshold_window(1001, 0)
    with mpmath.workprec(200):
        assert abs(out["limit_exponent"] - mpmath.mpf(15) / 4 / mpmath.sqrt(2 * mpmath.pi)) < 1e-40
    with pytest.raises(ValueError):
        threshold_window(9, 0)


@pytest.mark.parametrize("size", range(0, 6))
def test_comparability_probability_by_enumeration(size):
    total = 1 << size
    hits = sum(1 for u in range(total) for v in range(total) if u & v == u or u & v == v)
    assert comparability_probability(size) == Fraction(hits, total * total)
    if size == 2:
        assert comparability_probability(size) == Fraction(7, 8)


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_one_defect_count_by_enumeration(m):
    size, k = 4, 2
    lower, middle = layer_masks(size, k - 1), layer_masks(size, k)
    count = sum(1 for u in lower for M in combinations(middle, m - 1) if is_antichain((u,) + M))
    assert sparse_regime(size, m)["one_defect_exact"] == Fraction(count, comb(len(middle), m))


def test_sparse_regime_guard():
    with pytest.raises(ValueError):
        sparse_regime(4, 0)


def test_binomial_pointmass():
    assert binomial_pointmass(4, 2)["exact"] == 6
    ratio = float(binomial_pointmass(20, 15, 3)["ratio"])
    assert 0.8 <= ratio <= 0.9
    with pytest.raises(ValueError):
        binomial_pointmass(4, 4)


def test_binomial_pmf_and_local_limit():
    p = Fraction(2, 7)
    assert binomial_pmf(1, p, 1) == p
    assert binomial_pmf(3, p, 5) == 0
    exact = float(binomial_pmf(400, Fraction(1, 2), 200))
    assert abs(exact / float(local_limit_pointmass(400, Fraction(1, 2))) - 1) < 0.01


def test_csv_round_trip():
    records = [compare_psi(6, "T1.1-Korshunov"), compare_psi(5, "T1.4-refined", 2)]
    records += compare_psi_nm(6, [1, 10, 15, 20])
    records.append(ComparisonRecord.build(7, "x", Fraction(3, 4), None, "custom"))
    text = records_to_csv(records)
    assert text.splitlines()[0] == ",".join(CSV_HEADER)
    assert records_to_csv(read_csv(text)) == text


def test_csv_rejects_bad_header():
    with pytest.raises(ValueError):
        read_csv("a,b\n")


def test_record_json():
    data = compare_psi(6, "T1.1-Korshunov").to_json()
    assert data["n"] == 6 and data["exact"] == "7828354" and data["param"] is None
