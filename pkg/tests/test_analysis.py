import numpy as np
import pytest
from pydantic import ValidationError

from iterstbc.algebra import exact_codeword
from iterstbc.analysis import (
    Partition,
    analyze_code,
    degree3_theta_check,
    det_center_check,
    detect_grouping,
    diagonal_block_exponent,
    grouping_order,
    implied_r_zeros,
    m_matrix,
    min_det_scan,
    norm_equation_search,
    quaternion_theta_check,
    verify_partition,
)
from iterstbc.catalog import SILVER_HINT, alamouti_algebra, iter_golden, iter_silver, make_code, silver_algebra
from iterstbc.errors import BudgetExceededError
from iterstbc.fields import gaussian, q_sqrtm7, q_zeta7, q_zeta7_i, rationals


def _mask(kappa, orthogonal_pairs):
    mask = np.zeros((kappa, kappa), dtype=bool)
    for k, l in orthogonal_pairs:
        mask[k, l] = mask[l, k] = True
    return mask


# ---------------------------------------------------------
# M-matrix and groupings
# ---------------------------------------------------------


def test_alamouti_is_orthogonal(alamouti_code):
    M = m_matrix(alamouti_code.basis)
    assert M.exact
    off = ~np.eye(4, dtype=bool)
    assert M.mask[off].all()
    assert np.all(np.diag(M.array) > 0)


def test_alamouti_single_symbol_grouping(alamouti_code):
    result = detect_grouping(m_matrix(alamouti_code.basis))
    assert result.kind == "g_group"
    assert result.groups == [[1], [2], [3], [4]]
    assert result.exponent == 1
    assert result.verified
    assert diagonal_block_exponent(m_matrix(alamouti_code.basis)) == 1


def test_detect_two_groups():
    mask = _mask(4, [(0, 2), (0, 3), (1, 2), (1, 3)])
    result = detect_grouping(mask)
    assert result.kind == "g_group"
    assert result.groups == [[1, 2], [3, 4]]
    assert result.exponent == 2


def test_detect_conditional_grouping():
    result = detect_grouping(_mask(3, [(0, 1)]))
    assert result.kind == "conditional"
    assert result.groups == [[1], [2]]
    assert result.conditioned == [3]
    assert result.exponent == 2


def test_no_grouping_in_dense_mask():
    result = detect_grouping(np.zeros((3, 3), dtype=bool))
    assert result.kind == "none"
    assert result.exponent == 3


def test_partition_violations_are_reported():
    result = verify_partition(np.zeros((2, 2), dtype=bool), Partition(groups=[[1], [2]]))
    assert not result.verified
    assert result.violations == [(1, 2)]
    assert result.exponent == 2


def test_empty_group_rejected():
    with pytest.raises(ValidationError):
        Partition(groups=[[1], []])


def test_implied_r_zeros():
    mask = _mask(3, [(0, 2), (1, 2)])
    assert implied_r_zeros(mask) == {(0, 2), (1, 2)}
    chain = _mask(3, [(0, 2)])
    assert implied_r_zeros(chain) == {(0, 2)}
    assert implied_r_zeros(chain, order=[1, 0, 2]) == set()


# ---------------------------------------------------------
# Code reports
# ---------------------------------------------------------


@pytest.mark.parametrize("theta", ["-17", "-1", "i"])
def test_iterated_silver_leading_block_is_orthogonal(theta):
    M = m_matrix(iter_silver(theta).basis)
    leading = M.mask[:4, :4]
    assert leading[~np.eye(4, dtype=bool)].all()
    assert diagonal_block_exponent(M) == 13


def test_iterated_silver_hint_verifies(iter_silver_grouped):
    report = analyze_code(iter_silver_grouped)
    assert report.grouping.verified
    assert report.grouping.kind == "conditional"
    assert report.grouping.exponent == 10
    assert report.diagonal_block_exponent == 13
    assert all(report.assumptions.values())


def test_scaled_silver_mask_has_conditional_four_group_shape():
    nonzero = ~m_matrix(iter_silver("-1", scaled=True).basis).mask
    assert "".join("t" if v else "0" for v in nonzero[0]) == "t000tttt00t0tttt"
    # first eight rows in partition order, read as 2x2 blocks
    order = grouping_order(verify_partition(~nonzero, SILVER_HINT))
    rows = nonzero[np.ix_(order[:8], order)]
    for r in range(4):
        for c in range(8):
            block = rows[2 * r:2 * r + 2, 2 * c:2 * c + 2]
            if c < 4 and c != r:
                assert not block.any(), (r, c)
            else:
                assert block.any(), (r, c)


def test_degree3_basis_orthogonality():
    # mu_1 V_j lambda(e)^k against mu_2 V_l lambda(e)^k
    mask = m_matrix(make_code("deg3_ex1").basis).mask
    assert mask.shape == (18, 18)
    for k in range(3):
        for j in range(3):
            for l in range(3):
                assert mask[6 * k + j, 6 * k + 3 + l]


@pytest.mark.slow
def test_iterated_degree3_exponent_from_mask():
    code = make_code("iter_deg3_ex1", theta="-1")
    mask = m_matrix(code.basis).mask
    for i in range(6):
        for j in range(6):
            assert mask[i, 18 + j]
    report = analyze_code(code)
    assert report.grouping.verified
    assert report.grouping.exponent == 30


def test_iterated_silver_block_exponent(iter_silver_diverse):
    report = analyze_code(iter_silver_diverse)
    assert report.diagonal_block_exponent == 13
    assert report.claimed_exponent == 13


# ---------------------------------------------------------
# Determinant scans
# ---------------------------------------------------------


def test_alamouti_min_det_exhaustive(alamouti_code):
    result = min_det_scan(alamouti_code, [-2, 0, 2], mode="exhaustive")
    assert result.evaluated == 80
    assert result.count_zero == 0
    assert result.min_abs_det == pytest.approx(4.0)


def test_jafarkhani_has_vanishing_determinants(jafarkhani_code):
    result = min_det_scan(jafarkhani_code, [-2, 0, 2], mode="exhaustive")
    assert result.count_zero > 0
    assert result.min_abs_det == 0.0
    for g in result.zero_witnesses:
        assert exact_codeword(jafarkhani_code.basis, g).det().is_zero()


def test_jafarkhani_known_zero(jafarkhani_code):
    g = [0, 0, 1, 0, 1, 0, 0, 0]
    assert exact_codeword(jafarkhani_code.basis, g).det().is_zero()


def test_random_scan_independent_of_workers(jafarkhani_code):
    one = min_det_scan(jafarkhani_code, [-1, 1], samples=40000, seed=3, workers=1)
    two = min_det_scan(jafarkhani_code, [-1, 1], samples=40000, seed=3, workers=2)
    assert one.evaluated == two.evaluated == 40000
    assert one.count_zero == two.count_zero
    assert one.min_abs_det == two.min_abs_det


def test_exhaustive_budget(iter_silver_diverse):
    with pytest.raises(BudgetExceededError):
        min_det_scan(iter_silver_diverse, [-1, 0, 1], mode="exhaustive", budget=1000)


def test_unknown_scan_mode(alamouti_code):
    with pytest.raises(ValueError):
        min_det_scan(alamouti_code, [-1, 1], mode="lattice")


# ---------------------------------------------------------
# Norm equations
# ---------------------------------------------------------


def test_norm_equation_solved_by_e():
    alg = alamouti_algebra()
    result = norm_equation_search(alg, alg.sigma, "-1", bound=1)
    assert result.found
    assert result.z == ["0", "1"]
    assert result.denominator == 1


def test_norm_equation_solved_by_one():
    alg = alamouti_algebra()
    result = norm_equation_search(alg, alg.sigma, "1", bound=1)
    assert result.found
    assert result.z == ["1", "0"]


@pytest.mark.slow
def test_no_small_solution_for_silver_theta():
    alg = silver_algebra()
    result = norm_equation_search(alg, alg.sigma, "-17", bound=2)
    assert not result.found
    assert result.candidates_checked == 2 * (5**8 - 1)


def test_norm_search_budget():
    alg = silver_algebra()
    with pytest.raises(BudgetExceededError):
        norm_equation_search(alg, alg.sigma, "-17", bound=10)


# ---------------------------------------------------------
# Theta criteria
# ---------------------------------------------------------


def test_degree3_theta_check():
    K = q_zeta7_i()
    tau = K.automorphism("tau")
    assert degree3_theta_check(K("i*sqrt7"), tau)
    assert not degree3_theta_check(K(-1), tau)
    Kr = q_zeta7()
    assert degree3_theta_check(Kr("sqrtm7"), Kr.automorphism("tau"))


def test_golden_theta_is_certified():
    report = quaternion_theta_check(gaussian(), 5, "i", "1-i")
    assert report.verdict == "division-certified"
    assert report.condition1_certified and report.condition2_certified
    assert report.square_class.norm_obstruction == {"automorphism": "conj", "norm": "2"}
    assert [c.prime for c in report.springer] == [repr(gaussian()("2+i"))]


def test_inert_prime_certificate():
    report = quaternion_theta_check(gaussian(), 3, "1+i", "1-i")
    assert report.verdict == "division-certified"
    assert any(c.residue_field == "F_9" for c in report.springer)


def test_sign_shortcut_over_q():
    report = quaternion_theta_check(rationals(), -1, -1, -3)
    assert report.sign_shortcut
    assert report.verdict == "division-certified"


def test_square_ratio_is_a_counterexample():
    report = quaternion_theta_check(rationals(), -1, -1, -1)
    assert report.square_class.is_square
    assert report.verdict == "counterexample"


def test_three_squares_certificate():
    report = quaternion_theta_check(q_sqrtm7(), -1, -1, -17)
    assert report.three_squares_obstruction
    assert report.verdict == "division-certified"


# ---------------------------------------------------------
# Determinant location
# ---------------------------------------------------------


def test_iterated_silver_determinants_in_fixed_field(iter_silver_diverse):
    report = det_center_check(iter_silver_diverse, samples=10, seed=1)
    assert report.applicable
    assert report.all_invariant
    assert report.witnesses == []


def test_iterated_golden_determinants_in_fixed_field():
    report = det_center_check(iter_golden(), samples=100)
    assert report.applicable
    assert report.all_invariant
    assert report.zero_determinants == 0


@pytest.mark.slow
@pytest.mark.parametrize("build", [lambda: iter_silver("-17"), iter_golden], ids=["iter_silver", "iter_golden"])
def test_fully_diverse_iterated_codes(build):
    code = build()
    with pytest.raises(BudgetExceededError):
        min_det_scan(code, [-2, 0, 2], mode="exhaustive")
    for alphabet in ([-2, 0, 2], list(range(-4, 5))):
        result = min_det_scan(code, alphabet, mode="random", samples=1_000_000, seed=4)
        assert result.evaluated > 990_000
        assert result.count_zero == 0
        assert result.min_abs_det > 0


def test_det_center_not_applicable_to_base_codes(silver_code):
    report = det_center_check(silver_code)
    assert not report.applicable
    assert report.reason == "code is not iterated"
