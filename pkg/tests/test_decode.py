import numpy as np
import pytest

from iterstbc.analysis import analyze_code, grouping_order, implied_r_zeros, m_matrix
from iterstbc.catalog import iter_alamouti_real, list_codes, make_code
from iterstbc.decode import (
    brute_force_ml,
    build_real_lattice,
    metric,
    qr_structure,
    sphere_decode,
    vectorize,
)
from iterstbc.errors import BudgetExceededError, RankDeficientError
from iterstbc.sim import sample_channel


def _received(L, g, rng, sigma=0.0):
    y = L.B @ np.asarray(g, dtype=float)
    return y + sigma * rng.standard_normal(y.shape)


def test_vectorize_is_column_major():
    Y = np.array([[1 + 2j, 3], [4j, 5 - 1j]])
    assert np.allclose(vectorize(Y), [1, 0, 3, 5, 2, 4, 0, -1])


def test_lattice_matches_received_signal(silver_code, rng):
    H, _ = sample_channel(2, 2, rng)
    L = build_real_lattice(silver_code, H)
    g = [1, -1, 1, 1, -1, -1, 1, -1]
    assert np.allclose(L.B @ g, vectorize(H @ silver_code.codeword(g)))


def test_lattice_rank(silver_code, rng):
    H2, _ = sample_channel(2, 2, rng)
    assert build_real_lattice(silver_code, H2).full_rank
    H1, _ = sample_channel(1, 2, rng)
    L1 = build_real_lattice(silver_code, H1)
    assert not L1.full_rank
    assert L1.rank == 4


def test_channel_shape_checked(silver_code, rng):
    H, _ = sample_channel(2, 4, rng)
    with pytest.raises(ValueError):
        build_real_lattice(silver_code, H)


# ---------------------------------------------------------
# Sphere decoding
# ---------------------------------------------------------


@pytest.mark.parametrize("fixture", ["alamouti_code", "silver_code"])
def test_sphere_decoder_is_ml(fixture, request, rng):
    code = request.getfixturevalue(fixture)
    for _ in range(5):
        H, _ = sample_channel(code.default_n_rx, code.side, rng)
        L = build_real_lattice(code, H)
        g = [int(v) for v in rng.choice([-1, 1], size=code.kappa)]
        y = _received(L, g, rng, sigma=0.8)
        sd = sphere_decode(L, y, [-1, 1])
        ml = brute_force_ml(L, y, [-1, 1])
        assert sd.g_hat == ml.g_hat
        assert sd.metric == pytest.approx(ml.metric)
        assert sd.metric == pytest.approx(metric(L.B, y, sd.g_hat))


def _agrees_with_ml(code, alphabet, instances, sigma, rng):
    for _ in range(instances):
        H, _ = sample_channel(code.default_n_rx, code.side, rng)
        L = build_real_lattice(code, H)
        g = [int(v) for v in rng.choice(alphabet, size=code.kappa)]
        y = _received(L, g, rng, sigma=sigma)
        sd = sphere_decode(L, y, alphabet)
        ml = brute_force_ml(L, y, alphabet)
        assert sd.g_hat == ml.g_hat
        assert sd.metric == pytest.approx(ml.metric)


@pytest.mark.slow
@pytest.mark.parametrize("name", ["alamouti", "golden", "silver", "iter_alamouti"])
def test_sphere_decoder_is_ml_for_4pam(name, rng):
    _agrees_with_ml(make_code(name), [-3, -1, 1, 3], 250, 1.0, rng)


@pytest.mark.slow
def test_sphere_decoder_is_ml_for_iterated_silver(iter_silver_diverse, rng):
    _agrees_with_ml(iter_silver_diverse, [-1, 1], 100, 0.5, rng)


def test_noiseless_recovery(silver_code, rng):
    H, _ = sample_channel(2, 2, rng)
    L = build_real_lattice(silver_code, H)
    g = [-1, 1, 1, -1, 1, 1, -1, -1]
    result = sphere_decode(L, L.B @ np.asarray(g, dtype=float), [-1, 1])
    assert result.g_hat == g
    assert result.metric == pytest.approx(0.0, abs=1e-12)


def test_grouping_order_gives_same_decision(iter_silver_grouped, rng):
    code = iter_silver_grouped
    order = grouping_order(analyze_code(code).grouping)
    assert sorted(order) == list(range(code.kappa))
    H, _ = sample_channel(code.default_n_rx, code.side, rng)
    L = build_real_lattice(code, H)
    g = [int(v) for v in rng.choice([-1, 1], size=code.kappa)]
    y = _received(L, g, rng, sigma=0.5)
    natural = sphere_decode(L, y, [-1, 1])
    grouped = sphere_decode(L, y, [-1, 1], order=order)
    assert grouped.g_hat == natural.g_hat
    assert grouped.metric == pytest.approx(natural.metric)


def test_rank_deficient_lattice_is_refused(rng):
    code = iter_alamouti_real()
    H, _ = sample_channel(4, code.side, rng)
    L = build_real_lattice(code, H)
    assert not L.full_rank
    with pytest.raises(RankDeficientError):
        sphere_decode(L, np.zeros(L.B.shape[0]), [-1, 1])


def test_brute_force_budget(silver_code, rng):
    H, _ = sample_channel(2, 2, rng)
    L = build_real_lattice(silver_code, H)
    with pytest.raises(BudgetExceededError):
        brute_force_ml(L, np.zeros(L.B.shape[0]), [-1, 1], budget=100)


# ---------------------------------------------------------
# QR structure
# ---------------------------------------------------------


def test_channel_keeps_orthogonality(iter_silver_grouped, rng):
    code = iter_silver_grouped
    H, _ = sample_channel(2, code.side, rng)
    exact = m_matrix(code.basis).mask
    channel = m_matrix(code.basis, H).mask
    assert np.all(channel[exact])


def test_r_zeros_follow_from_orthogonality(iter_silver_grouped, rng):
    code = iter_silver_grouped
    order = grouping_order(analyze_code(code).grouping)
    H, _ = sample_channel(2, code.side, rng)
    qr = qr_structure(build_real_lattice(code, H), order)
    assert not qr.rank_deficient
    zeros = implied_r_zeros(m_matrix(code.basis), order)
    assert zeros
    for i, j in zeros:
        assert qr.zero_mask[i, j]


# pairs of basis matrices are real multiples of each other
RANK_DEFICIENT = {"iter_alamouti_real"}


@pytest.mark.slow
@pytest.mark.parametrize("name", list_codes())
def test_r_zeros_for_every_code(name):
    code = make_code(name)
    zeros = implied_r_zeros(m_matrix(code.basis))
    rng = np.random.default_rng(7)
    deficient = 0
    for _ in range(50):
        H, _ = sample_channel(code.default_n_rx, code.side, rng)
        qr = qr_structure(build_real_lattice(code, H))
        if qr.rank_deficient:
            deficient += 1
            continue
        assert [(i, j) for i, j in sorted(zeros) if not qr.zero_mask[i, j]] == []
    assert deficient == (50 if name in RANK_DEFICIENT else 0)
