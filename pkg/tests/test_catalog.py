import json

import numpy as np
import pytest

from iterstbc.algebra import exact_codeword
from iterstbc.analysis import analyze_code
from iterstbc.catalog import (
    SILVER_HINT,
    CodeSpec,
    export_code,
    golden,
    import_code,
    iter_alamouti_real,
    iter_golden,
    iter_silver,
    list_codes,
    make_code,
    silver_codeword,
)
from iterstbc.decode import build_real_lattice
from iterstbc.errors import CatalogError

EXPECTED_KAPPA = {
    "alamouti": 4,
    "golden": 8,
    "silver": 8,
    "jafarkhani": 8,
    "iter_alamouti": 8,
    "iter_silver": 16,
    "iter_golden": 16,
    "iter_alamouti_real": 16,
}


def test_catalog_names():
    names = list_codes()
    for name in EXPECTED_KAPPA:
        assert name in names
    for name in ("deg3_ex1", "deg3_ex2", "iter_deg3_ex1", "iter_deg3_ex2"):
        assert name in names


@pytest.mark.parametrize("name,kappa", sorted(EXPECTED_KAPPA.items()))
def test_dimensions(name, kappa):
    code = make_code(name)
    assert code.kappa == kappa
    assert code.side == (2 * code.n if code.iterated else code.n)
    assert np.isclose(np.sum(np.abs(code.float_basis) ** 2), code.side)


def test_unknown_code():
    with pytest.raises(CatalogError):
        make_code("diamond")


def test_invalid_override():
    with pytest.raises(CatalogError):
        make_code("alamouti", theta="-1")


def test_theta_outside_field():
    with pytest.raises(CatalogError):
        make_code("iter_silver", theta="sqrt5")


def test_empty_basis_rejected():
    with pytest.raises(CatalogError):
        CodeSpec("empty", 2, [])


# ---------------------------------------------------------
# Base codes
# ---------------------------------------------------------


def test_alamouti_basis(alamouti_code):
    B = alamouti_code.raw_float_basis
    assert np.allclose(B[0], np.eye(2))
    assert np.allclose(B[1], np.diag([1j, -1j]))
    assert np.allclose(B[2], [[0, -1], [1, 0]])
    assert np.allclose(B[3], [[0, 1j], [1j, 0]])


def test_silver_matches_closed_form(silver_code, rng):
    for _ in range(5):
        g = rng.integers(-3, 4, size=8)
        x = g[0::2] + 1j * g[1::2]
        X = np.tensordot(g.astype(float), silver_code.raw_float_basis, axes=1)
        assert np.allclose(X, silver_codeword(*x))


def test_golden_determinants_nonzero(rng):
    code = golden()
    for _ in range(5):
        g = [int(v) for v in rng.integers(-2, 3, size=code.kappa)]
        if any(g):
            assert not exact_codeword(code.basis, g).det().is_zero()


# ---------------------------------------------------------
# Iterated codes
# ---------------------------------------------------------


def test_iter_silver_claims(iter_silver_grouped, iter_silver_diverse):
    assert iter_silver_grouped.fully_diverse_claim == "no"
    assert iter_silver_grouped.claimed_exponent == 10
    assert iter_silver_grouped.hint == SILVER_HINT
    assert iter_silver_diverse.fully_diverse_claim == "yes"
    assert iter_silver_diverse.claimed_exponent == 13
    assert iter_silver_diverse.hint is None


@pytest.mark.parametrize("theta", ["-1", "-5", "-17"])
def test_scaled_negative_theta_claims_exponent_10(theta):
    code = iter_silver(theta, scaled=True)
    assert code.claimed_exponent == 10
    assert code.hint == SILVER_HINT
    report = analyze_code(code)
    assert report.grouping.verified
    assert report.grouping.exponent == 10


def test_unscaled_and_complex_theta_keep_exponent_13():
    assert iter_silver("-5").claimed_exponent == 13
    code = iter_silver("i")
    assert code.claimed_exponent == 13
    assert code.hint is None


def test_iterated_first_half_is_block_diagonal(iter_silver_diverse):
    B = iter_silver_diverse.raw_float_basis
    assert np.allclose(B[:8, :2, 2:], 0)
    assert np.allclose(B[:8, 2:, :2], 0)
    assert np.allclose(B[8:, :2, :2], 0)


def test_jafarkhani_is_iterated_alamouti(jafarkhani_code):
    assert jafarkhani_code.name == "jafarkhani"
    assert jafarkhani_code.fully_diverse_claim == "no"
    assert np.allclose(jafarkhani_code.raw_float_basis, make_code("iter_alamouti", theta="-1").raw_float_basis)


def test_real_base_pairs_are_proportional():
    code = iter_alamouti_real()
    B = code.raw_float_basis
    for j in range(4):
        assert np.allclose(B[j + 4], np.sqrt(2) * B[j])
    assert code.fully_diverse_claim == "no"


@pytest.mark.parametrize("name,rank", [("iter_alamouti_real", 8), ("silver", 8), ("iter_silver", 16)])
def test_rank_under_identity_padded_channel(name, rank):
    code = make_code(name)
    L = build_real_lattice(code, np.eye(code.default_n_rx, code.side))
    assert L.rank == rank
    assert L.full_rank == (rank == code.kappa)


def test_iter_golden_defaults():
    code = iter_golden()
    assert code.fully_diverse_claim == "yes"
    assert code.params.theta == code.field("1-i")


# ---------------------------------------------------------
# Export
# ---------------------------------------------------------


def test_export_import(iter_silver_grouped):
    export = export_code(iter_silver_grouped)
    data = json.loads(export.model_dump_json())
    assert data["kappa"] == 16
    assert data["params"]["theta"] == "-1"
    assert data["hint"]["conditioned"] == [5, 6, 7, 8, 13, 14, 15, 16]
    clone = import_code(export.model_dump_json())
    assert clone.kappa == 16
    assert np.allclose(clone.raw_float_basis, iter_silver_grouped.raw_float_basis)
    assert clone.hint == iter_silver_grouped.hint


@pytest.mark.slow
def test_degree3_codes():
    base = make_code("deg3_ex1")
    assert base.kappa == 18 and base.side == 3
    code = make_code("iter_deg3_ex2", theta="-1")
    assert code.kappa == 36 and code.side == 6
    assert code.claimed_exponent == 30
