from fractions import Fraction

import numpy as np
import pytest
from pydantic import ValidationError

from iterstbc.errors import FieldMismatchError, FieldSpecError, ZeroDivisionFieldError
from iterstbc.fields import gaussian, get_field, q_i_sqrtm7, q_sqrt5, q_sqrtm7, q_zeta7, rationals
from iterstbc.numfield import FieldSpec, field_from_min_poly, field_make

# ---------------------------------------------------------
# Arithmetic
# ---------------------------------------------------------


def test_gaussian_arithmetic():
    K = gaussian()
    i = K("i")
    assert i * i == -1
    assert K("1+i") * K("1-i") == 2
    assert (K("3+4*i") / K("1+2*i")) * K("1+2*i") == K("3+4*i")
    assert K("2*i").inverse() == K("-i/2")


def test_golden_ratio_relation():
    K = q_sqrt5()
    phi = K("phi")
    assert phi * phi == phi + 1
    assert abs(phi.embed() - (1 + 5**0.5) / 2) < 1e-12


def test_zeta7_relations():
    K = q_zeta7()
    zeta = K("zeta")
    assert zeta**7 == 1
    assert K("sqrtm7") ** 2 == -7
    assert K("eta1") + K("eta2") + K("zeta**3 + zeta**4") == -1


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroDivisionFieldError):
        gaussian().zero.inverse()


def test_rational_coercion_and_equality():
    K = gaussian()
    assert K(Fraction(1, 2)) + K(Fraction(1, 2)) == 1
    assert K.from_rational(3).is_rational()
    assert K(3).to_fraction() == 3
    with pytest.raises(FieldSpecError):
        K("i").to_fraction()


def test_coerce_up_the_tower():
    base, K = q_sqrtm7(), q_i_sqrtm7()
    assert K.coerce(base("sqrtm7")) == K("sqrtm7")
    assert K("sqrt7") ** 2 == 7
    assert K("i") * K("sqrt7") == K("sqrtm7")


def test_mixed_fields_do_not_multiply():
    with pytest.raises(FieldMismatchError):
        gaussian().mul(gaussian()("i"), q_sqrt5()("sqrt5"))


def test_unknown_symbol_raises():
    with pytest.raises(FieldSpecError):
        gaussian()("sqrt5")


# ---------------------------------------------------------
# Automorphisms and Galois data
# ---------------------------------------------------------


def test_conjugation_order_and_action():
    K = gaussian()
    conj = K.automorphism("conj")
    assert conj.order == 2
    assert conj(K("2+3*i")) == K("2-3*i")
    assert conj.compose(conj).is_identity()


def test_zeta7_galois_group():
    K = q_zeta7()
    assert K.is_galois()
    assert len(K.galois_group) == 6
    assert K.automorphism("sigma2").order == 3
    assert K.automorphism("tau")(K("sqrtm7")) == -K("sqrtm7")


def test_total_reality():
    assert rationals().is_totally_real()
    assert q_sqrt5().is_totally_real()
    assert not gaussian().is_totally_real()


def test_unknown_automorphism_raises():
    with pytest.raises(FieldSpecError):
        gaussian().automorphism("sigma")


# ---------------------------------------------------------
# Square roots and norms
# ---------------------------------------------------------


def test_square_roots_in_gaussian_field():
    K = gaussian()
    root = K.sqrt(K(-4))
    assert root is not None and root * root == -4
    assert K.sqrt(K(2)) is None
    assert K.is_square(K("2*i"))


def test_norm_to_q():
    K = gaussian()
    assert K.norm_to_q(K("1+i")) == 2
    assert q_sqrt5().norm_to_q(q_sqrt5()("phi")) == -1


def test_norm_obstruction_for_non_square():
    K = gaussian()
    assert K.norm_obstruction(K(3)) is None
    witness = K.norm_obstruction(K("1+i"))
    assert witness == {"automorphism": "norm to Q", "norm": "2"}


# ---------------------------------------------------------
# Specs and validation
# ---------------------------------------------------------


def test_reducible_polynomial_rejected():
    with pytest.raises(FieldSpecError):
        field_from_min_poly("bad", [-1, 0, 1], 1)


def test_non_ring_map_rejected():
    with pytest.raises(FieldSpecError):
        field_from_min_poly("Q(sqrt2)'", [-2, 0, 1], 2**0.5, automorphism_images={"bad": [0, 2]})


def test_embedding_mismatch_rejected():
    spec = {
        "name": "wrong",
        "degree": 2,
        "basis": ["1", "i"],
        "mult_table": [[["1", "0"], ["0", "1"]], [["0", "1"], ["1", "0"]]],
        "embedding": [["1", "0"], ["0", "1"]],
    }
    with pytest.raises(FieldSpecError):
        field_make(spec)


def test_spec_shape_validation():
    with pytest.raises(ValidationError):
        FieldSpec(name="x", degree=2, basis=["1"], mult_table=[[["1"]]], embedding=[("1", "0")])


def test_spec_rebuild_matches(rng):
    K = get_field("Q(i,sqrt-7)")
    clone = field_make(K.spec.model_dump())
    for _ in range(5):
        x = K.random_element(rng)
        y = K.random_element(rng)
        xc, yc = clone.element(x.coeffs), clone.element(y.coeffs)
        assert (x * y).coeffs == (xc * yc).coeffs
        assert np.isclose(x.embed(), xc.embed())


def test_get_field_unknown():
    with pytest.raises(FieldSpecError):
        get_field("Q(cbrt2)")
