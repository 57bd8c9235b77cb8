import pytest

from iterstbc.errors import ResidueError
from iterstbc.fields import gaussian, q_sqrtm7, rationals
from iterstbc.forms import (
    FiniteField,
    QuadraticForm,
    ResiduePrime,
    anisotropic_over_fq,
    prime_divisors,
    springer_certificate,
    three_squares_obstruction,
)

# ---------------------------------------------------------
# Finite fields
# ---------------------------------------------------------


def test_prime_field_squares():
    ff = FiniteField(7)
    squares = {x for x in ff.elements() if ff.is_square(x) and not ff.is_zero(x)}
    assert squares == {(1, 0), (2, 0), (4, 0)}


def test_quadratic_extension_inverse():
    ff = FiniteField(3, 2, -1)
    assert ff.q == 9
    for x in ff.elements():
        if not ff.is_zero(x):
            assert ff.mul(x, ff.inverse(x)) == ff(1)


def test_invalid_finite_fields():
    with pytest.raises(ResidueError):
        FiniteField(4)
    with pytest.raises(ResidueError):
        FiniteField(5, 2, -1)


def test_binary_forms_over_f5():
    ff = FiniteField(5)
    assert anisotropic_over_fq([ff(1), ff(-3)], ff)
    assert not anisotropic_over_fq([ff(1), ff(-1)], ff)
    assert anisotropic_over_fq([ff(1), ff(2)], ff)


def test_ternary_forms_are_isotropic():
    ff = FiniteField(3)
    assert not anisotropic_over_fq([ff(1), ff(1), ff(1)], ff)


def test_zero_residue_coefficient_raises():
    ff = FiniteField(5)
    with pytest.raises(ResidueError):
        anisotropic_over_fq([ff(1), ff(5)], ff)


# ---------------------------------------------------------
# Primes and residues
# ---------------------------------------------------------


def test_split_gaussian_prime():
    F = gaussian()
    rp = ResiduePrime(F, F("2+i"))
    assert rp.p == 5 and not rp.inert
    assert rp.reduce(F("i")) == (3, 0)
    assert rp.valuation(F(-5)) == 1
    assert rp.valuation(F("5*i")) == 1
    assert rp.valuation(F("-1+i")) == 0


def test_inert_gaussian_prime():
    F = gaussian()
    rp = ResiduePrime(F, F(3))
    assert rp.inert
    assert str(rp.residue_field) == "F_9"
    assert rp.reduce(F("-1+i")) == (2, 1)


def test_non_prime_rejected():
    with pytest.raises(ResidueError):
        ResiduePrime(gaussian(), gaussian()(5))
    with pytest.raises(ResidueError):
        ResiduePrime(rationals(), rationals()(6))


def test_prime_divisors():
    F = gaussian()
    assert prime_divisors(F, F(5)) == [F("2+i"), F("2-i")]
    assert prime_divisors(F, F("1-i")) == [F("1+i")]
    Q = rationals()
    assert prime_divisors(Q, Q(12)) == [Q(2), Q(3)]
    with pytest.raises(ResidueError):
        prime_divisors(q_sqrtm7(), q_sqrtm7()(3))


# ---------------------------------------------------------
# Springer certificates
# ---------------------------------------------------------


def test_springer_at_three_over_q():
    Q = rationals()
    form = QuadraticForm.of(Q, [1, 1, 3, 3])
    cert = springer_certificate(form, Q(3))
    assert cert is not None
    assert cert.unit_indices == [0, 1]
    assert cert.residue_field == "F_3"


def test_springer_golden_chain():
    F = gaussian()
    # <1, -a, gamma*a, -theta> with a = 5, gamma = i, theta = 1 - i
    form = QuadraticForm.of(F, [1, -5, "5*i", "-1+i"])
    cert = springer_certificate(form, F("2+i"))
    assert cert is not None
    assert cert.unit_form == [(1, 0), (2, 0)]
    assert cert.residue_form == [(1, 0), (2, 0)]
    # at the conjugate prime the unit form <1, 1> is isotropic
    assert springer_certificate(form, F("2-i")) is None


def test_springer_not_issued_at_two():
    Q = rationals()
    assert springer_certificate(QuadraticForm.of(Q, [1, 1, 2, 2]), Q(2)) is None


def test_zero_coefficient_form_rejected():
    with pytest.raises(ResidueError):
        QuadraticForm.of(rationals(), [1, 0])


# ---------------------------------------------------------
# Sums of three squares
# ---------------------------------------------------------


def test_three_squares_over_q():
    Q = rationals()
    assert three_squares_obstruction(Q, Q(7))
    assert three_squares_obstruction(Q, Q(28))
    assert not three_squares_obstruction(Q, Q(3))
    assert not three_squares_obstruction(Q, Q(14))


def test_three_squares_over_q_sqrt_m7():
    K = q_sqrtm7()
    assert three_squares_obstruction(K, K(-17))
    assert not three_squares_obstruction(K, K(-3))


def test_three_squares_unsupported_field():
    with pytest.raises(ResidueError):
        three_squares_obstruction(gaussian(), gaussian()(7))
