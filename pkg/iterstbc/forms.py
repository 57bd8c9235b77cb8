"""
Diagonal quadratic forms, residue fields and local anisotropy certificates.

Supported ground fields for residues are Q and Q(i); Q(sqrt(-7)) is
supported for the 2-adic sum-of-three-squares test.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterator, Optional, Sequence

import sympy
from pydantic import BaseModel

from .errors import ResidueError
from .numfield import Field, FieldElement

logger = logging.getLogger(__name__)

# Largest number of projective points enumerated before falling back to
# closed forms (m = 2) or Chevalley-Warning (m >= 3).
MAX_PROJECTIVE_POINTS = 2_000_000

FFElement = tuple[int, int]


@dataclass(frozen=True)
class FiniteField:
    """F_p (k=1) or F_p[t]/(t^2 - nonresidue) (k=2); elements are pairs (a, b) = a + b*t."""

    p: int
    k: int = 1
    nonresidue: int = -1

    def __post_init__(self):
        if not sympy.isprime(self.p):
            raise ResidueError(f"{self.p} is not prime")
        if self.k not in (1, 2):
            raise ResidueError("only prime fields and quadratic extensions are supported")
        if self.k == 2 and self.p != 2 and pow(self.nonresidue % self.p, (self.p - 1) // 2, self.p) == 1:
            raise ResidueError(f"{self.nonresidue} is a square mod {self.p}")

    @property
    def q(self) -> int:
        return self.p**self.k

    def __call__(self, a: int, b: int = 0) -> FFElement:
        return (a % self.p, (b % self.p) if self.k == 2 else 0)

    def add(self, x: FFElement, y: FFElement) -> FFElement:
        return self(x[0] + y[0], x[1] + y[1])

    def mul(self, x: FFElement, y: FFElement) -> FFElement:
        a, b = x
        c, d = y
        return self(a * c + self.nonresidue * b * d, a * d + b * c)

    def neg(self, x: FFElement) -> FFElement:
        return self(-x[0], -x[1])

    def pow(self, x: FFElement, e: int) -> FFElement:
        result = self(1)
        while e:
            if e & 1:
                result = self.mul(result, x)
            x = self.mul(x, x)
            e >>= 1
        return result

    def inverse(self, x: FFElement) -> FFElement:
        if self.is_zero(x):
            raise ResidueError("inverse of zero in residue field")
        return self.pow(x, self.q - 2)

    def is_zero(self, x: FFElement) -> bool:
        return x == (0, 0)

    def is_square(self, x: FFElement) -> bool:
        if self.is_zero(x):
            return True
        if self.p == 2:
            return True
        return self.pow(x, (self.q - 1) // 2) == self(1)

    def elements(self) -> Iterator[FFElement]:
        if self.k == 1:
            for a in range(self.p):
                yield (a, 0)
        else:
            for a, b in product(range(self.p), repeat=2):
                yield (a, b)

    def __str__(self) -> str:
        return f"F_{self.q}"


def _projective_points(ff: FiniteField, m: int) -> Iterator[tuple[FFElement, ...]]:
    """Representatives with first nonzero coordinate equal to 1."""
    one, zero = ff(1), ff(0)
    for lead in range(m):
        for tail in product(list(ff.elements()), repeat=m - lead - 1):
            yield (zero,) * lead + (one,) + tail


def anisotropic_over_fq(coeffs: Sequence[FFElement], ff: FiniteField) -> bool:
    """True iff sum a_i x_i^2 has no nontrivial zero over ff."""
    m = len(coeffs)
    if any(ff.is_zero(a) for a in coeffs):
        raise ResidueError("zero residue coefficient: the form degenerates")
    if m <= 1:
        return True
    points = (ff.q**m - 1) // (ff.q - 1)
    if points <= MAX_PROJECTIVE_POINTS:
        squares = {x: ff.mul(x, x) for x in ff.elements()}
        for point in _projective_points(ff, m):
            total = ff(0)
            for a, x in zip(coeffs, point):
                total = ff.add(total, ff.mul(a, squares[x]))
            if ff.is_zero(total):
                return False
        return True
    if m == 2:
        ratio = ff.mul(ff.neg(coeffs[0]), ff.inverse(coeffs[1]))
        return not ff.is_square(ratio)
    # Chevalley-Warning: three or more variables always have a zero
    return False


class QuadraticForm(BaseModel):
    """Diagonal form <a_1, ..., a_m> over a number field."""

    model_config = {"arbitrary_types_allowed": True, "frozen": True}

    field: Field
    coeffs: tuple[FieldElement, ...]

    @classmethod
    def of(cls, field: Field, coeffs: Sequence) -> "QuadraticForm":
        elems = tuple(field(c) if not isinstance(c, FieldElement) else field.coerce(c) for c in coeffs)
        if any(c.is_zero() for c in elems):
            raise ResidueError("quadratic form coefficients must be nonzero")
        return cls(field=field, coeffs=elems)

    def evaluate(self, vector: Sequence[FieldElement]) -> FieldElement:
        total = self.field.zero
        for a, x in zip(self.coeffs, vector):
            total = total + a * x * x
        return total


# -- primes and valuations ------------------------------------------------------------------


def _is_gaussian(field: Field) -> bool:
    return field.degree == 2 and "i" in field.generators and field.generators["i"].num == (0, 1)


def _gaussian_parts(x: FieldElement) -> tuple[int, int, int]:
    """x = (u + v i) / d with integers u, v, d."""
    return x.num[0], x.num[1], x.den


def _gaussian_divmod_exact(w: tuple[int, int], pi: tuple[int, int]) -> Optional[tuple[int, int]]:
    """w / pi if it is a Gaussian integer."""
    a, b = w
    c, d = pi
    n = c * c + d * d
    re, im = a * c + b * d, b * c - a * d
    if re % n or im % n:
        return None
    return re // n, im // n


def _gaussian_valuation(w: tuple[int, int], pi: tuple[int, int]) -> int:
    if w == (0, 0):
        raise ResidueError("valuation of zero")
    v = 0
    while True:
        q = _gaussian_divmod_exact(w, pi)
        if q is None:
            return v
        w, v = q, v + 1


class ResiduePrime:
    """A prime of O_F for F = Q or Q(i) with its valuation and reduction maps."""

    def __init__(self, field: Field, prime: FieldElement):
        self.field = field
        self.prime = field.coerce(prime)
        if field.degree == 1:
            p = self.prime.to_fraction()
            if p.denominator != 1 or not sympy.isprime(abs(p.numerator)):
                raise ResidueError(f"{prime!r} does not generate a prime ideal of Z")
            self.p = abs(p.numerator)
            self.gaussian = False
            self.residue_field = FiniteField(self.p)
        elif _is_gaussian(field):
            u, v, d = _gaussian_parts(self.prime)
            if d != 1:
                raise ResidueError(f"{prime!r} is not a Gaussian integer")
            self.gaussian = True
            self.pi = (u, v)
            norm = u * u + v * v
            if sympy.isprime(norm):
                self.p = norm
                self.inert = False
                self.residue_field = FiniteField(norm)
                # i = -u/v mod pi when v is a unit mod p
                self._i_image = (-u * pow(v, -1, norm)) % norm if norm != 2 else 1
            else:
                root = math.isqrt(norm)
                if root * root != norm or not sympy.isprime(root) or root % 4 != 3 or u * v != 0:
                    raise ResidueError(f"{prime!r} does not generate a prime ideal of Z[i]")
                self.p = root
                self.inert = True
                self.residue_field = FiniteField(root, 2, -1)
        else:
            raise ResidueError(f"residues over {field.name} are not supported")

    @property
    def odd(self) -> bool:
        return self.p != 2

    def valuation(self, x: FieldElement) -> int:
        x = self.field.coerce(x)
        if x.is_zero():
            raise ResidueError("valuation of zero")
        if not self.gaussian:
            q = x.to_fraction()
            return _padic(q.numerator, self.p) - _padic(q.denominator, self.p)
        u, v, d = _gaussian_parts(x)
        return _gaussian_valuation((u, v), self.pi) - _gaussian_valuation((d, 0), self.pi)

    def reduce(self, x: FieldElement) -> FFElement:
        """Residue of an element of valuation >= 0."""
        x = self.field.coerce(x)
        ff = self.residue_field
        if not x.is_zero() and self.valuation(x) < 0:
            raise ResidueError(f"{x!r} is not integral at {self.prime!r}")
        if not self.gaussian:
            q = x.to_fraction()
            return ff(q.numerator * pow(q.denominator, -1, self.p))
        u, v, d = _gaussian_parts(x)
        # strip common factors of the prime from numerator and denominator
        w, den = (u, v), (d, 0)
        while den != (0, 0) and _gaussian_divmod_exact(den, self.pi) is not None:
            den = _gaussian_divmod_exact(den, self.pi)
            w = _gaussian_divmod_exact(w, self.pi)
        num_r = self._reduce_gaussian_integer(w)
        den_r = self._reduce_gaussian_integer(den)
        return ff.mul(num_r, ff.inverse(den_r))

    def _reduce_gaussian_integer(self, w: tuple[int, int]) -> FFElement:
        ff = self.residue_field
        if self.inert:
            return ff(w[0], w[1])
        return ff(w[0] + w[1] * self._i_image)

    def __repr__(self) -> str:
        return f"ResiduePrime({self.prime!r} over {self.field.name}, residue {self.residue_field})"


def _padic(n: int, p: int) -> int:
    if n == 0:
        raise ResidueError("valuation of zero")
    n, v = abs(n), 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def prime_divisors(field: Field, x: FieldElement) -> list[FieldElement]:
    """Primes of O_F dividing the numerator of x (F = Q or Q(i)), in increasing norm."""
    x = field.coerce(x)
    if field.degree == 1:
        n = abs(x.to_fraction().numerator)
        return [field(p) for p in sorted(sympy.factorint(n))] if n > 1 else []
    if not _is_gaussian(field):
        raise ResidueError(f"prime factorization over {field.name} is not supported")
    u, v, _ = _gaussian_parts(x)
    norm = u * u + v * v
    primes = []
    for p in sorted(sympy.factorint(norm)):
        if p == 2:
            candidates = [(1, 1)]
        elif p % 4 == 3:
            candidates = [(p, 0)]
        else:
            a = next(a for a in range(1, math.isqrt(p) + 1) if math.isqrt(p - a * a) ** 2 == p - a * a)
            b = math.isqrt(p - a * a)
            big, small = max(a, b), min(a, b)
            candidates = [(big, small), (big, -small)]
        for pi in candidates:
            if _gaussian_divmod_exact((u, v), pi) is not None:
                primes.append(field.element([pi[0], pi[1]]))
    return primes


# -- Springer -------------------------------------------------------------------------------


class SpringerResidues(BaseModel):
    model_config = {"arbitrary_types_allowed": True}

    prime: str
    residue_field: str
    unit_indices: list[int]
    residue_indices: list[int]
    unit_form: list[FFElement]
    residue_form: list[FFElement]


def springer_residues(form: QuadraticForm, prime: FieldElement) -> tuple[list[FFElement], list[FFElement], ResiduePrime]:
    """Split <a_i> by valuation parity at prime: (unit residues, residues of a_i/prime)."""
    rp = ResiduePrime(form.field, prime)
    units, divided = [], []
    for a in form.coeffs:
        v = rp.valuation(a)
        if v == 0:
            units.append(rp.reduce(a))
        elif v == 1:
            divided.append(rp.reduce(a / rp.prime))
        else:
            raise ResidueError(f"coefficient {a!r} has valuation {v} at {prime!r}")
    return units, divided, rp


def springer_certificate(form: QuadraticForm, prime: FieldElement) -> Optional[SpringerResidues]:
    """Residue data at prime when both residue forms are anisotropic, else None."""
    try:
        units, divided, rp = springer_residues(form, prime)
    except ResidueError as e:
        logger.debug(f"Springer residues unavailable at {prime!r}: {e}")
        return None
    if not rp.odd:
        return None
    ff = rp.residue_field
    try:
        if not (anisotropic_over_fq(units, ff) and anisotropic_over_fq(divided, ff)):
            return None
    except ResidueError:
        return None
    unit_idx = [i for i, a in enumerate(form.coeffs) if rp.valuation(a) == 0]
    return SpringerResidues(
        prime=repr(rp.prime),
        residue_field=str(ff),
        unit_indices=unit_idx,
        residue_indices=[i for i in range(len(form.coeffs)) if i not in unit_idx],
        unit_form=units,
        residue_form=divided,
    )


# -- sums of three squares --------------------------------------------------------------------


def _two_adic_root(precision: int) -> int:
    """Root of x^2 - x + 2 in Z_2 divisible by 2, modulo 2^precision (Hensel lifting)."""
    modulus = 1 << precision
    x = 0
    for _ in range(precision + 1):
        f = x * x - x + 2
        fp = 2 * x - 1
        x = (x - f * pow(fp, -1, modulus)) % modulus
    return x


def three_squares_obstruction(field: Field, theta: FieldElement, precision: int = 40) -> Optional[bool]:
    """Whether theta is provably not a sum of three squares in field.

    Uses the completion at a prime above 2 with residue field F_2 (2 itself for
    Q, (1+sqrt(-7))/2 for Q(sqrt(-7))): theta is a sum of three squares there
    iff it is not of the form 4^k (8m + 7). Returns None when undecided.
    """
    theta = field.coerce(theta)
    if theta.is_zero():
        return False
    if field.degree == 1:
        q = theta.to_fraction()
        a, b = q.numerator, q.denominator
        image_num, image_den = a, b
    elif field.degree == 2 and "sqrtm7" in field.generators and field.generators["sqrtm7"].num == (0, 1):
        # theta = x + y sqrt(-7) = (x - y) + 2y omega with omega = (1 + sqrt(-7))/2
        x, y = theta.coeffs
        w = _two_adic_root(precision)
        value = (x - y) + 2 * y * w
        image_num, image_den = value.numerator, value.denominator
    else:
        raise ResidueError(f"three-squares test over {field.name} is not supported")
    v = _padic(image_num, 2) - _padic(image_den, 2)
    if _padic(image_num, 2) >= precision - 4:
        return None
    if v % 2:
        return False
    unit_num = image_num >> _padic(image_num, 2)
    unit_den = image_den >> _padic(image_den, 2)
    unit = (unit_num * pow(unit_den, -1, 8)) % 8
    return unit == 7
