"""
Exact arithmetic in explicit number fields.

A field is a Q-vector space with a declared basis (first element 1), a
multiplication table, named automorphisms acting on coefficient vectors and a
distinguished complex embedding. Elements are rational coefficient vectors
stored as integer numerators over one common denominator.
"""

from __future__ import annotations

import logging
import math
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Iterable, Optional, Sequence, Union

import mpmath
import numpy as np
import sympy
from pydantic import BaseModel, Field as PydanticField, model_validator
from sympy.parsing.sympy_parser import parse_expr

from . import config
from .errors import FieldMismatchError, FieldSpecError, ZeroDivisionFieldError

logger = logging.getLogger(__name__)

Rational = Union[int, Fraction]


def parse_rational(text: Union[str, int, Fraction]) -> Fraction:
    """Parse a "p/q" string (or int) into a Fraction."""
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as e:
        raise FieldSpecError(f"Invalid rational {text!r}: {e}") from e


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class FieldSpec(BaseModel):
    """JSON description of a number field.

    Rationals are "p/q" strings. ``automorphisms`` maps a name to the images of
    the basis elements (one coefficient vector per basis element).
    ``embedding`` holds one ``[re, im]`` decimal pair per basis element.
    """

    name: str
    degree: int = PydanticField(ge=1)
    basis: list[str]
    mult_table: list[list[list[str]]]
    automorphisms: dict[str, list[list[str]]] = {}
    embedding: list[tuple[str, str]]
    conjugation: Optional[str] = None
    generators: dict[str, list[str]] = {}

    @model_validator(mode="after")
    def _check_shapes(self) -> "FieldSpec":
        d = self.degree
        if len(self.basis) != d:
            raise ValueError(f"basis has {len(self.basis)} symbols, degree is {d}")
        if len(self.mult_table) != d or any(len(row) != d for row in self.mult_table):
            raise ValueError("mult_table must be degree x degree")
        for row in self.mult_table:
            for vec in row:
                if len(vec) != d:
                    raise ValueError("mult_table entries must be coefficient vectors of length degree")
        for name, images in self.automorphisms.items():
            if len(images) != d or any(len(v) != d for v in images):
                raise ValueError(f"automorphism {name} must give {d} images of length {d}")
        if len(self.embedding) != d:
            raise ValueError("embedding needs one value per basis element")
        if self.conjugation is not None and self.conjugation not in self.automorphisms:
            raise ValueError(f"conjugation {self.conjugation!r} is not a declared automorphism")
        for name, vec in self.generators.items():
            if len(vec) != d:
                raise ValueError(f"generator {name} has wrong length")
        return self


def _solve_rational(matrix: list[list[Fraction]], rhs: list[Fraction]) -> Optional[list[Fraction]]:
    """Gauss-Jordan elimination over Q. Returns None when singular."""
    n = len(matrix)
    a = [list(row) + [rhs[i]] for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return None
        a[col], a[pivot] = a[pivot], a[col]
        inv = 1 / a[col][col]
        row = [v * inv for v in a[col]]
        a[col] = row
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [v - f * w for v, w in zip(a[r], row)]
    return [a[i][n] for i in range(n)]


def _rational_rank(rows: list[list[Fraction]]) -> int:
    a = [list(r) for r in rows]
    rank = 0
    ncols = len(a[0]) if a else 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(a)) if a[r][col] != 0), None)
        if pivot is None:
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        for r in range(rank + 1, len(a)):
            if a[r][col] != 0:
                f = a[r][col] / a[rank][col]
                a[r] = [v - f * w for v, w in zip(a[r], a[rank])]
        rank += 1
    return rank


class FieldElement:
    """Immutable element of a :class:`Field`."""

    __slots__ = ("field", "num", "den")

    def __init__(self, field: "Field", num: Sequence[int], den: int = 1):
        if den == 0:
            raise ZeroDivisionFieldError("zero denominator")
        if len(num) != field.degree:
            raise FieldSpecError(f"element of {field.name} needs {field.degree} coefficients, got {len(num)}")
        g = math.gcd(den, *num)
        if den < 0:
            g = -g
        if g != 1:
            num = tuple(v // g for v in num)
            den //= g
        else:
            num = tuple(num)
        self.field = field
        self.num = num
        self.den = den

    # -- views ---------------------------------------------------------------

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(v, self.den) for v in self.num)

    def is_zero(self) -> bool:
        return not any(self.num)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise FieldSpecError(f"{self!r} is not rational")
        return Fraction(self.num[0], self.den)

    def to_strings(self) -> list[str]:
        return [format_rational(c) for c in self.coeffs]

    def embed(self) -> complex:
        return self.field.embed(self)

    def __complex__(self) -> complex:
        return self.embed()

    def __repr__(self) -> str:
        terms = []
        for sym, c in zip(self.field.basis_symbols, self.coeffs):
            if c == 0:
                continue
            terms.append(format_rational(c) if sym == "1" else f"{format_rational(c)}*{sym}")
        return " + ".join(terms) if terms else "0"

    # -- arithmetic ------------------------------------------------------------

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field is self.field:
                return other
            return self.field.coerce(other)
        if isinstance(other, (int, Fraction)):
            return self.field.from_rational(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        d1, d2 = self.den, other.den
        return FieldElement(self.field, [a * d2 + b * d1 for a, b in zip(self.num, other.num)], d1 * d2)

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, [-a for a in self.num], self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.field.mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = self.field.one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> "FieldElement":
        return self.field.inverse(self)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.field.from_rational(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        if other.field is not self.field:
            try:
                other = self.field.coerce(other)
            except FieldMismatchError:
                try:
                    return other.field.coerce(self) == other
                except FieldMismatchError:
                    return False
        return self.den == other.den and self.num == other.num

    def __hash__(self) -> int:
        return hash((id(self.field), self.num, self.den))


class Automorphism:
    """Field automorphism given by the images of the basis elements."""

    def __init__(self, field: "Field", name: str, images: Sequence[Sequence[Fraction]]):
        self.field = field
        self.name = name
        self.images = tuple(tuple(Fraction(c) for c in col) for col in images)
        den = 1
        for col in self.images:
            for c in col:
                den = den * c.denominator // math.gcd(den, c.denominator)
        self._den = den
        self._sparse = tuple(
            tuple((l, int(c * den)) for l, c in enumerate(col) if c != 0) for col in self.images
        )

    def __call__(self, x: FieldElement) -> FieldElement:
        if x.field is not self.field:
            raise FieldMismatchError(f"automorphism {self.name} of {self.field.name} applied to element of {x.field.name}")
        out = [0] * self.field.degree
        for j, a in enumerate(x.num):
            if a:
                for l, c in self._sparse[j]:
                    out[l] += a * c
        return FieldElement(self.field, out, x.den * self._den)

    def compose(self, other: "Automorphism", name: Optional[str] = None) -> "Automorphism":
        """Return self o other."""
        images = [self(self.field.element(col)).coeffs for col in other.images]
        return Automorphism(self.field, name or f"{self.name}*{other.name}", images)

    def is_identity(self) -> bool:
        return all(
            all(c == (1 if l == j else 0) for l, c in enumerate(col)) for j, col in enumerate(self.images)
        )

    @cached_property
    def order(self) -> int:
        power = self
        for k in range(1, 2 * self.field.degree + 2):
            if power.is_identity():
                return k
            power = self.compose(power)
        raise FieldSpecError(f"automorphism {self.name} has no finite order")

    def __eq__(self, other) -> bool:
        if not isinstance(other, Automorphism):
            return NotImplemented
        return other.field is self.field and other.images == self.images

    def __hash__(self) -> int:
        return hash((id(self.field), self.images))

    def __repr__(self) -> str:
        return f"Automorphism({self.name} of {self.field.name})"


def _vec_num(vec: Sequence[Fraction]) -> tuple[list[int], int]:
    den = 1
    for c in vec:
        den = den * c.denominator // math.gcd(den, c.denominator)
    return [int(c * den) for c in vec], den


class Field:
    """A validated number field built from a :class:`FieldSpec`."""

    def __init__(self, spec: FieldSpec, base: Optional["Field"] = None):
        self.spec = spec
        self.name = spec.name
        self.degree = spec.degree
        self.basis_symbols = tuple(spec.basis)
        self.base = base

        table = [[[parse_rational(c) for c in vec] for vec in row] for row in spec.mult_table]
        den = 1
        for row in table:
            for vec in row:
                for c in vec:
                    den = den * c.denominator // math.gcd(den, c.denominator)
        self._table_den = den
        self._table = tuple(
            tuple(tuple((l, int(c * den)) for l, c in enumerate(vec) if c != 0) for vec in row) for row in table
        )

        with mpmath.workdps(config.EMBED_DPS):
            self._embed_mp = [mpmath.mpc(mpmath.mpf(re), mpmath.mpf(im)) for re, im in spec.embedding]
        self._embed_np = np.array([complex(v) for v in self._embed_mp], dtype=complex)

        self.zero = FieldElement(self, [0] * self.degree)
        self.one = FieldElement(self, [1] + [0] * (self.degree - 1))

        self._validate_table()
        self.automorphisms: dict[str, Automorphism] = {}
        for name, images in spec.automorphisms.items():
            aut = Automorphism(self, name, [[parse_rational(c) for c in col] for col in images])
            self._validate_automorphism(aut)
            self.automorphisms[name] = aut
        self.conjugation = self.automorphisms.get(spec.conjugation) if spec.conjugation else None
        if self.conjugation is not None:
            self._validate_conjugation(self.conjugation)
        self._validate_embedding()
        self.generators = {
            name: self.element([parse_rational(c) for c in vec]) for name, vec in spec.generators.items()
        }
        logger.debug(f"Field {self.name} of degree {self.degree} validated")

    # -- construction helpers ----------------------------------------------------

    def element(self, coeffs: Iterable[Rational]) -> FieldElement:
        num, den = _vec_num([Fraction(c) for c in coeffs])
        return FieldElement(self, num, den)

    def from_rational(self, q: Rational) -> FieldElement:
        q = Fraction(q)
        return FieldElement(self, [q.numerator] + [0] * (self.degree - 1), q.denominator)

    def basis_element(self, j: int) -> FieldElement:
        num = [0] * self.degree
        num[j] = 1
        return FieldElement(self, num)

    def __call__(self, value) -> FieldElement:
        if isinstance(value, str):
            return parse_element(self, value)
        if isinstance(value, FieldElement):
            return self.coerce(value)
        return self.from_rational(value)

    def coerce(self, x: FieldElement) -> FieldElement:
        """Map an element of a base field of the tower into this field."""
        if x.field is self:
            return x
        if self.base is None:
            raise FieldMismatchError(f"cannot map element of {x.field.name} into {self.name}")
        lower = self.base.coerce(x)
        return FieldElement(self, list(lower.num) + [0] * (self.degree - self.base.degree), lower.den)

    def random_element(self, rng: np.random.Generator, bound: int = 5) -> FieldElement:
        return FieldElement(self, [int(v) for v in rng.integers(-bound, bound + 1, size=self.degree)],
                            int(rng.integers(1, bound + 1)))

    # -- arithmetic ----------------------------------------------------------------

    def mul(self, x: FieldElement, y: FieldElement) -> FieldElement:
        if x.field is not self or y.field is not self:
            raise FieldMismatchError(f"cannot multiply elements of {x.field.name} and {y.field.name}")
        out = [0] * self.degree
        table = self._table
        ynz = [(k, b) for k, b in enumerate(y.num) if b]
        for j, a in enumerate(x.num):
            if not a:
                continue
            row = table[j]
            for k, b in ynz:
                ab = a * b
                for l, c in row[k]:
                    out[l] += ab * c
        return FieldElement(self, out, x.den * y.den * self._table_den)

    def multiplication_matrix(self, x: FieldElement) -> list[list[Fraction]]:
        """Matrix of y -> x*y on coefficient vectors (rows indexed by output)."""
        cols = [self.mul(x, self.basis_element(k)).coeffs for k in range(self.degree)]
        return [[cols[k][l] for k in range(self.degree)] for l in range(self.degree)]

    def inverse(self, x: FieldElement) -> FieldElement:
        if x.field is not self:
            raise FieldMismatchError(f"element of {x.field.name} inverted in {self.name}")
        if x.is_zero():
            raise ZeroDivisionFieldError(f"inversion of zero in {self.name}")
        if x.is_rational():
            return FieldElement(self, [x.den] + [0] * (self.degree - 1), x.num[0])
        rhs = [Fraction(1)] + [Fraction(0)] * (self.degree - 1)
        sol = _solve_rational(self.multiplication_matrix(x), rhs)
        if sol is None:
            raise FieldSpecError(f"{self.name} has zero divisors: {x!r} is not invertible")
        return self.element(sol)

    # -- embedding ------------------------------------------------------------------

    def embed(self, x: FieldElement) -> complex:
        if x.field is not self:
            raise FieldMismatchError(f"element of {x.field.name} embedded through {self.name}")
        total = 0j
        for a, e in zip(x.num, self._embed_np):
            if a:
                total += a * e
        return complex(total / x.den)

    def embed_mp(self, x: FieldElement) -> mpmath.mpc:
        with mpmath.workdps(config.EMBED_DPS):
            total = mpmath.mpc(0)
            for a, e in zip(x.num, self._embed_mp):
                if a:
                    total += a * e
            return total / x.den

    @property
    def basis_embeddings(self) -> np.ndarray:
        return self._embed_np

    # -- Galois structure ---------------------------------------------------------------

    def automorphism(self, name: str) -> Automorphism:
        try:
            return self.automorphisms[name]
        except KeyError:
            raise FieldSpecError(f"{self.name} has no automorphism named {name!r}") from None

    def identity(self) -> Automorphism:
        return Automorphism(self, "id", [self.basis_element(j).coeffs for j in range(self.degree)])

    @cached_property
    def galois_group(self) -> tuple[Automorphism, ...]:
        """Closure of the declared automorphisms under composition."""
        group = [self.identity()]
        frontier = list(group)
        gens = list(self.automorphisms.values())
        while frontier:
            fresh = []
            for g in frontier:
                for s in gens:
                    h = s.compose(g)
                    if h not in group:
                        group.append(h)
                        fresh.append(h)
                        if len(group) > self.degree:
                            raise FieldSpecError(f"{self.name}: automorphism group larger than the degree")
            frontier = fresh
        return tuple(group)

    def is_galois(self) -> bool:
        return len(self.galois_group) == self.degree

    def is_totally_real(self) -> bool:
        for g in self.galois_group:
            for j in range(self.degree):
                if abs(self.embed(g(self.basis_element(j))).imag) > 1e-12:
                    return False
        return True

    @cached_property
    def _conjugate_embedding_inverse(self) -> np.ndarray:
        if not self.is_galois():
            raise FieldSpecError(f"{self.name}: square roots need the full automorphism group")
        emb = np.array(
            [[self.embed(g(self.basis_element(j))) for j in range(self.degree)] for g in self.galois_group]
        )
        return np.linalg.inv(emb)

    def sqrt(self, x: FieldElement, max_den: int = 10**6) -> Optional[FieldElement]:
        """Exact square root of x in this field, or None.

        Solves for the coefficient vector of y with y^2 = x from the conjugate
        embeddings of x, for every sign pattern, and verifies candidates exactly.
        """
        if x.field is not self:
            raise FieldMismatchError(f"element of {x.field.name} passed to {self.name}.sqrt")
        if x.is_zero():
            return self.zero
        if x.is_rational():
            q = x.to_fraction()
            if q > 0:
                rn, rd = math.isqrt(q.numerator), math.isqrt(q.denominator)
                if rn * rn == q.numerator and rd * rd == q.denominator:
                    return self.from_rational(Fraction(rn, rd))
        if self.degree == 1:
            return None
        inv = self._conjugate_embedding_inverse
        values = np.array([self.embed(g(x)) for g in self.galois_group])
        roots = np.sqrt(values.astype(complex))
        signs = np.array([(1,) + s for s in product((1, -1), repeat=self.degree - 1)], dtype=float)
        candidates = (signs * roots) @ inv.T
        for row in candidates:
            if np.max(np.abs(row.imag)) > 1e-6:
                continue
            coeffs = [Fraction(float(v)).limit_denominator(max_den) for v in row.real]
            if any(abs(float(c) - v) > 1e-6 * max(1.0, abs(v)) for c, v in zip(coeffs, row.real)):
                continue
            y = self.element(coeffs)
            if y * y == x:
                return y
        return None

    def is_square(self, x: FieldElement) -> bool:
        return self.sqrt(x) is not None

    def norm_to_q(self, x: FieldElement) -> Fraction:
        result = self.one
        for g in self.galois_group:
            result = result * g(x)
        return result.to_fraction()

    def norm_obstruction(self, x: FieldElement) -> Optional[dict]:
        """Witness that x is not a square: a norm of x that is not a square.

        Checks the absolute norm to Q, then the relative norms x*g(x) for the
        involutions g of the group.
        """
        n = self.norm_to_q(x)
        if n < 0 or not _is_rational_square(n):
            return {"automorphism": "norm to Q", "norm": format_rational(n)}
        for g in self.galois_group:
            if g.is_identity() or not g.compose(g).is_identity():
                continue
            rel = x * g(x)
            if self.sqrt(rel) is None:
                return {"automorphism": g.name, "norm": repr(rel)}
        return None

    def fixed_by(self, x: FieldElement, auts: Iterable[Automorphism]) -> bool:
        return all(a(x) == x for a in auts)

    # -- validation ----------------------------------------------------------------------

    def _basis_product(self, j: int, k: int) -> FieldElement:
        return self.mul(self.basis_element(j), self.basis_element(k))

    def _validate_table(self) -> None:
        d = self.degree
        if self.basis_symbols[0] != "1":
            raise FieldSpecError(f"{self.name}: first basis element must be 1")
        for k in range(d):
            if self._basis_product(0, k) != self.basis_element(k):
                raise FieldSpecError(f"{self.name}: basis element 1 is not a unit in the table")
        products = [[self._basis_product(j, k) for k in range(d)] for j in range(d)]
        for j in range(d):
            for k in range(j + 1, d):
                if products[j][k] != products[k][j]:
                    raise FieldSpecError(f"{self.name}: table not commutative at ({j}, {k})")
        for i in range(d):
            for j in range(d):
                left = products[i][j]
                for k in range(d):
                    if self.mul(left, self.basis_element(k)) != self.mul(self.basis_element(i), products[j][k]):
                        raise FieldSpecError(f"{self.name}: table not associative at ({i}, {j}, {k})")

    def _validate_automorphism(self, aut: Automorphism) -> None:
        d = self.degree
        if _rational_rank([list(col) for col in aut.images]) != d:
            raise FieldSpecError(f"{self.name}: automorphism {aut.name} is not invertible")
        if aut(self.one) != self.one:
            raise FieldSpecError(f"{self.name}: automorphism {aut.name} does not fix 1")
        for j in range(d):
            bj = aut(self.basis_element(j))
            for k in range(j, d):
                if aut(self._basis_product(j, k)) != bj * aut(self.basis_element(k)):
                    raise FieldSpecError(f"{self.name}: automorphism {aut.name} is not a ring map at ({j}, {k})")

    def _validate_conjugation(self, conj: Automorphism) -> None:
        for j in range(self.degree):
            image = self.embed(conj(self.basis_element(j)))
            if abs(image - self._embed_np[j].conjugate()) > config.EMBED_TOL * max(1.0, abs(image)):
                raise FieldSpecError(f"{self.name}: {conj.name} is not complex conjugation on basis element {j}")

    def _validate_embedding(self) -> None:
        with mpmath.workdps(config.EMBED_DPS):
            for j in range(self.degree):
                for k in range(j, self.degree):
                    lhs = self.embed_mp(self._basis_product(j, k))
                    rhs = self._embed_mp[j] * self._embed_mp[k]
                    scale = max(1, abs(rhs))
                    if abs(lhs - rhs) > config.EMBED_TOL * scale:
                        raise FieldSpecError(
                            f"{self.name}: embedding mismatch on basis product ({j}, {k})"
                        )

    def __repr__(self) -> str:
        return f"Field({self.name}, degree={self.degree})"


def _is_rational_square(q: Fraction) -> bool:
    if q < 0:
        return False
    rn, rd = math.isqrt(q.numerator), math.isqrt(q.denominator)
    return rn * rn == q.numerator and rd * rd == q.denominator


def field_make(spec: Union[FieldSpec, dict], base: Optional[Field] = None) -> Field:
    """Validate a spec (model or plain JSON dict) and return the field."""
    if isinstance(spec, dict):
        spec = FieldSpec.model_validate(spec)
    return Field(spec, base=base)


def apply_aut(a: Automorphism, x: FieldElement) -> FieldElement:
    return a(x)


def embed(x: FieldElement) -> complex:
    return x.field.embed(x)


# -- spec builders -------------------------------------------------------------------------


def _mp_pair(z) -> tuple[str, str]:
    with mpmath.workdps(config.EMBED_DPS):
        z = mpmath.mpc(z)
        return (mpmath.nstr(z.real, config.EMBED_DPS), mpmath.nstr(z.imag, config.EMBED_DPS))


def _strings(vec: Sequence[Fraction]) -> list[str]:
    return [format_rational(Fraction(c)) for c in vec]


def spec_from_min_poly(
    name: str,
    min_poly: Sequence[Rational],
    root,
    automorphism_images: Optional[dict[str, Sequence[Rational]]] = None,
    symbol: str = "x",
    conjugation: Optional[str] = None,
    generators: Optional[dict[str, Sequence[Rational]]] = None,
) -> FieldSpec:
    """Power-basis spec for Q[x]/(f).

    ``min_poly`` lists the coefficients of the monic minimal polynomial from
    the constant term up; ``root`` is the complex value of x under the
    distinguished embedding; automorphisms are given by the polynomial image
    of x (coefficients from the constant term up).
    """
    x = sympy.Symbol("x")
    coeffs = [sympy.Rational(str(Fraction(c))) for c in min_poly]
    f = sympy.Poly(list(reversed(coeffs)), x, domain=sympy.QQ)
    if f.LC() != 1:
        raise FieldSpecError(f"{name}: minimal polynomial must be monic")
    if not f.is_irreducible:
        raise FieldSpecError(f"{name}: minimal polynomial is reducible")
    d = f.degree()

    def reduce(poly: sympy.Poly) -> list[Fraction]:
        r = poly.rem(f)
        low_first = list(reversed(r.all_coeffs()))
        low_first += [0] * (d - len(low_first))
        return [Fraction(int(sympy.Rational(c).p), int(sympy.Rational(c).q)) for c in low_first]

    powers = [reduce(sympy.Poly(x**k, x, domain=sympy.QQ)) for k in range(2 * d - 1)]
    table = [[_strings(powers[j + k]) for k in range(d)] for j in range(d)]

    auts = {}
    for aut_name, image in (automorphism_images or {}).items():
        img = sympy.Poly(list(reversed([sympy.Rational(str(Fraction(c))) for c in image])), x, domain=sympy.QQ)
        auts[aut_name] = [_strings(reduce(img**j)) for j in range(d)]

    with mpmath.workdps(config.EMBED_DPS):
        r = root() if callable(root) else mpmath.mpc(root)
        embedding = [_mp_pair(r**j) for j in range(d)]
    basis = ["1", symbol] + [f"{symbol}^{j}" for j in range(2, d)]
    return FieldSpec(
        name=name,
        degree=d,
        basis=basis[:d],
        mult_table=table,
        automorphisms=auts,
        embedding=embedding,
        conjugation=conjugation,
        generators={k: _strings([Fraction(c) for c in v] + [Fraction(0)] * (d - len(v)))
                    for k, v in (generators or {}).items()},
    )


def field_from_min_poly(name: str, min_poly: Sequence[Rational], root, **kwargs) -> Field:
    return field_make(spec_from_min_poly(name, min_poly, root, **kwargs))


def adjoin_sqrt(
    base: Field,
    d: FieldElement,
    symbol: str,
    name: Optional[str] = None,
    neg_name: Optional[str] = None,
) -> Field:
    """Build base(s) with s^2 = d and basis {b_j} + {b_j*s}.

    Base automorphisms fixing d extend with s -> s under their own name; the
    automorphism s -> -s fixing the base is registered as ``neg_name``.
    Complex conjugation extends with s -> s when d embeds as a positive real
    and with s -> -s when it embeds as a negative real.
    """
    if d.field is not base:
        d = base.coerce(d)
    if d.is_zero():
        raise FieldSpecError("cannot adjoin the square root of zero")
    m = base.degree
    name = name or f"{base.name}({symbol})"
    neg_name = neg_name or f"neg_{symbol}"

    def lift(x: FieldElement, half: int) -> list[Fraction]:
        c = list(x.coeffs)
        zeros = [Fraction(0)] * m
        return c + zeros if half == 0 else zeros + c

    basis_syms = list(base.basis_symbols) + [symbol if b == "1" else f"{b}*{symbol}" for b in base.basis_symbols]
    table = []
    for j in range(2 * m):
        row = []
        for k in range(2 * m):
            p, q = j // m, k // m
            prod = base.mul(base.basis_element(j % m), base.basis_element(k % m))
            if p + q == 2:
                prod = prod * d
            row.append(_strings(lift(prod, (p + q) % 2)))
        table.append(row)

    auts = {}
    for aut_name, aut in base.automorphisms.items():
        if aut(d) != d:
            logger.debug(f"{aut_name} does not fix {d!r}; not extended to {name}")
            continue
        auts[aut_name] = [_strings(lift(aut(base.basis_element(j % m)), j // m)) for j in range(2 * m)]
    auts[neg_name] = [
        _strings([c if j < m else -c for c in lift(base.basis_element(j % m), j // m)]) for j in range(2 * m)
    ]

    conjugation = None
    emb_d = base.embed_mp(d)
    with mpmath.workdps(config.EMBED_DPS):
        s_value = mpmath.sqrt(emb_d)
        d_is_real = abs(mpmath.im(emb_d)) <= mpmath.mpf(10) ** (-(config.EMBED_DPS // 2))
    if base.conjugation is not None and d_is_real and base.conjugation(d) == d:
        c = base.conjugation
        flip = mpmath.re(emb_d) < 0
        conjugation = "conj"
        auts[conjugation] = [
            _strings([v if (j < m or not flip) else -v for v in lift(c(base.basis_element(j % m)), j // m)])
            for j in range(2 * m)
        ]
    elif base.conjugation is not None:
        logger.warning(f"{name}: complex conjugation does not extend; Hermitian transposes unavailable")

    with mpmath.workdps(config.EMBED_DPS):
        embedding = [_mp_pair(e) for e in base._embed_mp] + [_mp_pair(e * s_value) for e in base._embed_mp]

    generators = {g: _strings(lift(v, 0)) for g, v in base.generators.items()}
    generators[symbol] = _strings(lift(base.one, 1))
    spec = FieldSpec(
        name=name,
        degree=2 * m,
        basis=basis_syms,
        mult_table=table,
        automorphisms=auts,
        embedding=embedding,
        conjugation=conjugation,
        generators=generators,
    )
    return Field(spec, base=base)


# -- parsing --------------------------------------------------------------------------------


def parse_element(field: Field, text: str) -> FieldElement:
    """Evaluate an expression such as ``"1-i"`` or ``"i*sqrt7"`` in ``field``.

    Names are the field's generators; ``I`` is accepted for ``i``.
    """
    local = {name: sympy.Symbol(name) for name in field.generators}
    try:
        expr = parse_expr(text, local_dict=local, evaluate=True)
    except (SyntaxError, TypeError, sympy.SympifyError) as e:
        raise FieldSpecError(f"Cannot parse {text!r}: {e}") from e
    return _evaluate(field, expr)


def _evaluate(field: Field, expr) -> FieldElement:
    if expr.is_Rational:
        return field.from_rational(Fraction(int(expr.p), int(expr.q)))
    if expr is sympy.I:
        if "i" not in field.generators:
            raise FieldSpecError(f"{field.name} has no generator i")
        return field.generators["i"]
    if expr.is_Symbol:
        try:
            return field.generators[expr.name]
        except KeyError:
            raise FieldSpecError(f"{field.name} has no generator {expr.name!r}") from None
    if expr.is_Add:
        total = field.zero
        for arg in expr.args:
            total = total + _evaluate(field, arg)
        return total
    if expr.is_Mul:
        total = field.one
        for arg in expr.args:
            total = total * _evaluate(field, arg)
        return total
    if expr.is_Pow and expr.exp.is_Integer:
        return _evaluate(field, expr.base) ** int(expr.exp)
    raise FieldSpecError(f"Unsupported expression {expr} for field {field.name}")
