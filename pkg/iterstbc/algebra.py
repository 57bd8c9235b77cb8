"""
Cyclic algebras, their left-regular representation and the iterated map.

D = (K/F, sigma, gamma) = K + eK + ... + e^{n-1}K with e^n = gamma and
l*e = e*sigma(l). Elements are stored as coordinates x_0..x_{n-1} of
x_0 + e*x_1 + ... + e^{n-1}*x_{n-1}.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field as dataclass_field
from functools import cached_property
from typing import Optional, Sequence, Union

import numpy as np
from pydantic import BaseModel

from .errors import AlgebraError, AssumptionError, BasisError, FieldMismatchError
from .numfield import Automorphism, Field, FieldElement, _rational_rank, adjoin_sqrt

logger = logging.getLogger(__name__)

Scalar = Union[int, FieldElement]


class MatrixOverField:
    """Rectangular matrix with exact entries in a single field."""

    def __init__(self, field: Field, entries: Sequence[Sequence[FieldElement]]):
        rows = [tuple(field.coerce(x) if isinstance(x, FieldElement) else field(x) for x in row) for row in entries]
        if not rows or any(len(r) != len(rows[0]) for r in rows):
            raise AlgebraError("matrix rows must be nonempty and of equal length")
        self.field = field
        self.entries = tuple(rows)
        self.rows = len(rows)
        self.cols = len(rows[0])

    # -- constructors ------------------------------------------------------------

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: Optional[int] = None) -> "MatrixOverField":
        cols = rows if cols is None else cols
        return cls(field, [[field.zero] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, field: Field, n: int) -> "MatrixOverField":
        return cls.diag(field, [field.one] * n)

    @classmethod
    def diag(cls, field: Field, values: Sequence[FieldElement]) -> "MatrixOverField":
        n = len(values)
        return cls(field, [[values[i] if i == j else field.zero for j in range(n)] for i in range(n)])

    @classmethod
    def blocks(cls, field: Field, grid: Sequence[Sequence["MatrixOverField"]]) -> "MatrixOverField":
        rows = []
        for block_row in grid:
            for i in range(block_row[0].rows):
                row = []
                for block in block_row:
                    row.extend(block.entries[i])
                rows.append(row)
        return cls(field, rows)

    # -- views ---------------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @cached_property
    def float_view(self) -> np.ndarray:
        out = np.array([[x.embed() for x in row] for row in self.entries], dtype=complex)
        out.setflags(write=False)
        return out

    def to_strings(self) -> list[list[list[str]]]:
        return [[x.to_strings() for x in row] for row in self.entries]

    def is_zero(self) -> bool:
        return all(x.is_zero() for row in self.entries for x in row)

    def __repr__(self) -> str:
        return f"MatrixOverField({self.rows}x{self.cols} over {self.field.name})"

    # -- arithmetic --------------------------------------------------------------------

    def lift(self, field: Field) -> "MatrixOverField":
        if field is self.field:
            return self
        return MatrixOverField(field, [[field.coerce(x) for x in row] for row in self.entries])

    def _match(self, other: "MatrixOverField") -> tuple["MatrixOverField", "MatrixOverField"]:
        if other.field is self.field:
            return self, other
        try:
            return self, other.lift(self.field)
        except FieldMismatchError:
            return self.lift(other.field), other

    def __add__(self, other: "MatrixOverField") -> "MatrixOverField":
        a, b = self._match(other)
        if a.shape != b.shape:
            raise AlgebraError(f"shape mismatch {a.shape} + {b.shape}")
        return MatrixOverField(a.field, [[x + y for x, y in zip(r, s)] for r, s in zip(a.entries, b.entries)])

    def __neg__(self) -> "MatrixOverField":
        return MatrixOverField(self.field, [[-x for x in row] for row in self.entries])

    def __sub__(self, other: "MatrixOverField") -> "MatrixOverField":
        return self + (-other)

    def __matmul__(self, other: "MatrixOverField") -> "MatrixOverField":
        a, b = self._match(other)
        if a.cols != b.rows:
            raise AlgebraError(f"shape mismatch {a.shape} @ {b.shape}")
        zero = a.field.zero
        out = []
        for row in a.entries:
            nz = [(k, x) for k, x in enumerate(row) if not x.is_zero()]
            new_row = []
            for j in range(b.cols):
                acc = zero
                for k, x in nz:
                    y = b.entries[k][j]
                    if not y.is_zero():
                        acc = acc + x * y
                new_row.append(acc)
            out.append(new_row)
        return MatrixOverField(a.field, out)

    def scale(self, c: Scalar) -> "MatrixOverField":
        if isinstance(c, FieldElement) and c.field is not self.field:
            try:
                c = self.field.coerce(c)
            except FieldMismatchError:
                return self.lift(c.field).scale(c)
        return MatrixOverField(self.field, [[c * x for x in row] for row in self.entries])

    def apply(self, aut: Automorphism) -> "MatrixOverField":
        """Apply a field automorphism entrywise."""
        if aut.field is not self.field:
            raise FieldMismatchError(f"{aut!r} applied to a matrix over {self.field.name}")
        return MatrixOverField(self.field, [[aut(x) for x in row] for row in self.entries])

    def transpose(self) -> "MatrixOverField":
        return MatrixOverField(self.field, [list(col) for col in zip(*self.entries)])

    def conj_transpose(self) -> "MatrixOverField":
        conj = self.field.conjugation
        if conj is None:
            raise AlgebraError(f"{self.field.name} declares no complex conjugation")
        return self.apply(conj).transpose()

    def det(self) -> FieldElement:
        """Exact determinant by Gaussian elimination over the field."""
        if self.rows != self.cols:
            raise AlgebraError("determinant of a non-square matrix")
        a = [list(row) for row in self.entries]
        n = self.rows
        det = self.field.one
        for col in range(n):
            pivot = next((r for r in range(col, n) if not a[r][col].is_zero()), None)
            if pivot is None:
                return self.field.zero
            if pivot != col:
                a[col], a[pivot] = a[pivot], a[col]
                det = -det
            p = a[col][col]
            det = det * p
            inv = p.inverse()
            for r in range(col + 1, n):
                if a[r][col].is_zero():
                    continue
                f = a[r][col] * inv
                a[r] = [x if y.is_zero() else x - f * y for x, y in zip(a[r], a[col])]
        return det

    def __eq__(self, other) -> bool:
        if not isinstance(other, MatrixOverField):
            return NotImplemented
        if self.shape != other.shape:
            return False
        return all(x == y for r, s in zip(self.entries, other.entries) for x, y in zip(r, s))

    def __hash__(self) -> int:
        return hash(self.entries)


def commutes(a: MatrixOverField, b: MatrixOverField) -> bool:
    return a @ b == b @ a


class Subfield(BaseModel):
    """Subfield of a field given as the fixed field of some automorphisms."""

    model_config = {"arbitrary_types_allowed": True, "frozen": True}

    field: Field
    fixing: tuple[Automorphism, ...]

    def contains(self, x: FieldElement) -> bool:
        return all(a(x) == x for a in self.fixing)

    @property
    def name(self) -> str:
        return f"{self.field.name}^<{','.join(a.name for a in self.fixing)}>"


@dataclass(frozen=True, eq=False)
class CyclicAlgebra:
    """(K/F, sigma, gamma) with F the fixed field of sigma."""

    K: Field
    sigma: Automorphism
    gamma: FieldElement
    name: str = ""
    n: int = dataclass_field(init=False)

    def __post_init__(self):
        if self.sigma.field is not self.K:
            raise AlgebraError(f"sigma must be an automorphism of {self.K.name}")
        if self.gamma.field is not self.K:
            object.__setattr__(self, "gamma", self.K.coerce(self.gamma))
        n = self.sigma.order
        if n < 2:
            raise AlgebraError("sigma must be nontrivial")
        if self.K.degree % n:
            raise AlgebraError(f"order of sigma ({n}) does not divide [K:Q] = {self.K.degree}")
        if self.gamma.is_zero():
            raise AlgebraError("gamma must be nonzero")
        if self.sigma(self.gamma) != self.gamma:
            raise AlgebraError(f"gamma = {self.gamma!r} is not in the fixed field of sigma")
        object.__setattr__(self, "n", n)

    @property
    def F(self) -> Subfield:
        return Subfield(field=self.K, fixing=(self.sigma,))

    @cached_property
    def sigma_powers(self) -> tuple[Automorphism, ...]:
        powers = [self.K.identity()]
        for _ in range(1, self.n):
            powers.append(self.sigma.compose(powers[-1]))
        return tuple(powers)

    def element(self, coords: Sequence[Scalar]) -> "AlgebraElement":
        return AlgebraElement(self, coords)

    @property
    def one(self) -> "AlgebraElement":
        return self.element([self.K.one] + [self.K.zero] * (self.n - 1))

    @property
    def e(self) -> "AlgebraElement":
        coords = [self.K.zero] * self.n
        coords[1] = self.K.one
        return self.element(coords)

    def scalar(self, x: Scalar) -> "AlgebraElement":
        return self.element([self.K(x) if not isinstance(x, FieldElement) else x] + [self.K.zero] * (self.n - 1))

    @cached_property
    def lambda_e(self) -> MatrixOverField:
        K, n = self.K, self.n
        rows = [[K.zero] * n for _ in range(n)]
        rows[0][n - 1] = self.gamma
        for i in range(1, n):
            rows[i][i - 1] = K.one
        return MatrixOverField(K, rows)

    def lambda_scalar(self, x: FieldElement) -> MatrixOverField:
        """lambda(l) = diag(l, sigma(l), ..., sigma^{n-1}(l))."""
        x = self.K.coerce(x)
        return MatrixOverField.diag(self.K, [s(x) for s in self.sigma_powers])

    def lambda_e_power(self, k: int) -> MatrixOverField:
        result = MatrixOverField.identity(self.K, self.n)
        for _ in range(k):
            result = self.lambda_e @ result
        return result


class AlgebraElement:
    """x_0 + e*x_1 + ... + e^{n-1}*x_{n-1}."""

    def __init__(self, alg: CyclicAlgebra, coords: Sequence[Scalar]):
        if len(coords) != alg.n:
            raise AlgebraError(f"algebra element needs {alg.n} coordinates, got {len(coords)}")
        self.alg = alg
        self.coords = tuple(alg.K.coerce(c) if isinstance(c, FieldElement) else alg.K(c) for c in coords)

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        return AlgebraElement(self.alg, [a + b for a, b in zip(self.coords, other.coords)])

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(self.alg, [-a for a in self.coords])

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-other)

    def __mul__(self, other: Union["AlgebraElement", Scalar]) -> "AlgebraElement":
        alg = self.alg
        if not isinstance(other, AlgebraElement):
            # right multiplication by a field element
            return self * alg.scalar(other)
        n = alg.n
        out = [alg.K.zero] * n
        for a, x in enumerate(self.coords):
            if x.is_zero():
                continue
            for b, y in enumerate(other.coords):
                if y.is_zero():
                    continue
                term = alg.sigma_powers[b](x) * y
                k = a + b
                if k >= n:
                    term = term * alg.gamma
                    k -= n
                out[k] = out[k] + term
        return AlgebraElement(alg, out)

    def scale(self, c: FieldElement) -> "AlgebraElement":
        """Multiply by a central scalar c (c fixed by sigma)."""
        return AlgebraElement(self.alg, [c * x for x in self.coords])

    def apply(self, tau: Automorphism) -> "AlgebraElement":
        return AlgebraElement(self.alg, [tau(x) for x in self.coords])

    def is_zero(self) -> bool:
        return all(x.is_zero() for x in self.coords)

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return other.alg is self.alg and other.coords == self.coords

    def __hash__(self) -> int:
        return hash(self.coords)

    def reduced_norm(self) -> FieldElement:
        return lambda_repr(self.alg, self).det()

    def __repr__(self) -> str:
        return " + ".join(f"e^{k}*({x!r})" for k, x in enumerate(self.coords) if not x.is_zero()) or "0"


def lambda_repr(alg: CyclicAlgebra, x: AlgebraElement) -> MatrixOverField:
    """lambda(sum e^k x_k) = sum lambda(e)^k diag(sigma^i(x_k))."""
    if x.alg is not alg:
        raise AlgebraError("element belongs to another algebra")
    result = MatrixOverField.zeros(alg.K, alg.n)
    power = MatrixOverField.identity(alg.K, alg.n)
    for k, xk in enumerate(x.coords):
        if k:
            power = alg.lambda_e @ power
        if not xk.is_zero():
            result = result + power @ alg.lambda_scalar(xk)
    return result


# -- iteration -------------------------------------------------------------------------------


class AssumptionReport(BaseModel):
    tau_fixes_gamma: bool
    tau_commutes_sigma: bool
    tau_order_2: bool
    theta_in_F: bool
    theta_fixed_by_tau: bool

    @property
    def all_hold(self) -> bool:
        return all(self.model_dump().values())


def check_assumptions(alg: CyclicAlgebra, tau: Automorphism, theta: FieldElement) -> AssumptionReport:
    """Check tau(gamma) = gamma, tau o sigma = sigma o tau, tau^2 = 1 and theta in F^<tau>.

    theta_in_F means theta is fixed by both sigma and tau.
    """
    K = alg.K
    theta = K.coerce(theta)
    commute = all(
        tau(alg.sigma(K.basis_element(j))) == alg.sigma(tau(K.basis_element(j))) for j in range(K.degree)
    )
    return AssumptionReport(
        tau_fixes_gamma=tau(alg.gamma) == alg.gamma,
        tau_commutes_sigma=commute,
        tau_order_2=tau.order == 2,
        theta_in_F=alg.sigma(theta) == theta and tau(theta) == theta,
        theta_fixed_by_tau=tau(theta) == theta,
    )


_I_EXTENSIONS: dict[str, Field] = {}
_SQRT_EXTENSIONS: dict[tuple, tuple[Field, FieldElement]] = {}


def _field_with_i(field: Field) -> tuple[Field, FieldElement]:
    """Return (W, i) with W = field or field(i)."""
    i = field.generators.get("i")
    if i is not None:
        return field, i
    if field.name not in _I_EXTENSIONS:
        _I_EXTENSIONS[field.name] = adjoin_sqrt(field, field(-1), "i", name=f"{field.name}(i)", neg_name="iota")
    ext = _I_EXTENSIONS[field.name]
    return ext, ext.generators["i"]


def _sqrt_positive(field: Field, x: FieldElement) -> tuple[Field, FieldElement]:
    """Exact positive square root of x, adjoined formally when x is not a square."""
    key = (field.name, x.num, x.den)
    if key in _SQRT_EXTENSIONS:
        return _SQRT_EXTENSIONS[key]
    root = None
    if x.is_rational() or field.is_galois():
        root = field.sqrt(x)
    if root is not None:
        if root.embed().real < 0:
            root = -root
        result = (field, root)
    else:
        ext = adjoin_sqrt(field, x, "r", name=f"{field.name}(sqrt({x!r}))", neg_name="neg_r")
        logger.info(f"Adjoined a formal square root of {x!r} to {field.name}")
        result = (ext, ext.generators["r"])
    _SQRT_EXTENSIONS[key] = result
    return result


@dataclass(frozen=True, eq=False)
class IterationParams:
    """theta and tau of the iterated map, with the decomposition theta = zeta*theta'.

    ``work`` is the field holding zeta and theta' (K, or K(i) when zeta = +-i
    is not in K); ``coeff`` holds sqrt(theta') as well.
    """

    theta: FieldElement
    tau: Automorphism
    scaled: bool = False
    zeta: Optional[FieldElement] = None
    theta_prime: Optional[FieldElement] = None
    work: Optional[Field] = None
    coeff: Optional[Field] = None
    sqrt_theta_prime: Optional[FieldElement] = None

    @classmethod
    def make(cls, theta: FieldElement, tau: Automorphism, scaled: bool = False) -> "IterationParams":
        K = tau.field
        theta = K.coerce(theta)
        if tau.order > 2:
            raise AlgebraError(f"tau must be an involution; {tau.name} has order {tau.order}")
        if not scaled:
            return cls(theta=theta, tau=tau, scaled=False, work=K, coeff=K)
        z = theta.embed()
        if theta.is_zero():
            raise AlgebraError("theta must be nonzero")
        if abs(z.imag) <= 1e-12 * abs(z):
            work, zeta = K, K(1 if z.real > 0 else -1)
        elif abs(z.real) <= 1e-12 * abs(z):
            work, i = _field_with_i(K)
            zeta = i if z.imag > 0 else -i
        else:
            raise AlgebraError(f"scaled map needs theta real or purely imaginary, got {z}")
        theta_w = work.coerce(theta)
        theta_prime = theta_w / zeta
        tp = theta_prime.embed()
        if not (tp.real > 0 and abs(tp.imag) <= 1e-12 * abs(tp)):
            raise AlgebraError(f"theta' = {theta_prime!r} is not a positive real")
        coeff, root = _sqrt_positive(work, theta_prime)
        return cls(theta=theta, tau=tau, scaled=True, zeta=zeta, theta_prime=theta_prime,
                   work=work, coeff=coeff, sqrt_theta_prime=root)

    @property
    def tau_work(self) -> Automorphism:
        """tau as an automorphism of the working field."""
        if self.work is self.tau.field:
            return self.tau
        return self.work.automorphism(self.tau.name)


def alpha(X: Optional[MatrixOverField], Y: Optional[MatrixOverField], p: IterationParams) -> MatrixOverField:
    """[[X, theta*tau(Y)], [Y, tau(X)]], or the scaled [[X, zeta*s*tau(Y)], [s*Y, tau(X)]] with s = sqrt(theta')."""
    if X is None and Y is None:
        raise AlgebraError("alpha needs at least one block")
    size = (X or Y).rows
    if X is None:
        X = MatrixOverField.zeros(p.tau.field, size)
    if Y is None:
        Y = MatrixOverField.zeros(p.tau.field, size)
    if X.shape != Y.shape or X.rows != X.cols:
        raise AlgebraError(f"alpha needs square blocks of equal size, got {X.shape} and {Y.shape}")
    work, tau = p.work, p.tau_work
    Xw, Yw = X.lift(work), Y.lift(work)
    tX, tY = Xw.apply(tau), Yw.apply(tau)
    if not p.scaled:
        return MatrixOverField.blocks(work, [[Xw, tY.scale(work.coerce(p.theta))], [Yw, tX]])
    E, s = p.coeff, p.sqrt_theta_prime
    top_right = tY.lift(E).scale(E.coerce(p.zeta) * s)
    return MatrixOverField.blocks(E, [[Xw.lift(E), top_right], [Yw.lift(E).scale(s), tX.lift(E)]])


def algebra_mul_via_alpha(
    x: AlgebraElement, y: AlgebraElement, u: AlgebraElement, v: AlgebraElement, p: IterationParams
) -> tuple[AlgebraElement, AlgebraElement]:
    """(x, y) * (u, v) = (xu + theta*tau(y)*v, yu + tau(x)*v)."""
    alg = x.alg
    report = check_assumptions(alg, p.tau, p.theta)
    if not report.all_hold:
        raise AssumptionError(f"closure assumptions fail: {report.model_dump()}")
    first = x * u + (y.apply(p.tau) * v).scale(p.theta)
    second = y * u + x.apply(p.tau) * v
    return first, second


def multiplication_relations_check(
    p: IterationParams, x: MatrixOverField, y: MatrixOverField, u: MatrixOverField, v: MatrixOverField
) -> dict[str, bool]:
    """Exact check of alpha~(a,b) alpha~(c,d)* = alpha~(ac* + theta' tau(bd*), bc* + conj(zeta) tau(ad*))
    on the four products of pure blocks."""
    if not p.scaled:
        raise AlgebraError("product relations are stated for the scaled map")
    W, tau = p.work, p.tau_work
    conj = W.conjugation
    zeta_bar = conj(p.zeta)
    zero = MatrixOverField.zeros(W, x.rows)
    x, y, u, v = (m.lift(W) for m in (x, y, u, v))
    results = {}
    for label, (a, b, c, d) in {
        "x0_u0": (x, zero, u, zero),
        "x0_0v": (x, zero, zero, v),
        "0y_u0": (zero, y, u, zero),
        "0y_0v": (zero, y, zero, v),
    }.items():
        lhs = alpha(a, b, p) @ alpha(c, d, p).conj_transpose()
        first = a @ c.conj_transpose() + (b @ d.conj_transpose()).apply(tau).scale(p.theta_prime)
        second = b @ c.conj_transpose() + (a @ d.conj_transpose()).apply(tau).scale(zeta_bar)
        results[label] = lhs == alpha(first, second, p)
    return results


# -- bases -------------------------------------------------------------------------------------


def build_q_basis(
    alg: CyclicAlgebra,
    nu: Sequence[FieldElement],
    beta: Sequence[FieldElement],
    layout: str = "qbasis",
    right_factor: Optional[FieldElement] = None,
) -> list[MatrixOverField]:
    """lambda-images of a Q-basis of the order generated by nu (K/F basis) and beta.

    ``qbasis``: nu_1 beta_1, ..., e^{n-1} nu_n beta_1, nu_1 beta_2, ...
    ``by_power``: mu_1 V_1, .., mu_1 V_n, mu_2 V_1, .., then the same times
    lambda(e), then lambda(e)^2, ... (V_j = lambda(nu_j), mu = beta).
    """
    K, n = alg.K, alg.n
    nu = [K.coerce(x) for x in nu]
    beta = [K.coerce(b) for b in beta]
    if len(nu) != n:
        raise BasisError(f"nu must have {n} elements")
    disc = MatrixOverField(K, [[s(v) for v in nu] for s in alg.sigma_powers]).det()
    if disc.is_zero():
        raise BasisError("nu is not a basis of K over F")
    if any(alg.sigma(b) != b for b in beta):
        raise BasisError("beta must lie in F")
    if _rational_rank([list(b.coeffs) for b in beta]) != len(beta):
        raise BasisError("beta is not Q-independent")
    rf = alg.lambda_scalar(right_factor) if right_factor is not None else None

    def finish(m: MatrixOverField) -> MatrixOverField:
        return m @ rf if rf is not None else m

    powers = [alg.lambda_e_power(k) for k in range(n)]
    basis = []
    if layout == "qbasis":
        for b in beta:
            for k in range(n):
                for v in nu:
                    basis.append(finish(powers[k] @ alg.lambda_scalar(v * b)))
    elif layout == "by_power":
        for k in range(n):
            for b in beta:
                for v in nu:
                    basis.append(finish(alg.lambda_scalar(v * b) @ powers[k]))
    else:
        raise BasisError(f"unknown layout {layout!r}")
    return basis


def build_iterated_basis(D: Sequence[MatrixOverField], p: IterationParams) -> list[MatrixOverField]:
    """B_i = alpha(D_i, 0) followed by B_{|D|+i} = alpha(0, D_i)."""
    if not D:
        raise BasisError("empty basis")
    size = D[0].shape
    if any(m.shape != size for m in D) or size[0] != size[1]:
        raise BasisError("basis matrices must be square of one size")
    return [alpha(m, None, p) for m in D] + [alpha(None, m, p) for m in D]


def encode(basis: Sequence[MatrixOverField], g: Sequence[int]) -> np.ndarray:
    """X = sum g_i B_i on the float views."""
    if len(g) != len(basis):
        raise AlgebraError(f"coefficient vector has length {len(g)}, basis has {len(basis)}")
    stack = np.stack([m.float_view for m in basis])
    return np.tensordot(np.asarray(g, dtype=float), stack, axes=1)


def exact_codeword(basis: Sequence[MatrixOverField], g: Sequence[int]) -> MatrixOverField:
    field = basis[0].field
    total = MatrixOverField.zeros(field, basis[0].rows, basis[0].cols)
    for gi, m in zip(g, basis):
        if gi:
            total = total + m.scale(int(gi))
    return total


def commutant_check(basis: Sequence[MatrixOverField], candidates: Sequence[MatrixOverField]) -> bool:
    return all(commutes(c, b) for c in candidates for b in basis)


def commutant_candidates(alg: CyclicAlgebra, p: IterationParams) -> list[MatrixOverField]:
    """alpha(I, 0) and alpha(0, lambda(e)); both commute with the iterated image when tau = sigma."""
    if p.scaled:
        raise AlgebraError("commutant candidates are given for the unscaled map")
    identity = MatrixOverField.identity(alg.K, alg.n)
    return [alpha(identity, None, p), alpha(None, alg.lambda_e, p)]
