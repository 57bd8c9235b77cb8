"""
Ready-made space-time codes: base codes from cyclic division algebras and
their iterated versions.

Each constructor returns a :class:`CodeSpec` holding the exact basis in its
published order together with construction metadata.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field as dataclass_field
from functools import cached_property
from typing import Any, Callable, Optional, Sequence

import numpy as np
from pydantic import BaseModel

from .algebra import (
    AlgebraElement,
    CyclicAlgebra,
    IterationParams,
    MatrixOverField,
    build_iterated_basis,
    build_q_basis,
    lambda_repr,
)
from .analysis import Partition
from .errors import CatalogError, FieldSpecError
from .fields import gaussian, q_i_sqrt2, q_i_sqrt5, q_i_sqrtm7, q_zeta7, q_zeta7_i
from .numfield import Field, FieldElement, FieldSpec, field_make

logger = logging.getLogger(__name__)


@dataclass(eq=False)
class CodeSpec:
    """An ordered basis of kappa matrices plus how it was built."""

    name: str
    n: int
    basis: list[MatrixOverField]
    fully_diverse_claim: str = "unknown"
    claimed_exponent: Optional[int] = None
    params: Optional[IterationParams] = None
    algebra: Optional[CyclicAlgebra] = None
    base_basis: Optional[list[MatrixOverField]] = None
    hint: Optional[Partition] = None
    nominal_scale: Optional[float] = None
    description: str = ""
    metadata: dict[str, Any] = dataclass_field(default_factory=dict)

    def __post_init__(self):
        if not self.basis:
            raise CatalogError(f"{self.name}: empty basis")
        shape = self.basis[0].shape
        if shape[0] != shape[1] or any(m.shape != shape for m in self.basis):
            raise CatalogError(f"{self.name}: basis matrices must be square of one size")
        if self.fully_diverse_claim not in ("yes", "no", "unknown"):
            raise CatalogError(f"invalid fully_diverse_claim {self.fully_diverse_claim!r}")

    @property
    def kappa(self) -> int:
        return len(self.basis)

    @property
    def side(self) -> int:
        return self.basis[0].rows

    @property
    def field(self) -> Field:
        return self.basis[0].field

    @property
    def iterated(self) -> bool:
        return self.params is not None

    @cached_property
    def raw_float_basis(self) -> np.ndarray:
        """Unnormalized float views, shape (kappa, side, side)."""
        return np.stack([m.float_view for m in self.basis])

    @cached_property
    def normalization(self) -> float:
        """Scale s with sum_i ||s B_i||_F^2 = side."""
        total = float(np.sum(np.abs(self.raw_float_basis) ** 2))
        return math.sqrt(self.side / total)

    @cached_property
    def float_basis(self) -> np.ndarray:
        return self.normalization * self.raw_float_basis

    @property
    def default_n_rx(self) -> int:
        """Receive antennas making the real lattice square."""
        return max(1, math.ceil(self.kappa / (2 * self.side)))

    def codeword(self, g: Sequence[float]) -> np.ndarray:
        """Normalized codeword sum g_i B_i."""
        return np.tensordot(np.asarray(g, dtype=float), self.float_basis, axes=1)

    def __repr__(self) -> str:
        return f"CodeSpec({self.name}, kappa={self.kappa}, {self.side}x{self.side} over {self.field.name})"


# -- JSON export -----------------------------------------------------------------------------


class MatrixExport(BaseModel):
    exact: list[list[list[str]]]
    re: list[list[float]]
    im: list[list[float]]


class CodeExport(BaseModel):
    name: str
    n: int
    side: int
    kappa: int
    field: FieldSpec
    basis: list[MatrixExport]
    params: Optional[dict[str, Any]] = None
    claimed_exponent: Optional[int] = None
    fully_diverse_claim: str = "unknown"
    normalization: float
    hint: Optional[Partition] = None
    description: str = ""


def _params_dict(p: Optional[IterationParams]) -> Optional[dict[str, Any]]:
    if p is None:
        return None
    out = {"theta": repr(p.theta), "tau": p.tau.name, "scaled": p.scaled}
    if p.scaled:
        out.update(zeta=repr(p.zeta), theta_prime=repr(p.theta_prime), coefficient_field=p.coeff.name)
    return out


def export_code(code: CodeSpec) -> CodeExport:
    return CodeExport(
        name=code.name,
        n=code.n,
        side=code.side,
        kappa=code.kappa,
        field=code.field.spec,
        basis=[
            MatrixExport(exact=m.to_strings(), re=m.float_view.real.tolist(), im=m.float_view.imag.tolist())
            for m in code.basis
        ],
        params=_params_dict(code.params),
        claimed_exponent=code.claimed_exponent,
        fully_diverse_claim=code.fully_diverse_claim,
        normalization=code.normalization,
        hint=code.hint,
        description=code.description,
    )


def import_code(data: CodeExport | dict | str) -> CodeSpec:
    """Rebuild a CodeSpec from its export; construction provenance is kept as metadata."""
    if isinstance(data, str):
        data = CodeExport.model_validate_json(data)
    elif isinstance(data, dict):
        data = CodeExport.model_validate(data)
    field = field_make(data.field)
    basis = [
        MatrixOverField(field, [[field.element(coeffs) for coeffs in row] for row in m.exact]) for m in data.basis
    ]
    return CodeSpec(
        name=data.name,
        n=data.n,
        basis=basis,
        fully_diverse_claim=data.fully_diverse_claim,
        claimed_exponent=data.claimed_exponent,
        hint=data.hint,
        description=data.description,
        metadata={"params": data.params} if data.params else {},
    )


# -- base codes --------------------------------------------------------------------------------


def _parse(field: Field, value, what: str) -> FieldElement:
    if isinstance(value, FieldElement):
        try:
            return field.coerce(value)
        except Exception as e:
            raise CatalogError(f"{what} = {value!r} is not in {field.name}") from e
    try:
        return field(value)
    except FieldSpecError as e:
        raise CatalogError(f"{what} = {value!r} is outside {field.name}: {e}") from e


def alamouti_algebra() -> CyclicAlgebra:
    K = gaussian()
    return CyclicAlgebra(K, K.automorphism("conj"), K(-1), name="(-1,-1)_Q")


def alamouti() -> CodeSpec:
    alg = alamouti_algebra()
    K = alg.K
    basis = build_q_basis(alg, [K.one, K("i")], [K.one])
    return CodeSpec("alamouti", 2, basis, fully_diverse_claim="yes", algebra=alg,
                    description="Alamouti code, lambda-image of the Hamiltonian quaternions over Z[i]")


def golden_algebra() -> CyclicAlgebra:
    K = q_i_sqrt5()
    return CyclicAlgebra(K, K.automorphism("sigma"), K("i"), name="(Q(i,sqrt5)/Q(i), sigma, i)")


def golden() -> CodeSpec:
    alg = golden_algebra()
    K = alg.K
    sigma = alg.sigma
    beta_g = K.one + K("i") * sigma(K("phi"))
    basis = build_q_basis(alg, [K.one, K("phi")], [K.one, K("i")], right_factor=beta_g)
    return CodeSpec("golden", 2, basis, fully_diverse_claim="yes", algebra=alg, nominal_scale=1 / math.sqrt(5),
                    description="Golden code with beta = 1 + i*sigma(phi), gamma = i")


def silver_algebra() -> CyclicAlgebra:
    K = q_i_sqrtm7()
    return CyclicAlgebra(K, K.automorphism("sigma"), K(-1), name="(Q(i,sqrt-7)/Q(sqrt-7), sigma, -1)")


def silver_mixing_matrix() -> MatrixOverField:
    """Unitary [[1+i, -1+2i], [1+2i, 1-i]] / sqrt7 over Q(i, sqrt(-7))."""
    K = q_i_sqrtm7()
    return MatrixOverField(K, [["(1+i)*sqrt7/7", "(-1+2*i)*sqrt7/7"], ["(1+2*i)*sqrt7/7", "(1-i)*sqrt7/7"]])


def _alamouti_block(a: complex, b: complex) -> np.ndarray:
    return np.array([[a, -np.conj(b)], [b, np.conj(a)]])


def silver_codeword(x1: complex, x2: complex, x3: complex, x4: complex) -> np.ndarray:
    """Alamouti(x1, x2) + diag(1, -1) Alamouti(z1, z2) with (z1, z2) = M (x3, x4)."""
    z1, z2 = silver_mixing_matrix().float_view @ np.array([x3, x4], dtype=complex)
    return _alamouti_block(x1, x2) + np.diag([1, -1]) @ _alamouti_block(z1, z2)


def silver() -> CodeSpec:
    """Silver code basis for g = (Re x1, Im x1, ..., Re x4, Im x4)."""
    alg = silver_algebra()
    K = alg.K
    i = K("i")
    mix = silver_mixing_matrix().entries
    basis = [
        lambda_repr(alg, alg.one),
        lambda_repr(alg, alg.scalar(i)),
        lambda_repr(alg, alg.e),
        lambda_repr(alg, alg.e * i),
    ]
    for col in range(2):
        for w in (K.one, i):
            # x_{3+col} = w contributes z = w * M[:, col]; the codeword is lambda(z1 - e z2)
            basis.append(lambda_repr(alg, AlgebraElement(alg, [w * mix[0][col], -(w * mix[1][col])])))
    return CodeSpec("silver", 2, basis, fully_diverse_claim="yes", algebra=alg,
                    description="Silver code, lambda-image of the order of (-1,-1) over Q(sqrt-7)")


def _deg3_basis(alg: CyclicAlgebra, mu: Sequence[FieldElement]) -> list[MatrixOverField]:
    K = alg.K
    return build_q_basis(alg, [K.one, K("eta1"), K("eta2")], mu, layout="by_power")


def deg3_ex1(gamma="1+i", mu: Sequence = ("1", "i*sqrt7")) -> CodeSpec:
    K = q_zeta7_i()
    g = _parse(K, gamma, "gamma")
    alg = CyclicAlgebra(K, K.automorphism("sigma2"), g, name=f"(Q(zeta7,i)/Q(i,sqrt-7), sigma2, {g!r})")
    basis = _deg3_basis(alg, [_parse(K, m, "mu") for m in mu])
    return CodeSpec("deg3_ex1", 3, basis, fully_diverse_claim="yes", algebra=alg,
                    description="3x3 code over Q(zeta7, i), D_j = mu V_j lambda(e)^p")


def deg3_ex2(gamma="3", mu: Sequence = ("1", "sqrtm7")) -> CodeSpec:
    K = q_zeta7()
    g = _parse(K, gamma, "gamma")
    alg = CyclicAlgebra(K, K.automorphism("sigma2"), g, name=f"(Q(zeta7)/Q(sqrt-7), sigma2, {g!r})")
    basis = _deg3_basis(alg, [_parse(K, m, "mu") for m in mu])
    return CodeSpec("deg3_ex2", 3, basis, fully_diverse_claim="yes", algebra=alg,
                    description="3x3 code over Q(zeta7)")


# -- iterated codes ------------------------------------------------------------------------------


def _one_based(groups: Sequence[Sequence[int]], conditioned: Sequence[int]) -> Partition:
    return Partition(groups=[list(g) for g in groups], conditioned=list(conditioned))


SILVER_HINT = _one_based([[1, 11], [3, 9], [4, 10], [2, 12]], [5, 6, 7, 8, 13, 14, 15, 16])
DEG3_HINT = _one_based([list(range(1, 7)), list(range(19, 25))],
                       list(range(7, 19)) + list(range(25, 37)))


def _claim(theta: FieldElement, table: dict[str, str]) -> str:
    for text, verdict in table.items():
        if theta == theta.field(text):
            return verdict
    return "unknown"


def _iterate(name: str, base: CodeSpec, tau_name: str, theta, scaled: bool, **extra) -> CodeSpec:
    alg = base.algebra
    K = alg.K
    th = _parse(K, theta, "theta")
    p = IterationParams.make(th, K.automorphism(tau_name), scaled=scaled)
    basis = build_iterated_basis(base.basis, p)
    logger.debug(f"{name}: {len(basis)} basis matrices over {basis[0].field.name}")
    return CodeSpec(name, alg.n, basis, params=p, algebra=alg, base_basis=base.basis, **extra)


def iter_silver(theta="-17", scaled: bool = False) -> CodeSpec:
    base = silver()
    code = _iterate("iter_silver", base, "sigma", theta, scaled,
                    description="Iterated Silver code, B_i = alpha(D_i, 0), B_{8+i} = alpha(0, D_i)")
    code.fully_diverse_claim = _claim(code.params.theta, {"-17": "yes", "-1": "no"})
    th = code.params.theta
    # negative rational theta under the scaled map keeps the 10-exponent partition
    negative_rational = scaled and th.is_rational() and th.to_fraction() < 0
    if negative_rational or th == th.field(-1):
        code.claimed_exponent, code.hint = 10, SILVER_HINT
    else:
        code.claimed_exponent = 13
    return code


def iter_golden(theta="1-i", scaled: bool = False) -> CodeSpec:
    code = _iterate("iter_golden", golden(), "sigma", theta, scaled, nominal_scale=1 / math.sqrt(5),
                    description="Iterated Golden code with tau = sigma")
    code.fully_diverse_claim = _claim(code.params.theta, {"1-i": "yes"})
    return code


def iter_alamouti(theta="-3", scaled: bool = False) -> CodeSpec:
    code = _iterate("iter_alamouti", alamouti(), "conj", theta, scaled,
                    description="Iterated Alamouti code (quasi-orthogonal layout)")
    code.fully_diverse_claim = _claim(code.params.theta, {"-3": "yes", "-1": "no"})
    return code


def jafarkhani(theta="-1") -> CodeSpec:
    code = iter_alamouti(theta)
    code.name = "jafarkhani"
    code.description = "Jafarkhani quasi-orthogonal code, the iterated Alamouti code with theta = -1"
    return code


def iter_alamouti_real(theta="-3", b: int = 2) -> CodeSpec:
    """Iterated Alamouti over the totally real base Q(sqrt b)."""
    if b != 2:
        raise CatalogError("only the base Q(sqrt2) is built in")
    K = q_i_sqrt2()
    sigma = K.automorphism("iota")
    alg = CyclicAlgebra(K, sigma, K(-1), name="(-1,-1)_Q(sqrt2)")
    base_basis = build_q_basis(alg, [K.one, K("i")], [K.one, K("sqrt2")])
    base = CodeSpec("alamouti_sqrt2", 2, base_basis, algebra=alg)
    code = _iterate("iter_alamouti_real", base, "iota", theta, False,
                    description="Iterated Alamouti over Q(sqrt2): basis pairs are real multiples of each other")
    code.fully_diverse_claim = "no"
    return code


def iter_deg3_ex1(theta="i*sqrt7", scaled: bool = True, gamma="1+i", mu: Sequence = ("1", "i*sqrt7")) -> CodeSpec:
    code = _iterate("iter_deg3_ex1", deg3_ex1(gamma, mu), "tau", theta, scaled,
                    description="Iterated 6x6 code over Q(zeta7, i)")
    code.fully_diverse_claim = _claim(code.params.theta, {"i*sqrt7": "yes", "-1": "no"})
    if code.params.theta == code.params.theta.field(-1):
        code.claimed_exponent, code.hint = 30, DEG3_HINT
    return code


def iter_deg3_ex2(theta="sqrtm7", scaled: bool = True, gamma="3", mu: Sequence = ("1", "sqrtm7")) -> CodeSpec:
    code = _iterate("iter_deg3_ex2", deg3_ex2(gamma, mu), "tau", theta, scaled,
                    description="Iterated 6x6 code over Q(zeta7)")
    code.fully_diverse_claim = _claim(code.params.theta, {"sqrtm7": "yes", "-1": "no"})
    if code.params.theta == code.params.theta.field(-1):
        code.claimed_exponent, code.hint = 30, DEG3_HINT
    return code


CATALOG: dict[str, Callable[..., CodeSpec]] = {
    "alamouti": alamouti,
    "golden": golden,
    "silver": silver,
    "deg3_ex1": deg3_ex1,
    "deg3_ex2": deg3_ex2,
    "jafarkhani": jafarkhani,
    "iter_silver": iter_silver,
    "iter_golden": iter_golden,
    "iter_alamouti": iter_alamouti,
    "iter_alamouti_real": iter_alamouti_real,
    "iter_deg3_ex1": iter_deg3_ex1,
    "iter_deg3_ex2": iter_deg3_ex2,
}


def list_codes() -> list[str]:
    return list(CATALOG)


def make_code(name: str, **overrides) -> CodeSpec:
    """Build a catalog code; overrides (theta, scaled, gamma, mu, b) go to its constructor."""
    try:
        builder = CATALOG[name]
    except KeyError:
        raise CatalogError(f"Unknown code {name!r}; known: {', '.join(CATALOG)}") from None
    overrides = {k: v for k, v in overrides.items() if v is not None}
    try:
        code = builder(**overrides)
    except TypeError as e:
        raise CatalogError(f"{name} does not accept overrides {sorted(overrides)}: {e}") from e
    logger.info(f"Built {code!r}")
    return code
