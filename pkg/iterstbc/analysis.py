"""
Fast-decodability and full-diversity analysis of code bases.

M-matrix zero masks are decided exactly: pairs whose float value is clearly
nonzero are settled in floating point, every near-zero pair is recomputed
over the coefficient field.
"""

from __future__ import annotations

import logging
import math
from fractions import Fraction
from multiprocessing import Pool
from typing import TYPE_CHECKING, Iterable, Optional, Sequence, Union

import numpy as np
from pydantic import BaseModel, field_validator, model_validator

from . import config
from .algebra import (
    AlgebraElement,
    CyclicAlgebra,
    MatrixOverField,
    check_assumptions,
    exact_codeword,
    lambda_repr,
)
from .errors import AlgebraError, BudgetExceededError, ResidueError
from .forms import (
    QuadraticForm,
    SpringerResidues,
    prime_divisors,
    springer_certificate,
    three_squares_obstruction,
)
from .numfield import Automorphism, Field, FieldElement, adjoin_sqrt

if TYPE_CHECKING:
    from .catalog import CodeSpec

logger = logging.getLogger(__name__)

SCAN_CHUNK = 1 << 14
# Relative float level above which an M entry is nonzero without exact recomputation
M_FLOAT_SETTLE = 1e-6


# -- M-matrix ----------------------------------------------------------------------------------


class MMatrix(BaseModel):
    kappa: int
    values: list[list[float]]
    zero_mask: list[list[bool]]
    exact: bool

    @property
    def array(self) -> np.ndarray:
        return np.array(self.values)

    @property
    def mask(self) -> np.ndarray:
        return np.array(self.zero_mask, dtype=bool)


def _pair_sums(P: np.ndarray) -> np.ndarray:
    """||P_k P_l^H + P_l P_k^H||_F for all k, l."""
    prods = np.einsum("kij,lmj->klim", P, P.conj())
    sums = prods + prods.transpose(1, 0, 2, 3)
    return np.linalg.norm(sums, axis=(2, 3))


def m_matrix(basis: Sequence[MatrixOverField], H: Optional[np.ndarray] = None) -> MMatrix:
    """M_{k,l} = ||B_k B_l^* + B_l B_k^*||_F, with B_k replaced by H B_k when H is given."""
    shapes = {m.shape for m in basis}
    if len(shapes) != 1:
        raise AlgebraError(f"basis matrices of mixed shapes {sorted(shapes)}")
    stack = np.stack([m.float_view for m in basis])
    kappa = len(basis)
    if H is not None:
        H = np.asarray(H, dtype=complex)
        if H.ndim != 2 or H.shape[1] != stack.shape[1]:
            raise AlgebraError(f"channel of shape {H.shape} does not fit {stack.shape[1]}x{stack.shape[2]} codewords")
        values = _pair_sums(np.einsum("ij,kjl->kil", H, stack))
        scale = max(1.0, float(values.max()))
        mask = values <= config.ZERO_TOL * scale
        return MMatrix(kappa=kappa, values=values.tolist(), zero_mask=mask.tolist(), exact=False)

    values = _pair_sums(stack)
    scale = max(1.0, float(values.max()))
    mask = np.zeros((kappa, kappa), dtype=bool)
    conj_t = [m.conj_transpose() for m in basis]
    recomputed = 0
    for k in range(kappa):
        for l in range(k + 1, kappa):
            if values[k, l] > M_FLOAT_SETTLE * scale:
                continue
            recomputed += 1
            s = basis[k] @ conj_t[l] + basis[l] @ conj_t[k]
            mask[k, l] = mask[l, k] = s.is_zero()
    logger.debug(f"M-matrix of size {kappa}: {recomputed} near-zero pairs checked exactly")
    values[mask] = 0.0
    return MMatrix(kappa=kappa, values=values.tolist(), zero_mask=mask.tolist(), exact=True)


# -- groupings ---------------------------------------------------------------------------------


class Partition(BaseModel):
    """Basis index groups (1-based) and the conditioned set."""

    groups: list[list[int]]
    conditioned: list[int] = []

    @field_validator("groups")
    @classmethod
    def _nonempty(cls, groups: list[list[int]]) -> list[list[int]]:
        if any(not g for g in groups):
            raise ValueError("groups must be nonempty")
        return [sorted(g) for g in groups]

    @field_validator("conditioned")
    @classmethod
    def _sorted(cls, conditioned: list[int]) -> list[int]:
        return sorted(conditioned)

    def indices(self) -> list[int]:
        return [i for g in self.groups for i in g] + list(self.conditioned)


class GroupingResult(BaseModel):
    kind: str
    groups: list[list[int]]
    conditioned: list[int]
    exponent: int
    verified: bool
    source: str
    violations: list[tuple[int, int]] = []

    @model_validator(mode="after")
    def _sort(self) -> "GroupingResult":
        self.groups = [sorted(g) for g in self.groups]
        self.conditioned = sorted(self.conditioned)
        return self


def _exponent(groups: Sequence[Sequence[int]], conditioned: Sequence[int]) -> int:
    return len(conditioned) + max(len(g) for g in groups)


def _kind(groups: Sequence[Sequence[int]], conditioned: Sequence[int]) -> str:
    if len(groups) < 2:
        return "none"
    return "conditional" if conditioned else "g_group"


def verify_partition(mask: np.ndarray, partition: Partition, source: str = "hint") -> GroupingResult:
    kappa = mask.shape[0]
    indices = partition.indices()
    violations: list[tuple[int, int]] = []
    covers = sorted(indices) == list(range(1, kappa + 1))
    for a, ga in enumerate(partition.groups):
        for gb in partition.groups[a + 1:]:
            for k in ga:
                for l in gb:
                    if not mask[k - 1, l - 1]:
                        violations.append((k, l))
    if not covers:
        logger.warning(f"Partition does not cover 1..{kappa} exactly once")
    return GroupingResult(
        kind=_kind(partition.groups, partition.conditioned),
        groups=partition.groups,
        conditioned=partition.conditioned,
        exponent=_exponent(partition.groups, partition.conditioned) if covers and not violations else kappa,
        verified=covers and not violations,
        source=source,
        violations=violations,
    )


def _components(adj: np.ndarray, vertices: Iterable[int]) -> list[list[int]]:
    remaining = set(vertices)
    comps = []
    while remaining:
        start = min(remaining)
        stack, comp = [start], {start}
        remaining.discard(start)
        while stack:
            v = stack.pop()
            for w in np.flatnonzero(adj[v]):
                w = int(w)
                if w in remaining:
                    remaining.discard(w)
                    comp.add(w)
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def detect_grouping(M: Union[MMatrix, np.ndarray], hint: Optional[Partition] = None) -> GroupingResult:
    """Verify a hinted partition, or search for a g-group / conditional split.

    The search takes connected components of the non-orthogonality graph, then
    greedily moves highest-degree vertices into the conditioned set and keeps
    the best exponent seen.
    """
    mask = M.mask if isinstance(M, MMatrix) else np.asarray(M, dtype=bool)
    kappa = mask.shape[0]
    if hint is not None:
        return verify_partition(mask, hint)

    adj = ~mask
    np.fill_diagonal(adj, False)
    best: tuple[int, list[list[int]], list[int]] = (kappa, [list(range(kappa))], [])
    comps = _components(adj, range(kappa))
    if len(comps) >= 2:
        best = (max(len(c) for c in comps), comps, [])

    remaining = set(range(kappa))
    removed: list[int] = []
    while len(remaining) > 1:
        sub = sorted(remaining)
        degrees = adj[np.ix_(sub, sub)].sum(axis=1)
        v = sub[int(np.argmax(degrees))]
        removed.append(v)
        remaining.discard(v)
        comps = _components(adj, remaining)
        if len(comps) >= 2:
            exponent = len(removed) + max(len(c) for c in comps)
            if exponent < best[0]:
                best = (exponent, comps, list(removed))

    groups = [[i + 1 for i in g] for g in best[1]]
    conditioned = [i + 1 for i in best[2]]
    if len(groups) < 2:
        return GroupingResult(kind="none", groups=[list(range(1, kappa + 1))], conditioned=[],
                              exponent=kappa, verified=True, source="search")
    result = verify_partition(mask, Partition(groups=groups, conditioned=conditioned), source="search")
    if not result.verified:
        raise AssertionError("grouping search produced an unverified partition")
    logger.info(f"Grouping search: {result.kind} with exponent {result.exponent}")
    return result


def diagonal_block_exponent(mask: Union[MMatrix, np.ndarray]) -> int:
    """kappa - d + 1 for the largest leading d x d block with zero off-diagonal."""
    mask = mask.mask if isinstance(mask, MMatrix) else np.asarray(mask, dtype=bool)
    kappa = mask.shape[0]
    d = 1
    while d < kappa and all(mask[d, j] for j in range(d)):
        d += 1
    return kappa - d + 1


def grouping_order(result: GroupingResult) -> list[int]:
    """0-based column order: groups in turn, conditioned set last."""
    return [i - 1 for g in result.groups for i in g] + [i - 1 for i in result.conditioned]


def implied_r_zeros(mask: Union[MMatrix, np.ndarray], order: Optional[Sequence[int]] = None) -> set[tuple[int, int]]:
    """Positions (i, j), i < j, of R forced to zero by the orthogonality mask.

    Positions refer to the reordered columns. q_i lies in the span of the
    columns in support(i); R[i, j] vanishes when column j is orthogonal to all
    of them.
    """
    mask = mask.mask if isinstance(mask, MMatrix) else np.asarray(mask, dtype=bool)
    kappa = mask.shape[0]
    order = list(range(kappa)) if order is None else list(order)
    m = mask[np.ix_(order, order)]
    support: list[set[int]] = []
    zeros: set[tuple[int, int]] = set()
    for j in range(kappa):
        supp = {j}
        for i in range(j):
            if all(m[j, t] for t in support[i]):
                zeros.add((i, j))
            else:
                supp |= support[i]
        support.append(supp)
    return zeros


# -- determinant scans -------------------------------------------------------------------------


class MinDetResult(BaseModel):
    code: str
    mode: str
    alphabet: list[int]
    evaluated: int
    min_abs_det: float
    argmin: list[int]
    count_zero: int
    zero_witnesses: list[list[int]]
    seed: Optional[int] = None


def _digits(idx: np.ndarray, m: int, kappa: int) -> np.ndarray:
    powers = m ** np.arange(kappa - 1, -1, -1, dtype=np.int64)
    return (idx[:, None] // powers[None, :]) % m


def _scan_chunk(task: tuple) -> tuple[float, int, list[int], int]:
    """Screen one chunk of coefficient vectors: (min |det|, row, near-zero rows, evaluated)."""
    kind, stack, alphabet, a, b, seed = task
    kappa, side = stack.shape[0], stack.shape[1]
    if kind == "exhaustive":
        G = alphabet[_digits(np.arange(a, b, dtype=np.int64), len(alphabet), kappa)]
    else:
        rng = np.random.default_rng([seed, a])
        G = rng.choice(alphabet, size=(b, kappa))
    nonzero = np.any(G != 0, axis=1)
    X = np.tensordot(G.astype(float), stack, axes=1)
    dets = np.abs(np.linalg.det(X))
    fro = np.linalg.norm(X, axis=(1, 2))
    near_mask = nonzero & (dets <= config.ZERO_TOL * np.maximum(1.0, fro) ** side)
    near = np.flatnonzero(near_mask)
    # near-zero rows are settled by the exact recomputation
    dets = np.where(nonzero & ~near_mask, dets, np.inf)
    row = int(np.argmin(dets))
    return float(dets[row]), row, near.tolist(), int(nonzero.sum())


def _chunk_vectors(kind: str, alphabet: np.ndarray, kappa: int, a: int, b: int, seed: int) -> np.ndarray:
    if kind == "exhaustive":
        return alphabet[_digits(np.arange(a, b, dtype=np.int64), len(alphabet), kappa)]
    return np.random.default_rng([seed, a]).choice(alphabet, size=(b, kappa))


def min_det_scan(
    code: "CodeSpec",
    alphabet: Sequence[int],
    mode: str = "random",
    samples: int = 100_000,
    seed: int = 0,
    workers: Optional[int] = None,
    budget: Optional[int] = None,
    max_witnesses: int = 10,
) -> MinDetResult:
    """Minimum |det| over nonzero coefficient vectors of the unnormalized basis.

    Determinants are screened in floating point; every near-zero candidate is
    recomputed exactly. Random mode draws chunk c from default_rng([seed, c]),
    so results do not depend on the worker count.
    """
    alphabet_arr = np.array(sorted(set(int(a) for a in alphabet)), dtype=np.int64)
    if len(alphabet_arr) < 2:
        raise ValueError("alphabet needs at least two symbols")
    stack = code.raw_float_basis
    kappa = code.kappa
    workers = workers or config.WORKERS
    if mode == "exhaustive":
        budget = budget or config.ML_BUDGET
        total = len(alphabet_arr) ** kappa
        if total > budget:
            raise BudgetExceededError(f"{total} vectors exceed the exhaustive budget {budget}")
        tasks = [("exhaustive", stack, alphabet_arr, a, min(a + SCAN_CHUNK, total), 0)
                 for a in range(0, total, SCAN_CHUNK)]
    elif mode == "random":
        n_chunks = math.ceil(samples / SCAN_CHUNK)
        tasks = [("random", stack, alphabet_arr, c, min(SCAN_CHUNK, samples - c * SCAN_CHUNK), seed)
                 for c in range(n_chunks)]
    else:
        raise ValueError(f"unknown scan mode {mode!r}")

    logger.info(f"Scanning determinants of {code.name}: {len(tasks)} chunks, mode {mode}, {workers} workers")
    if workers > 1 and len(tasks) > 1:
        with Pool(workers) as pool:
            results = pool.map(_scan_chunk, tasks)
    else:
        results = [_scan_chunk(t) for t in tasks]

    best_val, best_g = math.inf, None
    count_zero, witnesses, evaluated = 0, [], 0
    for task, (val, row, near, n_eval) in zip(tasks, results):
        evaluated += n_eval
        G = None
        if near or val < best_val:
            G = _chunk_vectors(task[0], alphabet_arr, kappa, task[3], task[4], task[5])
        for r in near:
            g = [int(v) for v in G[r]]
            det = exact_codeword(code.basis, g).det()
            if det.is_zero():
                count_zero += 1
                if len(witnesses) < max_witnesses:
                    witnesses.append(g)
                if best_val > 0.0:
                    best_val, best_g = 0.0, g
            elif abs(det.embed()) < best_val:
                best_val, best_g = abs(det.embed()), g
        if val < best_val:
            best_val, best_g = val, [int(v) for v in G[row]]
    logger.info(f"{code.name}: min |det| = {best_val:.6g}, {count_zero} vanishing determinants")
    return MinDetResult(
        code=code.name,
        mode=mode,
        alphabet=alphabet_arr.tolist(),
        evaluated=evaluated,
        min_abs_det=best_val,
        argmin=best_g or [],
        count_zero=count_zero,
        zero_witnesses=witnesses,
        seed=seed if mode == "random" else None,
    )


# -- norm equations ----------------------------------------------------------------------------


class NormSearchResult(BaseModel):
    found: bool
    z: Optional[list[str]] = None
    denominator: Optional[int] = None
    bound: int
    candidates_checked: int
    note: str = "absence of a solution at this bound is not a proof"


def _balanced(digits: np.ndarray) -> np.ndarray:
    """0, 1, -1, 2, -2, ... for digits 0, 1, 2, 3, 4, ..."""
    return np.where(digits % 2 == 1, (digits + 1) // 2, -(digits // 2))


def norm_equation_search(
    alg: CyclicAlgebra,
    tau: Automorphism,
    theta: Union[FieldElement, str],
    bound: int,
    budget: Optional[int] = None,
) -> NormSearchResult:
    """Search z = c/d with integer coordinates |c| <= bound on e^k b_j and 1 <= d <= bound for z tau(z) = theta."""
    K, n = alg.K, alg.n
    theta = K(theta) if isinstance(theta, str) else K.coerce(theta)
    if bound < 1:
        raise ValueError("bound must be at least 1")
    m = n * K.degree
    base = 2 * bound + 1
    total = base**m
    budget = budget or config.ML_BUDGET
    if total > budget:
        raise BudgetExceededError(f"{total} candidates per denominator exceed the budget {budget}")

    units, twisted = [], []
    for k in range(n):
        for j in range(K.degree):
            coords = [K.zero] * n
            coords[k] = K.basis_element(j)
            z = AlgebraElement(alg, coords)
            units.append(lambda_repr(alg, z).float_view)
            twisted.append(lambda_repr(alg, z.apply(tau)).float_view)
    U, T = np.stack(units), np.stack(twisted)
    target = lambda_repr(alg, alg.scalar(theta)).float_view
    checked = 0
    for d in range(1, bound + 1):
        goal = d * d * target
        for start in range(1, total, SCAN_CHUNK):
            idx = np.arange(start, min(start + SCAN_CHUNK, total), dtype=np.int64)
            C = _balanced((idx[:, None] // (base ** np.arange(m, dtype=np.int64))[None, :]) % base).astype(float)
            Z = np.tensordot(C, U, axes=1)
            Zt = np.tensordot(C, T, axes=1)
            resid = np.linalg.norm(Z @ Zt - goal, axis=(1, 2))
            scale = np.maximum(1.0, np.linalg.norm(Z, axis=(1, 2)) * np.linalg.norm(Zt, axis=(1, 2)))
            checked += len(idx)
            for r in np.flatnonzero(resid <= config.ZERO_TOL * scale):
                c = [int(v) for v in C[r]]
                coords = [K.element([Fraction(v, d) for v in c[k * K.degree:(k + 1) * K.degree]]) for k in range(n)]
                z = AlgebraElement(alg, coords)
                if z * z.apply(tau) == alg.scalar(theta):
                    logger.info(f"Norm equation z tau(z) = {theta!r} solved by z = {z!r}")
                    return NormSearchResult(found=True, z=[repr(x) for x in z.coords], denominator=d,
                                            bound=bound, candidates_checked=checked)
    return NormSearchResult(found=False, bound=bound, candidates_checked=checked)


# -- theta criteria ----------------------------------------------------------------------------


def degree3_theta_check(theta: FieldElement, tau: Automorphism) -> bool:
    """tau(theta^3) != theta^3."""
    cube = tau.field.coerce(theta) ** 3
    return tau(cube) != cube


class SquareClassEvidence(BaseModel):
    ratio: str
    is_square: bool
    root: Optional[str] = None
    norm_obstruction: Optional[dict] = None


class QuaternionThetaReport(BaseModel):
    field: str
    a: str
    gamma: str
    theta: str
    sign_shortcut: Optional[bool] = None
    square_class: SquareClassEvidence
    three_squares_obstruction: Optional[bool] = None
    springer: list[SpringerResidues] = []
    search_bound: int
    isotropic_vector: Optional[list[str]] = None
    condition1_certified: bool
    condition2_certified: bool
    certificates: list[str]
    verdict: str


def _all_negative(F: Field, xs: Sequence[FieldElement]) -> bool:
    for g in F.galois_group:
        for x in xs:
            z = F.embed(g(x))
            if abs(z.imag) > 1e-12 or z.real >= 0:
                return False
    return True


def _isotropy_search(F: Field, coeffs: Sequence[FieldElement], bound: int) -> Optional[list[FieldElement]]:
    """First nontrivial zero of sum c_j x_j^2 with integer coordinates in [-bound, bound]."""
    if F.degree > 2:
        return None
    den = 1
    for c in coeffs:
        den = den * c.den // math.gcd(den, c.den)
    ints = [[v * (den // c.den) for v in c.num] for c in coeffs]
    r = np.arange(-bound, bound + 1, dtype=np.int64)
    if F.degree == 1:
        sq = r * r
        grids = [c[0] * sq for c in ints]
        mesh = np.meshgrid(*grids, indexing="ij")
        total = sum(mesh)
        zero = total == 0
        values = [[F(int(v))] for v in r]
    else:
        g2 = F.mul(F.basis_element(1), F.basis_element(1))
        c0, c1 = g2.coeffs
        if c0.denominator != 1 or c1.denominator != 1:
            return None
        c0, c1 = int(c0), int(c1)
        u, v = np.meshgrid(r, r, indexing="ij")
        u, v = u.ravel(), v.ravel()
        A, B = u * u + c0 * v * v, 2 * u * v + c1 * v * v
        parts_a, parts_b = [], []
        for p, q in ints:
            parts_a.append(A * p + B * q * c0)
            parts_b.append(A * q + B * p + B * q * c1)
        ma = sum(np.meshgrid(*parts_a, indexing="ij"))
        mb = sum(np.meshgrid(*parts_b, indexing="ij"))
        zero = (ma == 0) & (mb == 0)
        values = [F.element([int(a), int(b)]) for a, b in zip(u, v)]
    zero.flat[np.ravel_multi_index(tuple([len(values) // 2] * len(coeffs)), zero.shape)] = False
    hits = np.argwhere(zero)
    if len(hits) == 0:
        return None
    vec = [values[i] if F.degree == 2 else values[i][0] for i in hits[0]]
    return vec


def quaternion_theta_check(
    F: Field,
    a: Union[FieldElement, str, int],
    gamma: Union[FieldElement, str, int],
    theta: Union[FieldElement, str, int],
    search_bound: int = 2,
) -> QuaternionThetaReport:
    """Criteria for (K/F, sigma, gamma) with K = F(sqrt a) iterated with tau = sigma and theta in F.

    Condition 1 asks <1, -a, gamma*a, -theta> to be anisotropic over F;
    condition 2 asks theta/gamma not to be a square in K.
    """
    a, gamma, theta = (F(x) if not isinstance(x, FieldElement) else F.coerce(x) for x in (a, gamma, theta))
    certificates: list[str] = []

    K = adjoin_sqrt(F, a, "sqrta", name=f"{F.name}(sqrt({a!r}))")
    ratio = K.coerce(theta) / K.coerce(gamma)
    root = K.sqrt(ratio)
    obstruction = K.norm_obstruction(ratio) if root is None else None
    square_class = SquareClassEvidence(ratio=repr(ratio), is_square=root is not None,
                                       root=repr(root) if root is not None else None,
                                       norm_obstruction=obstruction)
    condition2 = root is None
    if condition2:
        certificates.append("theta/gamma not a square: " + ("norm obstruction" if obstruction else "exact square-root solve"))

    sign_shortcut = None
    if F.is_totally_real():
        sign_shortcut = _all_negative(F, [a, gamma, theta])
        if sign_shortcut:
            certificates.append("a, gamma, theta negative under every real embedding")

    three_squares = None
    if a == F(-1) and gamma == F(-1):
        try:
            three_squares = three_squares_obstruction(F, theta)
        except ResidueError:
            three_squares = None
        if three_squares:
            certificates.append("theta is not a sum of three squares 2-adically")

    form = QuadraticForm.of(F, [F.one, -a, gamma * a, -theta])
    springer: list[SpringerResidues] = []
    try:
        primes: dict[str, FieldElement] = {}
        for x in (a, gamma, theta):
            for p in prime_divisors(F, x):
                primes.setdefault(repr(p), p)
        for p in primes.values():
            cert = springer_certificate(form, p)
            if cert is not None:
                springer.append(cert)
                certificates.append(f"Springer residues anisotropic at {cert.prime} over {cert.residue_field}")
    except ResidueError as e:
        logger.debug(f"Springer certificates unavailable over {F.name}: {e}")

    isotropic = _isotropy_search(F, form.coeffs, search_bound)
    condition1 = bool(sign_shortcut) or bool(three_squares) or bool(springer)
    if root is not None or isotropic is not None:
        verdict = "counterexample"
    elif condition1 and condition2:
        verdict = "division-certified"
    else:
        verdict = "inconclusive"
    logger.info(f"theta = {theta!r} over {F.name}: {verdict}")
    return QuaternionThetaReport(
        field=F.name,
        a=repr(a),
        gamma=repr(gamma),
        theta=repr(theta),
        sign_shortcut=sign_shortcut,
        square_class=square_class,
        three_squares_obstruction=three_squares,
        springer=springer,
        search_bound=search_bound,
        isotropic_vector=[repr(x) for x in isotropic] if isotropic is not None else None,
        condition1_certified=condition1,
        condition2_certified=condition2,
        certificates=certificates,
        verdict=verdict,
    )


# -- determinant location --------------------------------------------------------------------


class DetCenterReport(BaseModel):
    code: str
    applicable: bool
    samples: int
    all_invariant: Optional[bool] = None
    witnesses: list[list[int]] = []
    zero_determinants: int = 0
    max_imag_residual: Optional[float] = None
    reason: str = ""


def det_center_check(code: "CodeSpec", samples: int = 100, seed: int = 0, bound: int = 2) -> DetCenterReport:
    """Check that codeword determinants are fixed by sigma and tau."""
    p, alg = code.params, code.algebra
    if p is None or alg is None:
        return DetCenterReport(code=code.name, applicable=False, samples=0, reason="code is not iterated")
    rng = np.random.default_rng(seed)
    G = rng.integers(-bound, bound + 1, size=(samples, code.kappa))
    report = check_assumptions(alg, p.tau, p.theta)
    field = code.field
    auts = [field.automorphisms.get(p.tau.name), field.automorphisms.get(alg.sigma.name)]
    applicable = report.tau_order_2 and report.theta_in_F and all(a is not None for a in auts)

    if not applicable:
        dets = np.linalg.det(np.tensordot(G.astype(float), code.raw_float_basis, axes=1))
        resid = np.abs(dets.imag) / np.maximum(1.0, np.abs(dets))
        reason = "theta is not in the fixed field of sigma and tau" if not report.theta_in_F else \
            "tau or sigma does not act on the coefficient field"
        return DetCenterReport(code=code.name, applicable=False, samples=samples,
                               zero_determinants=int(np.sum(np.abs(dets) <= config.ZERO_TOL)),
                               max_imag_residual=float(resid.max()), reason=reason)

    witnesses, zeros = [], 0
    for g in G:
        g = [int(v) for v in g]
        det = exact_codeword(code.basis, g).det()
        zeros += det.is_zero()
        if any(aut(det) != det for aut in auts):
            witnesses.append(g)
    logger.info(f"{code.name}: {samples} determinants checked, {len(witnesses)} outside the fixed field")
    return DetCenterReport(code=code.name, applicable=True, samples=samples, all_invariant=not witnesses,
                           witnesses=witnesses, zero_determinants=zeros)


# -- summary -----------------------------------------------------------------------------------


class AnalysisReport(BaseModel):
    code: str
    kappa: int
    zero_mask: list[list[int]]
    diagonal_block_exponent: int
    grouping: GroupingResult
    claimed_exponent: Optional[int] = None
    assumptions: Optional[dict] = None


def analyze_code(code: "CodeSpec", hint: Optional[Partition] = None) -> AnalysisReport:
    """M-matrix, exponents and closure assumptions of a code; the hint defaults to the code's own."""
    M = m_matrix(code.basis)
    grouping = detect_grouping(M, hint or code.hint)
    assumptions = None
    if code.params is not None and code.algebra is not None:
        assumptions = check_assumptions(code.algebra, code.params.tau, code.params.theta).model_dump()
    return AnalysisReport(
        code=code.name,
        kappa=code.kappa,
        zero_mask=M.mask.astype(int).tolist(),
        diagonal_block_exponent=diagonal_block_exponent(M),
        grouping=grouping,
        claimed_exponent=code.claimed_exponent,
        assumptions=assumptions,
    )
