"""
Real-lattice ML decoding of linear space-time codes.

Column i of the lattice generator is vec(H B_i) with real parts stacked
above imaginary parts, column-major over the n_rx x T product.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import TYPE_CHECKING, Optional, Sequence

import numpy as np
import scipy.linalg
from pydantic import BaseModel

from . import config
from .errors import BudgetExceededError, RankDeficientError

if TYPE_CHECKING:
    from .catalog import CodeSpec

logger = logging.getLogger(__name__)

BRUTE_CHUNK = 1 << 16
# Relative slack for metric ties and pruning
TIE_TOL = 1e-9


def vectorize(Y: np.ndarray) -> np.ndarray:
    """[Re vec(Y); Im vec(Y)] with column-major vec."""
    v = np.asarray(Y).reshape(-1, order="F")
    return np.concatenate([v.real, v.imag])


def lattice_matrix(float_basis: np.ndarray, H: np.ndarray) -> np.ndarray:
    """Real generator with columns vec(H B_i)."""
    HB = np.einsum("ij,kjl->kil", H, float_basis)
    return np.stack([vectorize(m) for m in HB], axis=1)


def numeric_rank(B: np.ndarray, tol: float = config.ZERO_TOL) -> int:
    """Rank from a column-pivoted QR, relative to the largest |R_ii|."""
    if not np.any(B):
        return 0
    R = scipy.linalg.qr(B, mode="r", pivoting=True)[0]
    diag = np.abs(np.diag(R))
    return int(np.sum(diag > tol * diag[0]))


@dataclass(eq=False)
class RealLattice:
    B: np.ndarray
    H: np.ndarray
    code_name: str = ""

    @cached_property
    def rank(self) -> int:
        return numeric_rank(self.B)

    @property
    def kappa(self) -> int:
        return self.B.shape[1]

    @property
    def full_rank(self) -> bool:
        return self.rank == self.kappa


def build_real_lattice(code: "CodeSpec", H: np.ndarray) -> RealLattice:
    """Generator of y = B g + noise for the normalized code under channel H (n_rx x side)."""
    H = np.asarray(H, dtype=complex)
    if H.ndim != 2 or H.shape[1] != code.side:
        raise ValueError(f"channel of shape {H.shape} does not fit {code.side} transmit antennas")
    return RealLattice(lattice_matrix(code.float_basis, H), H, code.name)


class QRStructure(BaseModel):
    model_config = {"arbitrary_types_allowed": True}

    R: np.ndarray
    zero_mask: np.ndarray
    order: list[int]
    rank_deficient: bool


def qr_structure(L: RealLattice, order: Optional[Sequence[int]] = None, tol: float = config.ZERO_TOL) -> QRStructure:
    """QR of the (reordered) generator and the mask |R_ij| <= tol * ||R||."""
    order = list(range(L.kappa)) if order is None else list(order)
    R = np.linalg.qr(L.B[:, order], mode="r")
    mask = np.abs(R) <= tol * max(np.linalg.norm(R), 1e-300)
    deficient = not L.full_rank
    if deficient:
        logger.warning(f"{L.code_name}: lattice rank {L.rank} < {L.kappa}")
    return QRStructure(R=R, zero_mask=mask, order=order, rank_deficient=deficient)


class DecodeResult(BaseModel):
    g_hat: list[int]
    metric: float
    nodes_visited: int


def metric(B: np.ndarray, y: np.ndarray, g: Sequence[int]) -> float:
    r = y - B @ np.asarray(g, dtype=float)
    return float(r @ r)


def _tie_tol(value: float) -> float:
    return TIE_TOL * max(1.0, value)


def _better(m: float, g: list[int], best_m: float, best_g: Optional[list[int]]) -> bool:
    """Smaller metric wins; metrics within tolerance go to the lexicographically smaller g."""
    if best_g is None:
        return True
    if m < best_m - _tie_tol(best_m):
        return True
    return abs(m - best_m) <= _tie_tol(best_m) and g < best_g


def sphere_decode(
    L: RealLattice,
    y: np.ndarray,
    alphabet: Sequence[int],
    order: Optional[Sequence[int]] = None,
) -> DecodeResult:
    """Depth-first Schnorr-Euchner search over alphabet^kappa with an initially infinite radius.

    The last column of the (reordered) generator is decided first.
    """
    if not L.full_rank:
        raise RankDeficientError(f"{L.code_name}: lattice rank {L.rank} < {L.kappa}")
    symbols = sorted(set(int(a) for a in alphabet))
    if len(symbols) < 2:
        raise ValueError("alphabet needs at least two symbols")
    kappa = L.kappa
    order = list(range(kappa)) if order is None else list(order)
    y = np.asarray(y, dtype=float)
    Q, R = np.linalg.qr(L.B[:, order])
    z = Q.T @ y
    perp = max(0.0, float(y @ y - z @ z))
    diag = np.diag(R)

    x = np.zeros(kappa)
    best_g: Optional[list[int]] = None
    best_m = np.inf
    nodes = 0

    def search(k: int, pd: float) -> None:
        nonlocal best_g, best_m, nodes
        center = (z[k] - R[k, k + 1:] @ x[k + 1:]) / diag[k]
        for a in sorted(symbols, key=lambda s: (abs(s - center), s)):
            d = pd + (diag[k] * (center - a)) ** 2
            if d + perp > best_m + _tie_tol(best_m):
                # children are sorted by distance, the rest are farther
                break
            nodes += 1
            x[k] = a
            if k == 0:
                g = [0] * kappa
                for pos, col in enumerate(order):
                    g[col] = int(x[pos])
                m = metric(L.B, y, g)
                if _better(m, g, best_m, best_g):
                    best_m, best_g = m, g
            else:
                search(k - 1, d)
        x[k] = 0.0

    search(kappa - 1, 0.0)
    return DecodeResult(g_hat=best_g, metric=best_m, nodes_visited=nodes)


def brute_force_ml(L: RealLattice, y: np.ndarray, alphabet: Sequence[int], budget: Optional[int] = None) -> DecodeResult:
    """Exhaustive ML in lexicographic order (first coordinate slowest)."""
    symbols = np.array(sorted(set(int(a) for a in alphabet)), dtype=np.int64)
    kappa = L.kappa
    total = len(symbols) ** kappa
    budget = budget or config.ML_BUDGET
    if total > budget:
        raise BudgetExceededError(f"{total} candidates exceed the ML budget {budget}")
    y = np.asarray(y, dtype=float)
    powers = len(symbols) ** np.arange(kappa - 1, -1, -1, dtype=np.int64)
    best_m, best_g = np.inf, None
    for start in range(0, total, BRUTE_CHUNK):
        idx = np.arange(start, min(start + BRUTE_CHUNK, total), dtype=np.int64)
        G = symbols[(idx[:, None] // powers[None, :]) % len(symbols)]
        resid = y[None, :] - G.astype(float) @ L.B.T
        metrics = np.einsum("ij,ij->i", resid, resid)
        cmin = float(metrics.min())
        row = int(np.flatnonzero(metrics <= cmin + _tie_tol(cmin))[0])
        g = [int(v) for v in G[row]]
        m = metric(L.B, y, g)
        if _better(m, g, best_m, best_g):
            best_m, best_g = m, g
    return DecodeResult(g_hat=best_g, metric=best_m, nodes_visited=total)
