"""
Coherent Rayleigh-fading Monte Carlo simulation: Y = H X + V.

SNR is E||HX||^2 / E||V||^2 per receive antenna, i.e. Es/N0 where Es is the
mean energy of the PAM alphabet; codewords are normalized to E||X||_F^2 = T * Es.
"""

from __future__ import annotations

import json
import logging
import math
from multiprocessing import Pool
from pathlib import Path
from typing import Callable, Optional, Sequence

import numpy as np
from pydantic import BaseModel, Field as PydanticField, field_validator

from . import config
from .analysis import GroupingResult, detect_grouping, grouping_order, m_matrix
from .catalog import CodeSpec, make_code
from .decode import RealLattice, lattice_matrix, sphere_decode, vectorize
from .errors import ConfigError, RankDeficientError

logger = logging.getLogger(__name__)

TRIAL_CHUNK = 256


def db2lin(x_db: float) -> float:
    return 10 ** (x_db / 10)


def sample_channel(
    n_rx: int, n_tx: int, rng: np.random.Generator, block_length: Optional[int] = None
) -> tuple[np.ndarray, Callable[[float], np.ndarray]]:
    """H with i.i.d. CN(0, 1) entries and a sampler of n_rx x T noise with CN(0, n0) entries."""
    if n_rx <= 0 or n_tx <= 0:
        raise ValueError("antenna counts must be positive")
    T = block_length or n_tx
    H = (rng.standard_normal((n_rx, n_tx)) + 1j * rng.standard_normal((n_rx, n_tx))) / math.sqrt(2)

    def noise(n0: float) -> np.ndarray:
        return math.sqrt(n0 / 2) * (rng.standard_normal((n_rx, T)) + 1j * rng.standard_normal((n_rx, T)))

    return H, noise


def alphabet_energy(alphabet: Sequence[int]) -> float:
    a = np.asarray(alphabet, dtype=float)
    return float(np.mean(a * a))


class SimConfig(BaseModel):
    code: str
    theta: Optional[str] = None
    scaled: Optional[bool] = None
    snr_db_grid: list[float]
    trials_per_point: int = PydanticField(ge=1)
    alphabet: list[int] = [-1, 1]
    seed: int = 0
    workers: int = config.WORKERS
    n_rx: Optional[int] = None
    noiseless: bool = False
    order: str = "basis"

    @field_validator("snr_db_grid")
    @classmethod
    def _increasing(cls, grid: list[float]) -> list[float]:
        if not grid:
            raise ValueError("SNR grid must be nonempty")
        if any(b <= a for a, b in zip(grid, grid[1:])):
            raise ValueError("SNR grid must be strictly increasing")
        return grid

    @field_validator("alphabet")
    @classmethod
    def _alphabet(cls, alphabet: list[int]) -> list[int]:
        if len(set(alphabet)) < 2:
            raise ValueError("alphabet needs at least two symbols")
        return sorted(set(alphabet))

    @field_validator("order")
    @classmethod
    def _order(cls, order: str) -> str:
        if order not in ("basis", "grouping"):
            raise ValueError("order must be 'basis' or 'grouping'")
        return order

    @classmethod
    def from_file(cls, path: str | Path) -> "SimConfig":
        path = Path(path)
        if not path.is_file():
            raise ConfigError(f"simulation config {path} not found")
        try:
            return cls.model_validate(json.loads(path.read_text()))
        except json.JSONDecodeError as e:
            raise ConfigError(f"{path}: invalid JSON: {e}") from e

    def build_code(self) -> CodeSpec:
        return make_code(self.code, theta=self.theta, scaled=self.scaled)

    def echo(self) -> dict:
        """Configuration that determines the results (worker count excluded)."""
        return self.model_dump(exclude={"workers"})


class SimRow(BaseModel):
    snr_db: float
    trials: int
    block_errors: int
    bler: float
    mean_nodes: float
    ci95: float
    skipped: int = 0


class SimResult(BaseModel):
    code: str
    rows: list[SimRow]


def ci95_halfwidth(errors: int, trials: int) -> float:
    if trials == 0:
        return 0.0
    p = errors / trials
    return 1.96 * math.sqrt(p * (1 - p) / trials)


def decoding_order(code: CodeSpec, order: str) -> Optional[list[int]]:
    """None for the basis order, else the conditioned-last grouping permutation."""
    if order == "basis":
        return None
    mask = m_matrix(code.basis)
    result: GroupingResult = detect_grouping(mask, code.hint)
    if not result.verified:
        result = detect_grouping(mask)
    logger.info(f"{code.name}: decoding in grouping order ({result.kind}, exponent {result.exponent})")
    return grouping_order(result)


def _run_trials(task: tuple) -> list[tuple[int, int, int, int]]:
    """(trial, error, nodes, skipped) for a block of trials at one SNR point."""
    float_basis, alphabet, n_rx, snr_db, snr_index, seed, start, stop, noiseless, order = task
    side = float_basis.shape[1]
    n0 = alphabet_energy(alphabet) / db2lin(snr_db)
    out = []
    for trial in range(start, stop):
        rng = np.random.default_rng([seed, snr_index, trial])
        g = rng.choice(alphabet, size=float_basis.shape[0])
        H, noise = sample_channel(n_rx, side, rng)
        Y = H @ np.tensordot(g.astype(float), float_basis, axes=1)
        if not noiseless:
            Y = Y + noise(n0)
        L = RealLattice(lattice_matrix(float_basis, H), H)
        try:
            result = sphere_decode(L, vectorize(Y), alphabet, order)
        except RankDeficientError:
            out.append((trial, 0, 0, 1))
            continue
        out.append((trial, int(result.g_hat != [int(v) for v in g]), result.nodes_visited, 0))
    return out


def run_bler(cfg: SimConfig, code: Optional[CodeSpec] = None) -> SimResult:
    """BLER per SNR point; per-trial streams default_rng([seed, snr_index, trial])."""
    code = code or cfg.build_code()
    n_rx = cfg.n_rx or code.default_n_rx
    if 2 * n_rx * code.side < code.kappa:
        logger.warning(f"{n_rx} receive antennas give an underdetermined lattice for kappa = {code.kappa}")
    order = decoding_order(code, cfg.order)
    alphabet = np.array(cfg.alphabet, dtype=np.int64)
    # one pool serves every SNR point
    pool = Pool(cfg.workers) if cfg.workers > 1 and cfg.trials_per_point > TRIAL_CHUNK else None
    rows = []
    try:
        for snr_index, snr_db in enumerate(cfg.snr_db_grid):
            tasks = [
                (code.float_basis, alphabet, n_rx, snr_db, snr_index, cfg.seed, s,
                 min(s + TRIAL_CHUNK, cfg.trials_per_point), cfg.noiseless, order)
                for s in range(0, cfg.trials_per_point, TRIAL_CHUNK)
            ]
            chunks = pool.map(_run_trials, tasks) if pool is not None else [_run_trials(t) for t in tasks]
            rows.append(_sim_row(code.name, snr_db, chunks))
    finally:
        if pool is not None:
            pool.close()
            pool.join()
    return SimResult(code=code.name, rows=rows)


def _sim_row(name: str, snr_db: float, chunks: list[list[tuple[int, int, int, int]]]) -> SimRow:
    per_trial = sorted(r for chunk in chunks for r in chunk)
    decoded = [r for r in per_trial if not r[3]]
    errors = sum(r[1] for r in decoded)
    nodes = sum(r[2] for r in decoded)
    trials = len(decoded)
    row = SimRow(
        snr_db=snr_db,
        trials=trials,
        block_errors=errors,
        bler=errors / trials if trials else 0.0,
        mean_nodes=nodes / trials if trials else 0.0,
        ci95=ci95_halfwidth(errors, trials),
        skipped=len(per_trial) - trials,
    )
    logger.info(f"{name} @ {snr_db} dB: BLER {row.bler:.4g} ({errors}/{trials}), mean nodes {row.mean_nodes:.1f}")
    return row


class BenchRow(BaseModel):
    trial: int
    snr: float
    nodes: int
    correct: bool


def decode_bench(
    code: CodeSpec,
    snr_db: float,
    trials: int,
    seed: int = 0,
    order: str = "basis",
    alphabet: Sequence[int] = (-1, 1),
    n_rx: Optional[int] = None,
) -> list[BenchRow]:
    """Per-trial node counts of the sphere decoder at one SNR."""
    perm = decoding_order(code, order)
    task = (code.float_basis, np.array(sorted(set(alphabet)), dtype=np.int64), n_rx or code.default_n_rx,
            snr_db, 0, seed, 0, trials, False, perm)
    return [BenchRow(trial=t, snr=snr_db, nodes=nodes, correct=not err)
            for t, err, nodes, skipped in _run_trials(task) if not skipped]


def measured_energy(code: CodeSpec, alphabet: Sequence[int], samples: int, seed: int = 0) -> float:
    """Sample mean of ||X||_F^2 over uniform coefficient vectors."""
    rng = np.random.default_rng(seed)
    G = rng.choice(np.asarray(alphabet), size=(samples, code.kappa)).astype(float)
    X = np.tensordot(G, code.float_basis, axes=1)
    return float(np.mean(np.sum(np.abs(X) ** 2, axis=(1, 2))))

