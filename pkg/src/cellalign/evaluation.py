"""Numerical verification and rate evaluation.

Two layers live here. The bottom layer is pure matrix arithmetic: subspace
distance, leakage power, per-realization sum rate. The top layer runs Monte
Carlo sweeps over channel draws, averages the rate curve, and extracts the
high-power slope that certifies how many interference-free streams a design
actually delivers.

Rates follow the standard Gaussian-signaling expression. Each user's desired
block and interference blocks are compressed through its receive filter, every
stream gets an equal share ``rho / (M d)`` of the cell transmit power, and the
per-user rate is ``log2 det(I + S (J + I)^{-1})`` with ``S`` the desired and
``J`` the interference covariance at the filter output.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, InsufficientPoints
from .linalg import orthonormal_basis
from .network import ChannelSet, NetworkConfig, generate_channels
from .seeding import ROLE_CODEBOOK, ROLE_DESIGN, ROLE_TRIAL, derive_seed

__all__ = [
    "chordal_distance_sq",
    "interference_leakage",
    "LeakageReport",
    "leakage_report",
    "sum_rate",
    "RateCurve",
    "SweepResult",
    "rate_sweep",
    "rate_sweep_detailed",
    "dof_slope",
    "DOF_WINDOW_DB",
]

DOF_WINDOW_DB = (40.0, 60.0)


def chordal_distance_sq(p: np.ndarray, q: np.ndarray) -> float:
    """Squared chordal distance between the column spans of ``p`` and ``q``.

    Both inputs are orthonormalized first, so arbitrary bases of the same
    subspace compare as equal. The value is ``w`` minus the sum of squared
    cosines of the principal angles, hence ``0`` for identical spans and
    ``w`` for orthogonal ones, ``w`` being the common subspace dimension.
    """
    op = orthonormal_basis(np.asarray(p, dtype=np.complex128))
    oq = orthonormal_basis(np.asarray(q, dtype=np.complex128))
    if op.shape != oq.shape:
        raise DimensionMismatch(
            f"cannot compare subspaces of shapes {op.shape} and {oq.shape}"
        )
    overlap = op.conj().T @ oq
    value = op.shape[1] - float(np.sum(np.abs(overlap) ** 2))
    return max(value, 0.0)


def interference_leakage(p: np.ndarray, q: np.ndarray) -> float:
    """Leakage power ``||P^H Q||_F^2`` between two blocks in the same space."""
    a = np.asarray(p, dtype=np.complex128)
    b = np.asarray(q, dtype=np.complex128)
    if a.shape[0] != b.shape[0]:
        raise DimensionMismatch(
            f"blocks live in different spaces: {a.shape[0]} vs {b.shape[0]} rows"
        )
    return float(np.linalg.norm(a.conj().T @ b) ** 2)


@dataclass(frozen=True)
class LeakageReport:
    """Residual interference after filtering, per user and per link term.

    ``per_term`` is keyed ``(rx_cell, rx_user, tx_cell, tx_user)`` and holds
    raw leakage powers; ``normalized`` holds the matching residuals
    ``||U^H H V||_F / max(1, ||H||_F)`` used for pass/fail checks.
    """

    per_user: dict[tuple[int, int], float]
    per_term: dict[tuple[int, int, int, int], float]
    normalized: dict[tuple[int, int, int, int], float]
    total: float
    max_normalized_residual: float
    mean_normalized_residual: float


def leakage_report(channels: ChannelSet, coders) -> LeakageReport:
    """Evaluate every undesired filtered link of one coded realization."""
    cfg = channels.config
    per_user: dict[tuple[int, int], float] = {}
    per_term: dict[tuple[int, int, int, int], float] = {}
    normalized: dict[tuple[int, int, int, int], float] = {}
    for k in range(cfg.K):
        for m in range(cfg.M):
            u = coders.receive_filters[(k, m)]
            acc = 0.0
            sources = [(k, n) for n in range(cfg.M) if n != m]
            sources += [
                (j, n) for j in cfg.interfering_cells(k, m) for n in range(cfg.M)
            ]
            for j, n in sources:
                h = channels.link(j, k, m)
                block = u.conj().T @ h @ coders.precoders[(j, n)]
                power = float(np.linalg.norm(block) ** 2)
                per_term[(k, m, j, n)] = power
                normalized[(k, m, j, n)] = math.sqrt(power) / max(
                    1.0, float(np.linalg.norm(h))
                )
                acc += power
            per_user[(k, m)] = acc
    values = list(normalized.values())
    return LeakageReport(
        per_user=per_user,
        per_term=per_term,
        normalized=normalized,
        total=float(sum(per_user.values())),
        max_normalized_residual=max(values) if values else 0.0,
        mean_normalized_residual=(sum(values) / len(values)) if values else 0.0,
    )


def sum_rate(channels: ChannelSet, coders, snr_db: float) -> float:
    """Network sum rate in bits per channel use at one transmit power."""
    cfg = channels.config
    rho = 10.0 ** (snr_db / 10.0)
    stream_power = rho / (cfg.M * cfg.d)
    total = 0.0
    for k in range(cfg.K):
        for m in range(cfg.M):
            u = coders.receive_filters[(k, m)]
            desired = u.conj().T @ channels.link(k, k, m) @ coders.precoders[(k, m)]
            s = stream_power * (desired @ desired.conj().T)
            j = np.zeros_like(s)
            sources = [(k, n) for n in range(cfg.M) if n != m]
            sources += [
                (jj, n) for jj in cfg.interfering_cells(k, m) for n in range(cfg.M)
            ]
            for jj, n in sources:
                block = u.conj().T @ channels.link(jj, k, m) @ coders.precoders[(jj, n)]
                j = j + stream_power * (block @ block.conj().T)
            eye = np.eye(cfg.d, dtype=np.complex128)
            noisy = 0.5 * ((j + eye) + (j + eye).conj().T)
            full = 0.5 * ((noisy + s) + (noisy + s).conj().T)
            _, logdet_full = np.linalg.slogdet(full)
            _, logdet_noise = np.linalg.slogdet(noisy)
            total += (logdet_full - logdet_noise) / math.log(2.0)
    return total


@dataclass(frozen=True)
class RateCurve:
    """Trial-averaged sum rate over an SNR grid."""

    snr_db: tuple[float, ...]
    sum_rate_bits: tuple[float, ...]
    trials: int

    def as_rows(self) -> list[tuple[float, float]]:
        return list(zip(self.snr_db, self.sum_rate_bits))


@dataclass(frozen=True)
class SweepResult:
    """A rate curve plus the alignment diagnostics gathered along the way."""

    curve: RateCurve
    max_normalized_residual: float
    mean_normalized_residual: float
    boundary_cells: tuple[int, ...]


def _run_trial(args) -> tuple[list[float], float, float, tuple[int, ...]]:
    cfg, approach, seed, t, snr_grid, codebook_size = args
    from .designs import design_coders, generate_codebook

    channels = generate_channels(cfg, derive_seed(seed, ROLE_TRIAL, t))
    codebook = None
    if codebook_size is not None:
        codebook = generate_codebook(
            cfg, codebook_size, derive_seed(seed, ROLE_CODEBOOK, t)
        )
    coders = design_coders(channels, approach, derive_seed(seed, ROLE_DESIGN, t), codebook)
    report = leakage_report(channels, coders)
    rates = [sum_rate(channels, coders, snr) for snr in snr_grid]
    chain = coders.intermediates.get("chain_report")
    boundary = tuple(chain.boundary_cells) if chain is not None else ()
    return rates, report.max_normalized_residual, report.mean_normalized_residual, boundary


def rate_sweep_detailed(
    cfg: NetworkConfig,
    approach: str,
    snr_grid_db,
    trials: int,
    seed: int,
    codebook_size: int | None = None,
    workers: int | None = None,
) -> SweepResult:
    """Average the sum rate over independent channel draws.

    Every trial draws fresh channels, a fresh design seed, and (when a
    codebook is in play) a fresh codebook, all derived deterministically
    from ``seed`` and the trial index, so results do not depend on worker
    count or execution order.
    """
    if trials < 1:
        raise InsufficientPoints("at least one trial is required")
    grid = tuple(float(s) for s in snr_grid_db)
    jobs = [(cfg, approach, seed, t, grid, codebook_size) for t in range(trials)]
    if workers and workers > 1 and trials > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(_run_trial, jobs))
    else:
        outcomes = [_run_trial(job) for job in jobs]
    rate_matrix = np.array([out[0] for out in outcomes])
    mean_rates = tuple(float(v) for v in rate_matrix.mean(axis=0))
    curve = RateCurve(snr_db=grid, sum_rate_bits=mean_rates, trials=trials)
    return SweepResult(
        curve=curve,
        max_normalized_residual=max(out[1] for out in outcomes),
        mean_normalized_residual=float(
            sum(out[2] for out in outcomes) / len(outcomes)
        ),
        boundary_cells=outcomes[0][3],
    )


def rate_sweep(
    cfg: NetworkConfig,
    approach: str,
    snr_grid_db,
    trials: int,
    seed: int,
    codebook_size: int | None = None,
    workers: int | None = None,
) -> RateCurve:
    """Trial-averaged rate curve; see :func:`rate_sweep_detailed`."""
    return rate_sweep_detailed(
        cfg, approach, snr_grid_db, trials, seed, codebook_size, workers
    ).curve


def dof_slope(curve: RateCurve, window_db: tuple[float, float] = DOF_WINDOW_DB) -> float:
    """High-power slope of the rate curve against ``log2`` transmit power.

    Fits a least-squares line to the points whose SNR falls inside
    ``window_db`` (inclusive). The slope estimates the number of
    interference-free streams the design sustains.
    """
    lo, hi = window_db
    xs = []
    ys = []
    for snr, rate in zip(curve.snr_db, curve.sum_rate_bits):
        if lo <= snr <= hi:
            xs.append(snr * math.log2(10.0) / 10.0)
            ys.append(rate)
    if len(xs) < 2:
        raise InsufficientPoints(
            f"need at least two grid points inside {window_db}, found {len(xs)}"
        )
    slope, _ = np.polyfit(np.array(xs), np.array(ys), 1)
    return float(slope)
