"""Chained transmit-basis propagation for the two-sided ring.

The baseline ring designs pay antennas for nulling both neighbors at once.
The options here instead fix transmit bases at two starting cells and walk
the ring: each step looks at one middle cell whose users already null the
interference arriving from the walk's source side, then picks the next
transmit basis so that the interference arriving from the far side lands in
(or near) the same already-nulled subspace. Two walks started at adjacent
cells cover every cell; where a walk runs into a basis that is already fixed
it stops, and that middle cell is left with one unaligned side. Those stop
cells are the ``boundary_cells`` of the report.

Option letters select the step rule:

* ``a`` skips the walk entirely and solves the alignment equalities of each
  parity class of cells jointly (one merged system when the ring is odd),
  which removes the boundary at the price of a ring-sized null problem;
* ``b`` solves the alignment equation exactly with a right inverse of the
  middle cell's stacked cross channels;
* ``c`` nulls the middle cell's filtered cross channels directly;
* ``d`` picks the closest member of a shared codebook in summed squared
  chordal distance, breaking ties toward the lowest index;
* ``e`` takes the eigenvectors of the middle cell's filtered interference
  covariance with the smallest eigenvalues, the closed-form minimizer of the
  leaked power at unit-power bases.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import (
    DimensionMismatch,
    MissingCodebook,
    SingularConstruction,
    UnknownApproach,
)
from ..evaluation import chordal_distance_sq
from ..linalg import (
    left_null_basis,
    null_space_basis,
    numerical_rank,
    pseudo_inverse,
    smallest_eigvecs,
)
from ..network import ChannelSet, NetworkConfig
from ..seeding import (
    ROLE_CODEBOOK,
    ROLE_DESIGN,
    TAG_CELL_BASIS,
    TAG_NULL_MIX,
    rng_for,
)
from ..tables import require_feasible
from .common import (
    CoderSet,
    freeze,
    mixed_null_basis,
    orthonormalize,
    per_cell_inverse,
    random_orthonormal,
)

__all__ = [
    "Codebook",
    "ChainReport",
    "generate_codebook",
    "design_cyclic_two_side_advanced",
]


@dataclass(frozen=True)
class Codebook:
    """A shared set of candidate transmit bases, one of which each chained
    cell adopts under option ``d``. Candidate ``i`` depends only on the seed
    and ``i``, so growing the size extends the set without reshuffling it."""

    blocks: tuple[np.ndarray, ...]
    seed: int

    def __len__(self) -> int:
        return len(self.blocks)


def generate_codebook(cfg: NetworkConfig, size: int, seed: int) -> Codebook:
    """Draw ``size`` orthonormal transmit bases shared by the whole network."""
    if size < 1:
        raise MissingCodebook(f"codebook size must be positive, got {size}")
    Md = cfg.M * cfg.d
    blocks = tuple(
        freeze(random_orthonormal(rng_for(seed, ROLE_CODEBOOK, i), cfg.N_t, Md))
        for i in range(size)
    )
    return Codebook(blocks=blocks, seed=seed)


@dataclass(frozen=True)
class ChainReport:
    """How the walk went: visited steps ``(source, middle, target)``, the
    middles left with one unaligned side, and (option ``d``) which codebook
    index each chained cell adopted."""

    boundary_cells: tuple[int, ...]
    steps: tuple[tuple[int, int, int], ...]
    selections: dict[int, int] | None = None


def design_cyclic_two_side_advanced(
    channels: ChannelSet,
    option: str,
    seed: int,
    codebook: Codebook | None = None,
) -> CoderSet:
    """Build chained coders for one realization of the two-sided ring."""
    cfg = channels.config
    if option not in ("a", "b", "c", "d", "e"):
        raise UnknownApproach(f"option {option!r} is not defined for this layout")
    require_feasible(cfg, option)
    if option == "a":
        phi, rx, report = _parity_aligned(channels, seed)
    else:
        phi, rx, report = _walk(channels, option, seed, codebook)
    precoders, coeffs, stacks = per_cell_inverse(channels, rx, phi)
    intermediates = {
        "cell_tx_basis": {k: freeze(p) for k, p in phi.items()},
        "precoder_coeffs": {key: freeze(c) for key, c in coeffs.items()},
        "design_stack": {k: freeze(s) for k, s in stacks.items()},
        "chain_report": report,
    }
    return CoderSet(
        config=cfg,
        approach=option,
        precoders={key: freeze(v) for key, v in precoders.items()},
        receive_filters={key: freeze(u) for key, u in rx.items()},
        intermediates=intermediates,
    )


def _check_codebook(cfg: NetworkConfig, codebook: Codebook) -> None:
    want = (cfg.N_t, cfg.M * cfg.d)
    for i, block in enumerate(codebook.blocks):
        if block.shape != want:
            raise DimensionMismatch(
                f"codebook block {i} has shape {block.shape}, expected {want}"
            )


def _walk(channels: ChannelSet, option: str, seed: int, codebook: Codebook | None):
    cfg = channels.config
    K, M, d = cfg.K, cfg.M, cfg.d
    Md = M * d
    if option == "d":
        if codebook is None:
            raise MissingCodebook("option 'd' needs a transmit codebook; none was provided")
        _check_codebook(cfg, codebook)
        phi = {0: np.asarray(codebook.blocks[0]), 1: np.asarray(codebook.blocks[0])}
    else:
        phi = {
            k: random_orthonormal(
                rng_for(seed, ROLE_DESIGN, TAG_CELL_BASIS, k), cfg.N_t, Md
            )
            for k in (0, 1)
        }
    rx: dict[tuple[int, int], np.ndarray] = {}
    steps: list[tuple[int, int, int]] = []
    boundary: list[int] = []
    selections: dict[int, int] = {}
    for start in (0, 1):
        i = start
        while True:
            middle = (i + 1) % K
            target = (i + 2) % K
            incoming = {m: channels.link(i, middle, m) @ phi[i] for m in range(M)}
            for m in range(M):
                rx[(middle, m)] = left_null_basis(incoming[m], width=d)
            steps.append((i, middle, target))
            if target in phi:
                boundary.append(middle)
                break
            if option == "b":
                stack_t = np.vstack(
                    [channels.link(target, middle, m) for m in range(M)]
                )
                if numerical_rank(stack_t) < stack_t.shape[0]:
                    raise SingularConstruction(
                        "stacked cross channels lost row rank; no exact aligned basis"
                    )
                raw = pseudo_inverse(stack_t) @ np.vstack(
                    [incoming[m] for m in range(M)]
                )
                phi[target], _ = orthonormalize(raw)
            elif option == "c":
                rows = np.vstack(
                    [
                        rx[(middle, m)].conj().T @ channels.link(target, middle, m)
                        for m in range(M)
                    ]
                )
                phi[target] = null_space_basis(rows, width=Md)
            elif option == "d":
                best_idx = 0
                best_score = None
                for idx, cand in enumerate(codebook.blocks):
                    score = sum(
                        chordal_distance_sq(
                            incoming[m], channels.link(target, middle, m) @ cand
                        )
                        for m in range(M)
                    )
                    if best_score is None or score < best_score:
                        best_idx, best_score = idx, score
                selections[target] = best_idx
                phi[target] = np.asarray(codebook.blocks[best_idx])
            else:
                s = np.zeros((cfg.N_t, cfg.N_t), dtype=np.complex128)
                for m in range(M):
                    h = channels.link(target, middle, m)
                    u = rx[(middle, m)]
                    filtered = u.conj().T @ h
                    s = s + filtered.conj().T @ filtered
                phi[target] = smallest_eigvecs(s, Md)
            i = target
    report = ChainReport(
        boundary_cells=tuple(sorted(boundary)),
        steps=tuple(steps),
        selections=selections or None,
    )
    return phi, rx, report


def _parity_aligned(channels: ChannelSet, seed: int):
    cfg = channels.config
    K, M, d = cfg.K, cfg.M, cfg.d
    Md = M * d
    N_t, N_r = cfg.N_t, cfg.N_r

    def solve(middles: list[int], sources: list[int]) -> dict[int, np.ndarray]:
        pos = {s: j for j, s in enumerate(sources)}
        b = np.zeros((len(middles) * M * N_r, len(sources) * N_t), dtype=np.complex128)
        r = 0
        for c in middles:
            left, right = (c - 1) % K, (c + 1) % K
            for m in range(M):
                b[r : r + N_r, pos[left] * N_t : (pos[left] + 1) * N_t] = channels.link(
                    left, c, m
                )
                b[r : r + N_r, pos[right] * N_t : (pos[right] + 1) * N_t] -= channels.link(
                    right, c, m
                )
                r += N_r
        z = mixed_null_basis(
            b, Md, rng_for(seed, ROLE_DESIGN, TAG_NULL_MIX, sources[0])
        )
        out = {}
        for s in sources:
            block, _ = orthonormalize(z[pos[s] * N_t : (pos[s] + 1) * N_t, :])
            out[s] = block
        return out

    phi: dict[int, np.ndarray] = {}
    steps: list[tuple[int, int, int]] = []
    if K % 2 == 0:
        phi.update(solve(list(range(1, K, 2)), list(range(0, K, 2))))
        phi.update(solve(list(range(0, K, 2)), list(range(1, K, 2))))
    else:
        phi.update(solve(list(range(K)), list(range(K))))
    rx: dict[tuple[int, int], np.ndarray] = {}
    for c in range(K):
        left, right = (c - 1) % K, (c + 1) % K
        steps.append((left, c, right))
        for m in range(M):
            rx[(c, m)] = left_null_basis(channels.link(left, c, m) @ phi[left], width=d)
    report = ChainReport(boundary_cells=(), steps=tuple(steps), selections=None)
    return phi, rx, report
