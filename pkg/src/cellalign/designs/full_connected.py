"""Coder constructions for the fully connected layout.

Five closed-form approaches, lettered A through E. They differ in which side
does the zero-forcing work and in whether interference is nulled directly or
first aligned onto a shared reference subspace:

* A: random per-cell transmit bases, receive-side nulling, then a per-cell
  inverse that separates co-served users.
* B: random per-user receive bases, transmit-side nulling, then a per-user
  second-stage filter that separates co-served users.
* C: every receiver applies an aligning inverse so all cross links collapse
  onto one shared filter per user index; transmitters invert a small stack.
* D: each cell jointly solves for its users' receive filters and for the
  per-source reference subspaces its filtered cross channels collapse to;
  transmitters then null the references instead of the raw channels.
* E: one global null problem produces per-user receive-side references and
  per-cell transmit blocks such that every cross link lands inside the
  receiver's reference; receive filters then null the reference alone.
"""

from __future__ import annotations

import numpy as np

from ..errors import UnknownApproach
from ..linalg import left_null_basis, null_space_basis, pseudo_inverse
from ..network import ChannelSet, NetworkConfig
from ..seeding import (
    ROLE_DESIGN,
    TAG_CELL_BASIS,
    TAG_COMMON_FILTER,
    TAG_FREE_BLOCK,
    TAG_NULL_MIX,
    TAG_RX_FILTER,
    TAG_USER_BASIS,
    rng_for,
)
from ..tables import require_feasible
from .common import (
    CoderSet,
    freeze,
    mixed_left_null_basis,
    mixed_null_basis,
    orthonormalize,
    per_cell_inverse,
    random_orthonormal,
    unit_normalize,
)

__all__ = ["design_full_connected"]


def design_full_connected(channels: ChannelSet, approach: str, seed: int) -> CoderSet:
    """Build precoders and receive filters for one channel realization."""
    cfg = channels.config
    require_feasible(cfg, approach)
    builders = {
        "A": _approach_a,
        "B": _approach_b,
        "C": _approach_c,
        "D": _approach_d,
        "E": _approach_e,
    }
    try:
        builder = builders[approach]
    except KeyError:
        raise UnknownApproach(f"approach {approach!r} is not defined for this layout") from None
    return builder(channels, seed)


def _other_cells(cfg: NetworkConfig, k: int) -> list[int]:
    return [j for j in range(cfg.K) if j != k]


def _approach_a(channels: ChannelSet, seed: int) -> CoderSet:
    cfg = channels.config
    K, M, d = cfg.K, cfg.M, cfg.d
    Md = M * d
    phi = {
        k: random_orthonormal(rng_for(seed, ROLE_DESIGN, TAG_CELL_BASIS, k), cfg.N_t, Md)
        for k in range(K)
    }
    rx: dict[tuple[int, int], np.ndarray] = {}
    for k in range(K):
        for m in range(M):
            blocks = [channels.link(j, k, m) @ phi[j] for j in _other_cells(cfg, k)]
            if blocks:
                rx[(k, m)] = left_null_basis(np.hstack(blocks), width=d)
            else:
                rx[(k, m)] = random_orthonormal(
                    rng_for(seed, ROLE_DESIGN, TAG_RX_FILTER, k, m), cfg.N_r, d
                )
    precoders, coeffs, stacks = per_cell_inverse(channels, rx, phi)
    return CoderSet(
        config=cfg,
        approach="A",
        precoders={key: freeze(v) for key, v in precoders.items()},
        receive_filters={key: freeze(u) for key, u in rx.items()},
        intermediates={
            "cell_tx_basis": {k: freeze(phi[k]) for k in phi},
            "precoder_coeffs": {key: freeze(c) for key, c in coeffs.items()},
            "design_stack": {k: freeze(s) for k, s in stacks.items()},
        },
    )


def _approach_b(channels: ChannelSet, seed: int) -> CoderSet:
    cfg = channels.config
    K, M, d = cfg.K, cfg.M, cfg.d
    Md = M * d
    psi = {
        (k, m): random_orthonormal(
            rng_for(seed, ROLE_DESIGN, TAG_USER_BASIS, k, m), cfg.N_r, Md
        )
        for k in range(K)
        for m in range(M)
    }
    tx_blocks: dict[int, np.ndarray] = {}
    for k in range(K):
        rows = [
            psi[(j, n)].conj().T @ channels.link(k, j, n)
            for j in _other_cells(cfg, k)
            for n in range(M)
        ]
        if rows:
            tx_blocks[k] = null_space_basis(np.vstack(rows), width=Md)
        else:
            tx_blocks[k] = random_orthonormal(
                rng_for(seed, ROLE_DESIGN, TAG_FREE_BLOCK, k), cfg.N_t, Md
            )
    precoders: dict[tuple[int, int], np.ndarray] = {}
    pre_coeffs: dict[tuple[int, int], np.ndarray] = {}
    rx: dict[tuple[int, int], np.ndarray] = {}
    filt_coeffs: dict[tuple[int, int], np.ndarray] = {}
    for k in range(K):
        for m in range(M):
            raw = tx_blocks[k][:, m * d : (m + 1) * d]
            v, scale = unit_normalize(raw)
            precoders[(k, m)] = v
            selector = np.zeros((Md, d), dtype=np.complex128)
            selector[m * d : (m + 1) * d, :] = np.eye(d)
            pre_coeffs[(k, m)] = selector @ scale
    for k in range(K):
        for m in range(M):
            filtered = psi[(k, m)].conj().T @ channels.link(k, k, m)
            iui = [filtered @ precoders[(k, n)] for n in range(M) if n != m]
            if iui:
                u_tilde = left_null_basis(np.hstack(iui), width=d)
            else:
                u_tilde = random_orthonormal(
                    rng_for(seed, ROLE_DESIGN, TAG_RX_FILTER, k, m), Md, d
                )
            rx[(k, m)] = psi[(k, m)] @ u_tilde
            filt_coeffs[(k, m)] = u_tilde
    return CoderSet(
        config=cfg,
        approach="B",
        precoders={key: freeze(v) for key, v in precoders.items()},
        receive_filters={key: freeze(u) for key, u in rx.items()},
        intermediates={
            "cell_tx_basis": {k: freeze(b) for k, b in tx_blocks.items()},
            "precoder_coeffs": {key: freeze(c) for key, c in pre_coeffs.items()},
            "user_rx_basis": {key: freeze(p) for key, p in psi.items()},
            "filter_coeffs": {key: freeze(c) for key, c in filt_coeffs.items()},
        },
    )


def _approach_c(channels: ChannelSet, seed: int) -> CoderSet:
    cfg = channels.config
    K, M, d = cfg.K, cfg.M, cfg.d
    Md = M * d
    common = {
        m: random_orthonormal(rng_for(seed, ROLE_DESIGN, TAG_COMMON_FILTER, m), cfg.N_t, d)
        for m in range(M)
    }
    aligning: dict[tuple[int, int], np.ndarray] = {}
    rx_raw: dict[tuple[int, int], np.ndarray] = {}
    for k in range(K):
        others = _other_cells(cfg, k)
        for m in range(M):
            if others:
                wide = np.hstack([channels.link(j, k, m) for j in others])
                tile = np.hstack([np.eye(cfg.N_t, dtype=np.complex128)] * len(others))
                g = tile @ pseudo_inverse(wide)
                aligning[(k, m)] = g
                rx_raw[(k, m)] = g.conj().T @ common[m]
            else:
                rx_raw[(k, m)] = random_orthonormal(
                    rng_for(seed, ROLE_DESIGN, TAG_RX_FILTER, k, m), cfg.N_r, d
                )
    null_rows = [common[m].conj().T for m in range(M)] if K > 1 else []
    extra = {k: list(null_rows) for k in range(K)}
    precoders, coeffs, stacks = per_cell_inverse(
        channels, rx_raw, {k: np.eye(cfg.N_t, dtype=np.complex128) for k in range(K)},
        extra_rows=extra,
    )
    rx: dict[tuple[int, int], np.ndarray] = {}
    filt_coeffs: dict[tuple[int, int], np.ndarray] = {}
    for key, raw in rx_raw.items():
        q, c = orthonormalize(raw)
        rx[key] = q
        filt_coeffs[key] = c
    return CoderSet(
        config=cfg,
        approach="C",
        precoders={key: freeze(v) for key, v in precoders.items()},
        receive_filters={key: freeze(u) for key, u in rx.items()},
        intermediates={
            "aligning_inverse": {key: freeze(g) for key, g in aligning.items()},
            "common_filter": {m: freeze(f) for m, f in common.items()},
            "filter_coeffs": {key: freeze(c) for key, c in filt_coeffs.items()},
            "precoder_coeffs": {key: freeze(c) for key, c in coeffs.items()},
            "design_stack": {k: freeze(s) for k, s in stacks.items()},
        },
    )


def _approach_d(channels: ChannelSet, seed: int) -> CoderSet:
    cfg = channels.config
    K, M, d = cfg.K, cfg.M, cfg.d
    N_t, N_r = cfg.N_t, cfg.N_r
    rx_raw: dict[tuple[int, int], np.ndarray] = {}
    references: dict[tuple[int, int], np.ndarray] = {}
    for k in range(K):
        others = _other_cells(cfg, k)
        if not others:
            for m in range(M):
                rx_raw[(k, m)] = random_orthonormal(
                    rng_for(seed, ROLE_DESIGN, TAG_RX_FILTER, k, m), N_r, d
                )
            continue
        height = M * N_r + len(others) * N_t
        width = len(others) * M * N_t
        b = np.zeros((height, width), dtype=np.complex128)
        for jj, j in enumerate(others):
            for m in range(M):
                col = (jj * M + m) * N_t
                b[m * N_r : (m + 1) * N_r, col : col + N_t] = channels.link(j, k, m)
                row = M * N_r + jj * N_t
                b[row : row + N_t, col : col + N_t] = -np.eye(N_t)
        x = mixed_left_null_basis(b, d, rng_for(seed, ROLE_DESIGN, TAG_NULL_MIX, k))
        for m in range(M):
            rx_raw[(k, m)] = x[m * N_r : (m + 1) * N_r, :]
        for jj, j in enumerate(others):
            row = M * N_r + jj * N_t
            omega, _ = orthonormalize(x[row : row + N_t, :])
            references[(j, k)] = omega
    extra = {
        k: [references[(k, j)].conj().T for j in _other_cells(cfg, k)]
        for k in range(K)
    }
    precoders, coeffs, stacks = per_cell_inverse(
        channels, rx_raw, {k: np.eye(N_t, dtype=np.complex128) for k in range(K)},
        extra_rows=extra,
    )
    rx: dict[tuple[int, int], np.ndarray] = {}
    for key, raw in rx_raw.items():
        q, _ = orthonormalize(raw)
        rx[key] = q
    return CoderSet(
        config=cfg,
        approach="D",
        precoders={key: freeze(v) for key, v in precoders.items()},
        receive_filters={key: freeze(u) for key, u in rx.items()},
        intermediates={
            "rx_reference": {key: freeze(w) for key, w in references.items()},
            "precoder_coeffs": {key: freeze(c) for key, c in coeffs.items()},
            "design_stack": {k: freeze(s) for k, s in stacks.items()},
        },
    )


def _approach_e(channels: ChannelSet, seed: int) -> CoderSet:
    cfg = channels.config
    K, M, d = cfg.K, cfg.M, cfg.d
    Md = M * d
    N_t, N_r = cfg.N_t, cfg.N_r
    tx_blocks: dict[int, np.ndarray] = {}
    tx_refs: dict[tuple[int, int], np.ndarray] = {}
    if K > 1:
        theta_height = K * M * N_r
        height = theta_height + K * N_t
        rows = K * M * (K - 1) * N_r
        b = np.zeros((rows, height), dtype=np.complex128)
        r = 0
        for k in range(K):
            for m in range(M):
                theta_off = (k * M + m) * N_r
                for j in _other_cells(cfg, k):
                    b[r : r + N_r, theta_height + j * N_t : theta_height + (j + 1) * N_t] = (
                        channels.link(j, k, m)
                    )
                    b[r : r + N_r, theta_off : theta_off + N_r] = -np.eye(N_r)
                    r += N_r
        z = mixed_null_basis(b, Md, rng_for(seed, ROLE_DESIGN, TAG_NULL_MIX))
        for k in range(K):
            for m in range(M):
                off = (k * M + m) * N_r
                tx_refs[(k, m)] = z[off : off + N_r, :]
            tx_blocks[k] = z[theta_height + k * N_t : theta_height + (k + 1) * N_t, :]
    else:
        tx_blocks[0] = random_orthonormal(
            rng_for(seed, ROLE_DESIGN, TAG_FREE_BLOCK, 0), N_t, Md
        )
    rx: dict[tuple[int, int], np.ndarray] = {}
    for k in range(K):
        for m in range(M):
            if (k, m) in tx_refs:
                rx[(k, m)] = left_null_basis(tx_refs[(k, m)], width=d)
            else:
                rx[(k, m)] = random_orthonormal(
                    rng_for(seed, ROLE_DESIGN, TAG_RX_FILTER, k, m), N_r, d
                )
    precoders, coeffs, stacks = per_cell_inverse(channels, rx, tx_blocks)
    return CoderSet(
        config=cfg,
        approach="E",
        precoders={key: freeze(v) for key, v in precoders.items()},
        receive_filters={key: freeze(u) for key, u in rx.items()},
        intermediates={
            "cell_tx_basis": {k: freeze(t) for k, t in tx_blocks.items()},
            "tx_reference": {key: freeze(t) for key, t in tx_refs.items()},
            "precoder_coeffs": {key: freeze(c) for key, c in coeffs.items()},
            "design_stack": {k: freeze(s) for k, s in stacks.items()},
        },
    )
