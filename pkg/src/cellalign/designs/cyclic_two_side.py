"""Baseline coder constructions for the two-sided ring layout.

Interference only crosses cell borders, so every nulling stack that ranged
over all other cells in the fully connected layout shrinks to the two ring
neighbors here. The five approaches keep their letters and their division of
labor; only the stacks get thinner, which is where the antenna savings come
from.
"""

from __future__ import annotations

import numpy as np

from ..errors import UnknownApproach
from ..linalg import left_null_basis, null_space_basis, pseudo_inverse
from ..network import ChannelSet
from ..seeding import (
    ROLE_DESIGN,
    TAG_CELL_BASIS,
    TAG_COMMON_FILTER,
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

__all__ = ["design_cyclic_two_side"]


def _neighbors(K: int, k: int) -> tuple[int, int]:
    return ((k - 1) % K, (k + 1) % K)


def design_cyclic_two_side(channels: ChannelSet, approach: str, seed: int) -> CoderSet:
    """Build coders for one realization of the two-sided ring."""
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


def _approach_a(channels: ChannelSet, seed: int) -> CoderSet:
    cfg = channels.config
    K, M, d = cfg.K, cfg.M, cfg.d
    Md = M * d
    phi = {
        k: random_orthonormal(rng_for(seed, ROLE_DESIGN, TAG_CELL_BASIS, k), cfg.N_t, Md)
        for k in range(K)
    }
    rx = {
        (k, m): left_null_basis(
            np.hstack([channels.link(j, k, m) @ phi[j] for j in _neighbors(K, k)]),
            width=d,
        )
        for k in range(K)
        for m in range(M)
    }
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
    tx_blocks = {}
    for k in range(K):
        rows = [
            psi[(j, n)].conj().T @ channels.link(k, j, n)
            for j in _neighbors(K, k)
            for n in range(M)
        ]
        tx_blocks[k] = null_space_basis(np.vstack(rows), width=Md)
    precoders = {}
    pre_coeffs = {}
    for k in range(K):
        for m in range(M):
            v, scale = unit_normalize(tx_blocks[k][:, m * d : (m + 1) * d])
            precoders[(k, m)] = v
            selector = np.zeros((Md, d), dtype=np.complex128)
            selector[m * d : (m + 1) * d, :] = np.eye(d)
            pre_coeffs[(k, m)] = selector @ scale
    rx = {}
    filt_coeffs = {}
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
    common = {
        m: random_orthonormal(rng_for(seed, ROLE_DESIGN, TAG_COMMON_FILTER, m), cfg.N_t, d)
        for m in range(M)
    }
    aligning = {}
    rx_raw = {}
    eye_pair = np.hstack([np.eye(cfg.N_t, dtype=np.complex128)] * 2)
    for k in range(K):
        for m in range(M):
            wide = np.hstack([channels.link(j, k, m) for j in _neighbors(K, k)])
            g = eye_pair @ pseudo_inverse(wide)
            aligning[(k, m)] = g
            rx_raw[(k, m)] = g.conj().T @ common[m]
    null_rows = [common[m].conj().T for m in range(M)]
    precoders, coeffs, stacks = per_cell_inverse(
        channels,
        rx_raw,
        {k: np.eye(cfg.N_t, dtype=np.complex128) for k in range(K)},
        extra_rows={k: list(null_rows) for k in range(K)},
    )
    rx = {}
    filt_coeffs = {}
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
    rx_raw = {}
    references = {}
    for k in range(K):
        sources = _neighbors(K, k)
        height = M * N_r + len(sources) * N_t
        width = len(sources) * M * N_t
        b = np.zeros((height, width), dtype=np.complex128)
        for jj, j in enumerate(sources):
            for m in range(M):
                col = (jj * M + m) * N_t
                b[m * N_r : (m + 1) * N_r, col : col + N_t] = channels.link(j, k, m)
                row = M * N_r + jj * N_t
                b[row : row + N_t, col : col + N_t] = -np.eye(N_t)
        x = mixed_left_null_basis(b, d, rng_for(seed, ROLE_DESIGN, TAG_NULL_MIX, k))
        for m in range(M):
            rx_raw[(k, m)] = x[m * N_r : (m + 1) * N_r, :]
        for jj, j in enumerate(sources):
            row = M * N_r + jj * N_t
            omega, _ = orthonormalize(x[row : row + N_t, :])
            references[(j, k)] = omega
    extra = {
        k: [references[(k, j)].conj().T for j in _neighbors(K, k)] for k in range(K)
    }
    precoders, coeffs, stacks = per_cell_inverse(
        channels,
        rx_raw,
        {k: np.eye(N_t, dtype=np.complex128) for k in range(K)},
        extra_rows=extra,
    )
    rx = {}
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
    theta_height = K * M * N_r
    height = theta_height + K * N_t
    rows = 2 * K * M * N_r
    b = np.zeros((rows, height), dtype=np.complex128)
    r = 0
    for k in range(K):
        for m in range(M):
            theta_off = (k * M + m) * N_r
            for j in _neighbors(K, k):
                b[r : r + N_r, theta_height + j * N_t : theta_height + (j + 1) * N_t] = (
                    channels.link(j, k, m)
                )
                b[r : r + N_r, theta_off : theta_off + N_r] = -np.eye(N_r)
                r += N_r
    z = mixed_null_basis(b, Md, rng_for(seed, ROLE_DESIGN, TAG_NULL_MIX))
    tx_refs = {}
    tx_blocks = {}
    for k in range(K):
        for m in range(M):
            off = (k * M + m) * N_r
            tx_refs[(k, m)] = z[off : off + N_r, :]
        tx_blocks[k] = z[theta_height + k * N_t : theta_height + (k + 1) * N_t, :]
    rx = {
        (k, m): left_null_basis(tx_refs[(k, m)], width=d)
        for k in range(K)
        for m in range(M)
    }
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
