"""Coder constructions for the one-sided ring with interior and edge users.

Only edge users hear the next base station around the ring, so the cross
stacks involve just one interferer and only part of each cell's population.
Interior users never see inter-cell interference; their filters either come
out random or handle intra-cell separation alone.

Approaches A through E mirror the other layouts. Approach F is specific to
this layout: with every receive filter drawn at random, each base station can
invert a single stacked system that simultaneously protects the previous
cell's edge users and separates its own, provided it carries enough antennas
to pay for both row groups.
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
    inverse_columns,
    mixed_left_null_basis,
    mixed_null_basis,
    orthonormalize,
    per_cell_inverse,
    random_orthonormal,
    unit_normalize,
)

__all__ = ["design_cyclic_one_side"]


def design_cyclic_one_side(channels: ChannelSet, approach: str, seed: int) -> CoderSet:
    """Build coders for one realization of the one-sided ring."""
    cfg = channels.config
    require_feasible(cfg, approach)
    builders = {
        "A": _approach_a,
        "B": _approach_b,
        "C": _approach_c,
        "D": _approach_d,
        "E": _approach_e,
        "F": _approach_f,
    }
    try:
        builder = builders[approach]
    except KeyError:
        raise UnknownApproach(f"approach {approach!r} is not defined for this layout") from None
    return builder(channels, seed)


def _random_interior_filters(cfg: NetworkConfig, seed: int, width: int | None = None):
    w = cfg.d if width is None else width
    return {
        (k, m): random_orthonormal(
            rng_for(seed, ROLE_DESIGN, TAG_RX_FILTER, k, m), cfg.N_r_star, w
        )
        for k in range(cfg.K)
        for m in cfg.interior_users
    }


def _approach_a(channels: ChannelSet, seed: int) -> CoderSet:
    cfg = channels.config
    K, d = cfg.K, cfg.d
    Md = cfg.M * d
    phi = {
        k: random_orthonormal(rng_for(seed, ROLE_DESIGN, TAG_CELL_BASIS, k), cfg.N_t, Md)
        for k in range(K)
    }
    rx = _random_interior_filters(cfg, seed)
    for k in range(K):
        nxt = (k + 1) % K
        for m in cfg.edge_users:
            rx[(k, m)] = left_null_basis(channels.link(nxt, k, m) @ phi[nxt], width=d)
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
            rng_for(seed, ROLE_DESIGN, TAG_USER_BASIS, k, m), cfg.N_r_edge, Md
        )
        for k in range(K)
        for m in cfg.edge_users
    }
    tx_blocks = {}
    for k in range(K):
        prev = (k - 1) % K
        rows = [
            psi[(prev, n)].conj().T @ channels.link(k, prev, n) for n in cfg.edge_users
        ]
        if rows:
            tx_blocks[k] = null_space_basis(np.vstack(rows), width=Md)
        else:
            tx_blocks[k] = random_orthonormal(
                rng_for(seed, ROLE_DESIGN, TAG_FREE_BLOCK, k), cfg.N_t, Md
            )
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
            direct = channels.link(k, k, m)
            if cfg.is_edge_user(m):
                filtered = psi[(k, m)].conj().T @ direct
                iui = [filtered @ precoders[(k, n)] for n in range(M) if n != m]
                if iui:
                    u_tilde = left_null_basis(np.hstack(iui), width=d)
                else:
                    u_tilde = random_orthonormal(
                        rng_for(seed, ROLE_DESIGN, TAG_RX_FILTER, k, m), Md, d
                    )
                rx[(k, m)] = psi[(k, m)] @ u_tilde
                filt_coeffs[(k, m)] = u_tilde
            else:
                iui = [direct @ precoders[(k, n)] for n in range(M) if n != m]
                if iui:
                    rx[(k, m)] = left_null_basis(np.hstack(iui), width=d)
                else:
                    rx[(k, m)] = random_orthonormal(
                        rng_for(seed, ROLE_DESIGN, TAG_RX_FILTER, k, m), cfg.N_r_star, d
                    )
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
    K, d = cfg.K, cfg.d
    common = {
        m: random_orthonormal(rng_for(seed, ROLE_DESIGN, TAG_COMMON_FILTER, m), cfg.N_t, d)
        for m in cfg.edge_users
    }
    aligning = {}
    rx_raw = _random_interior_filters(cfg, seed)
    for k in range(K):
        nxt = (k + 1) % K
        for m in cfg.edge_users:
            g = pseudo_inverse(channels.link(nxt, k, m))
            aligning[(k, m)] = g
            rx_raw[(k, m)] = g.conj().T @ common[m]
    null_rows = [common[m].conj().T for m in cfg.edge_users]
    precoders, coeffs, stacks = per_cell_inverse(
        channels,
        rx_raw,
        {k: np.eye(cfg.N_t, dtype=np.complex128) for k in range(K)},
        extra_rows={k: list(null_rows) for k in range(K)},
    )
    rx = {}
    filt_coeffs = {}
    for key, raw in rx_raw.items():
        if key in aligning:
            q, c = orthonormalize(raw)
            rx[key] = q
            filt_coeffs[key] = c
        else:
            rx[key] = raw
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
    K, d = cfg.K, cfg.d
    N_t = cfg.N_t
    Mo = cfg.M_edge
    Nre = cfg.N_r_edge or 0
    rx_raw = _random_interior_filters(cfg, seed)
    references = {}
    for k in range(K):
        if not Mo:
            continue
        nxt = (k + 1) % K
        height = Mo * Nre + N_t
        b = np.zeros((height, Mo * N_t), dtype=np.complex128)
        for i, m in enumerate(cfg.edge_users):
            col = i * N_t
            b[i * Nre : (i + 1) * Nre, col : col + N_t] = channels.link(nxt, k, m)
            b[Mo * Nre :, col : col + N_t] = -np.eye(N_t)
        x = mixed_left_null_basis(b, d, rng_for(seed, ROLE_DESIGN, TAG_NULL_MIX, k))
        for i, m in enumerate(cfg.edge_users):
            rx_raw[(k, m)] = x[i * Nre : (i + 1) * Nre, :]
        omega, _ = orthonormalize(x[Mo * Nre :, :])
        references[(nxt, k)] = omega
    extra = {
        k: [references[(k, (k - 1) % K)].conj().T] if (k, (k - 1) % K) in references else []
        for k in range(K)
    }
    precoders, coeffs, stacks = per_cell_inverse(
        channels,
        rx_raw,
        {k: np.eye(N_t, dtype=np.complex128) for k in range(K)},
        extra_rows=extra,
    )
    rx = {}
    for key, raw in rx_raw.items():
        if cfg.is_edge_user(key[1]) and Mo:
            q, _ = orthonormalize(raw)
            rx[key] = q
        else:
            rx[key] = raw
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
    K, d = cfg.K, cfg.d
    Md = cfg.M * d
    N_t = cfg.N_t
    Mo = cfg.M_edge
    Nre = cfg.N_r_edge or 0
    tx_blocks = {}
    tx_refs = {}
    if Mo:
        theta_height = K * Mo * Nre
        height = theta_height + K * N_t
        b = np.zeros((theta_height, height), dtype=np.complex128)
        r = 0
        for k in range(K):
            nxt = (k + 1) % K
            for i, m in enumerate(cfg.edge_users):
                theta_off = (k * Mo + i) * Nre
                b[r : r + Nre, theta_height + nxt * N_t : theta_height + (nxt + 1) * N_t] = (
                    channels.link(nxt, k, m)
                )
                b[r : r + Nre, theta_off : theta_off + Nre] = -np.eye(Nre)
                r += Nre
        z = mixed_null_basis(b, Md, rng_for(seed, ROLE_DESIGN, TAG_NULL_MIX))
        for k in range(K):
            for i, m in enumerate(cfg.edge_users):
                off = (k * Mo + i) * Nre
                tx_refs[(k, m)] = z[off : off + Nre, :]
            tx_blocks[k] = z[theta_height + k * N_t : theta_height + (k + 1) * N_t, :]
    else:
        for k in range(K):
            tx_blocks[k] = random_orthonormal(
                rng_for(seed, ROLE_DESIGN, TAG_FREE_BLOCK, k), N_t, Md
            )
    rx = _random_interior_filters(cfg, seed)
    for k in range(K):
        for m in cfg.edge_users:
            rx[(k, m)] = left_null_basis(tx_refs[(k, m)], width=d)
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


def _approach_f(channels: ChannelSet, seed: int) -> CoderSet:
    cfg = channels.config
    K, M, d = cfg.K, cfg.M, cfg.d
    Md = M * d
    rx = _random_interior_filters(cfg, seed)
    for k in range(K):
        for m in cfg.edge_users:
            rx[(k, m)] = random_orthonormal(
                rng_for(seed, ROLE_DESIGN, TAG_RX_FILTER, k, m), cfg.N_r_edge, d
            )
    precoders = {}
    coeffs = {}
    stacks = {}
    for k in range(K):
        prev = (k - 1) % K
        rows = [
            rx[(prev, n)].conj().T @ channels.link(k, prev, n) for n in cfg.edge_users
        ]
        rows.extend(rx[(k, m)].conj().T @ channels.link(k, k, m) for m in range(M))
        stack = np.vstack(rows)
        inv_cols = inverse_columns(stack, Md, which="last")
        stacks[k] = stack
        for m in range(M):
            v, scale = unit_normalize(inv_cols[:, m * d : (m + 1) * d])
            precoders[(k, m)] = v
            coeffs[(k, m)] = inv_cols[:, m * d : (m + 1) * d] @ scale
    return CoderSet(
        config=cfg,
        approach="F",
        precoders={key: freeze(v) for key, v in precoders.items()},
        receive_filters={key: freeze(u) for key, u in rx.items()},
        intermediates={
            "design_stack": {k: freeze(s) for k, s in stacks.items()},
            "precoder_coeffs": {key: freeze(c) for key, c in coeffs.items()},
        },
    )
