"""Shared fixtures: small deterministic networks for every topology."""

from __future__ import annotations

import numpy as np
import pytest

from cellalign import NetworkConfig, Topology, generate_channels

# Minimal per-approach antenna settings used across the design test modules.
# Keys are approach letters; values are the smallest dims that pass the
# feasibility gates for the fixture topology.
MODEL1_MINIMA = {
    "A": dict(N_t=2, N_r=5),
    "B": dict(N_t=10, N_r=2),
    "C": dict(N_t=4, N_r=8),
    "D": dict(N_t=4, N_r=5),
    "E": dict(N_t=9, N_r=4),
}
MODEL2_MINIMA = {
    "A": dict(N_t=2, N_r=5),
    "B": dict(N_t=10, N_r=2),
    "C": dict(N_t=4, N_r=8),
    "D": dict(N_t=4, N_r=5),
    "E": dict(N_t=9, N_r=4),
}
MODEL3_MINIMA = {
    "A": dict(N_t=2, N_r_star=1, N_r_edge=3),
    "B": dict(N_t=4, N_r_star=2, N_r_edge=2),
    "C": dict(N_t=3, N_r_star=1, N_r_edge=3),
    "D": dict(N_t=3, N_r_star=1, N_r_edge=4),
    "E": dict(N_t=2, N_r_star=2, N_r_edge=4),
    "F": dict(N_t=3, N_r_star=1, N_r_edge=1),
}


def model1_config(approach: str, **overrides) -> NetworkConfig:
    dims = dict(MODEL1_MINIMA[approach])
    dims.update(overrides)
    return NetworkConfig(topology=Topology.FULL_CONNECTED, K=3, M=2, d=1, **dims)


def model2_config(approach: str, **overrides) -> NetworkConfig:
    dims = dict(MODEL2_MINIMA[approach])
    dims.update(overrides)
    return NetworkConfig(topology=Topology.CYCLIC_TWO_SIDE, K=4, M=2, d=1, **dims)


def model3_config(approach: str, **overrides) -> NetworkConfig:
    dims = dict(MODEL3_MINIMA[approach])
    dims.update(overrides)
    return NetworkConfig(
        topology=Topology.CYCLIC_ONE_SIDE_EDGE,
        K=3,
        M=2,
        d=1,
        M_star=1,
        M_edge=1,
        **dims,
    )


def zero_forcing_report(channels, coders):
    """Brute-force residual scan over every existing link.

    Returns ``(cross, desired)`` where ``cross`` maps
    ``(tx_cell, tx_user, rx_cell, rx_user)`` to the normalized residual
    ``norm(U' H V) / max(1, norm(H))`` for every unwanted term, and
    ``desired`` maps ``(cell, user)`` to the smallest singular value of the
    effective desired link. Deliberately independent of the package's own
    leakage helpers: plain loops, no shared code path.
    """
    cfg = channels.config
    cross = {}
    desired = {}
    for k in range(cfg.K):
        for m in range(cfg.M):
            u = coders.receive_filter(k, m)
            for j in range(cfg.K):
                if not channels.has_link(j, k, m):
                    continue
                h = channels.link(j, k, m)
                scale = max(1.0, float(np.linalg.norm(h)))
                for n in range(cfg.M):
                    term = u.conj().T @ h @ coders.precoder(j, n)
                    if j == k and n == m:
                        desired[(k, m)] = float(
                            np.linalg.svd(term, compute_uv=False)[-1]
                        )
                    else:
                        cross[(j, n, k, m)] = float(np.linalg.norm(term)) / scale
    return cross, desired


def max_cross_residual(channels, coders) -> float:
    cross, _ = zero_forcing_report(channels, coders)
    return max(cross.values()) if cross else 0.0


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240817)


@pytest.fixture
def ring_channels():
    cfg = model2_config("A")
    return generate_channels(cfg, 404)
