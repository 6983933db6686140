"""Construction tests for the fully connected layout.

Every zero-forcing claim is checked by the brute-force residual scan in
conftest, not by the package's own leakage helpers. Rank certificates get
their reference ranks from numpy SVDs computed inline.
"""

from __future__ import annotations

import numpy as np
import pytest
from conftest import MODEL1_MINIMA, max_cross_residual, model1_config, zero_forcing_report

from cellalign import NetworkConfig, Topology, generate_channels
from cellalign.designs import design_full_connected
from cellalign.errors import InfeasibleAntennas, UnknownApproach
from cellalign.linalg import orthonormal_basis

APPROACHES = sorted(MODEL1_MINIMA)


def svd_rank(a: np.ndarray, tol: float = 1e-7) -> int:
    # Threshold anchored at max(1, largest singular value) so that a stack
    # which is zero up to rounding counts as rank zero.
    s = np.linalg.svd(a, compute_uv=False)
    return int(np.sum(s > tol * max(1.0, s[0]))) if s.size else 0


@pytest.mark.parametrize("approach", APPROACHES)
@pytest.mark.parametrize("seed", [0, 7, 2024])
def test_zero_forcing_at_minimal_dims(approach, seed):
    channels = generate_channels(model1_config(approach), seed)
    coders = design_full_connected(channels, approach, seed + 1)
    cross, desired = zero_forcing_report(channels, coders)
    assert max(cross.values()) <= 1e-8
    assert min(desired.values()) >= 1e-4


@pytest.mark.parametrize("approach", APPROACHES)
def test_coder_shapes_and_norms(approach):
    cfg = model1_config(approach)
    channels = generate_channels(cfg, 11)
    coders = design_full_connected(channels, approach, 12)
    for k in range(cfg.K):
        for m in range(cfg.M):
            v = coders.precoder(k, m)
            u = coders.receive_filter(k, m)
            assert v.shape == (cfg.N_t, cfg.d)
            assert u.shape == (cfg.N_r, cfg.d)
            assert np.allclose(np.linalg.norm(v, axis=0), 1.0, atol=1e-12)
            assert np.allclose(u.conj().T @ u, np.eye(cfg.d), atol=1e-10)


def test_cascade_identity_approach_a():
    # The shipped precoder must equal the cell basis times the stored
    # coefficient block exactly, not merely span the same subspace.
    cfg = model1_config("A")
    channels = generate_channels(cfg, 3)
    coders = design_full_connected(channels, "A", 4)
    basis = coders.intermediates["cell_tx_basis"]
    coeffs = coders.intermediates["precoder_coeffs"]
    for k in range(cfg.K):
        for m in range(cfg.M):
            rebuilt = basis[k] @ coeffs[(k, m)]
            assert np.allclose(rebuilt, coders.precoder(k, m), atol=1e-12)


def test_cascade_identity_approach_b():
    cfg = model1_config("B")
    channels = generate_channels(cfg, 5)
    coders = design_full_connected(channels, "B", 6)
    psi = coders.intermediates["user_rx_basis"]
    coeffs = coders.intermediates["filter_coeffs"]
    for key in psi:
        rebuilt = psi[key] @ coeffs[key]
        assert np.allclose(rebuilt, coders.receive_filters[key], atol=1e-12)


def test_implicit_alignment_rank_certificate_approach_a():
    # Stack every filtered cross channel seen from one transmitter. The
    # stack has (K-1)*M*d rows but its rank stays at N_t - M*d or below,
    # even though (K-1)*M*d can exceed that. 50 independent realizations.
    cfg = model1_config("A", N_t=4, N_r=7)
    Md = cfg.M * cfg.d
    for seed in range(50):
        channels = generate_channels(cfg, seed)
        coders = design_full_connected(channels, "A", seed)
        for k in range(cfg.K):
            rows = [
                coders.receive_filter(j, m).conj().T @ channels.link(k, j, m)
                for j in range(cfg.K)
                if j != k
                for m in range(cfg.M)
            ]
            stack = np.vstack(rows)
            assert stack.shape == ((cfg.K - 1) * Md, cfg.N_t)
            assert (cfg.K - 1) * Md > cfg.N_t - Md
            assert svd_rank(stack) <= cfg.N_t - Md


def test_dual_rank_certificate_approach_b():
    cfg = model1_config("B")
    Md = cfg.M * cfg.d
    for seed in range(50):
        channels = generate_channels(cfg, seed)
        coders = design_full_connected(channels, "B", seed)
        for k in range(cfg.K):
            for m in range(cfg.M):
                cols = [
                    channels.link(j, k, m) @ coders.precoder(j, n)
                    for j in range(cfg.K)
                    if j != k
                    for n in range(cfg.M)
                ]
                stack = np.hstack(cols)
                assert stack.shape == (cfg.N_r, (cfg.K - 1) * Md)
                assert svd_rank(stack) <= cfg.N_r - Md


def test_aligning_inverse_identity_approach_c():
    cfg = model1_config("C")
    channels = generate_channels(cfg, 21)
    coders = design_full_connected(channels, "C", 22)
    aligning = coders.intermediates["aligning_inverse"]
    eye = np.eye(cfg.N_t)
    for k in range(cfg.K):
        for m in range(cfg.M):
            g = aligning[(k, m)]
            for j in range(cfg.K):
                if j == k:
                    continue
                assert np.linalg.norm(g @ channels.link(j, k, m) - eye) <= 1e-8


def test_common_reference_approach_d():
    # Pinned instance: every receiver in a victim cell maps the offending
    # transmitter onto one shared reference subspace.
    cfg = model1_config("D", N_t=4, N_r=5)
    channels = generate_channels(cfg, 31)
    coders = design_full_connected(channels, "D", 32)
    refs = coders.intermediates["rx_reference"]
    assert max_cross_residual(channels, coders) <= 1e-8
    for j in range(cfg.K):
        for k in range(cfg.K):
            if j == k:
                continue
            omega = refs[(j, k)]
            proj = omega @ omega.conj().T
            for m in range(cfg.M):
                filtered = (
                    coders.receive_filter(k, m).conj().T @ channels.link(j, k, m)
                ).conj().T
                col = orthonormal_basis(filtered)
                # chordal distance^2 between span(col) and span(omega)
                dist = col.shape[1] - np.linalg.norm(proj @ col) ** 2
                assert dist <= 1e-6


def test_shared_tx_reference_approach_e():
    cfg = model1_config("E")
    channels = generate_channels(cfg, 41)
    coders = design_full_connected(channels, "E", 42)
    refs = coders.intermediates["tx_reference"]
    for k in range(cfg.K):
        for m in range(cfg.M):
            theta = orthonormal_basis(refs[(k, m)])
            residual_proj = np.eye(cfg.N_r) - theta @ theta.conj().T
            for j in range(cfg.K):
                if j == k:
                    continue
                arrived = channels.link(j, k, m) @ np.hstack(
                    [coders.precoder(j, n) for n in range(cfg.M)]
                )
                # every precoded cross channel lands inside the receiver's
                # reference subspace
                assert np.linalg.norm(residual_proj @ arrived) <= 1e-8 * max(
                    1.0, np.linalg.norm(arrived)
                )


def test_pinned_instance_k3_m3():
    cfg = NetworkConfig(
        topology=Topology.FULL_CONNECTED, K=3, M=3, d=1, N_t=3, N_r=7
    )
    channels = generate_channels(cfg, 77)
    coders = design_full_connected(channels, "A", 78)
    cross, desired = zero_forcing_report(channels, coders)
    assert max(cross.values()) <= 1e-8
    assert min(desired.values()) >= 1e-4


def test_single_cell_degenerates_to_iui_nulling():
    cfg = NetworkConfig(
        topology=Topology.FULL_CONNECTED, K=1, M=2, d=1, N_t=2, N_r=2
    )
    channels = generate_channels(cfg, 5)
    coders = design_full_connected(channels, "A", 6)
    cross, desired = zero_forcing_report(channels, coders)
    assert set(cross) == {(0, 0, 0, 1), (0, 1, 0, 0)}
    assert max(cross.values()) <= 1e-10
    assert min(desired.values()) >= 1e-4


def test_seed_determinism_and_sensitivity():
    cfg = model1_config("A")
    channels = generate_channels(cfg, 9)
    first = design_full_connected(channels, "A", 100)
    again = design_full_connected(channels, "A", 100)
    other = design_full_connected(channels, "A", 101)
    for key in first.precoders:
        assert first.precoders[key].tobytes() == again.precoders[key].tobytes()
        assert first.receive_filters[key].tobytes() == again.receive_filters[key].tobytes()
    assert any(
        first.precoders[key].tobytes() != other.precoders[key].tobytes()
        for key in first.precoders
    )


def test_infeasible_antennas_names_the_bound():
    cfg = NetworkConfig(
        topology=Topology.FULL_CONNECTED, K=3, M=3, d=1, N_t=2, N_r=7
    )
    channels = generate_channels(cfg, 1)
    with pytest.raises(InfeasibleAntennas, match="N_t >= Md"):
        design_full_connected(channels, "A", 2)


def test_unknown_approach_letter():
    cfg = model1_config("A")
    channels = generate_channels(cfg, 1)
    with pytest.raises(UnknownApproach):
        design_full_connected(channels, "Q", 2)


def test_coder_arrays_are_read_only():
    cfg = model1_config("A")
    channels = generate_channels(cfg, 13)
    coders = design_full_connected(channels, "A", 14)
    v = coders.precoder(0, 0)
    with pytest.raises(ValueError):
        v[0, 0] = 0.0
