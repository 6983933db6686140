"""Construction tests for the two-sided ring layout.

Interference here flows only between ring neighbours. The tests restate the
fully connected contracts with the adjacency-restricted index sets, plus the
ring-specific certificate: with N_t = M*d the two neighbouring filtered
channels annihilate the cell basis outright.
"""

from __future__ import annotations

import numpy as np
import pytest
from conftest import MODEL2_MINIMA, model2_config, zero_forcing_report

from cellalign import NetworkConfig, Topology, generate_channels
from cellalign.designs import design_cyclic_two_side
from cellalign.errors import InfeasibleAntennas, InvalidConfig
from cellalign.linalg import orthonormal_basis

APPROACHES = sorted(MODEL2_MINIMA)


def neighbours(k: int, K: int) -> tuple[int, int]:
    return ((k - 1) % K, (k + 1) % K)


@pytest.mark.parametrize("approach", APPROACHES)
@pytest.mark.parametrize("seed", [1, 19, 4096])
def test_zero_forcing_at_minimal_dims(approach, seed):
    channels = generate_channels(model2_config(approach), seed)
    coders = design_cyclic_two_side(channels, approach, seed + 1)
    cross, desired = zero_forcing_report(channels, coders)
    assert max(cross.values()) <= 1e-8
    assert min(desired.values()) >= 1e-4


def test_interference_set_is_ring_restricted(ring_channels):
    cfg = ring_channels.config
    for k in range(cfg.K):
        for j in range(cfg.K):
            for m in range(cfg.M):
                expected = j == k or j in neighbours(k, cfg.K)
                assert ring_channels.has_link(j, k, m) is expected
                if not expected:
                    with pytest.raises(KeyError):
                        ring_channels.link(j, k, m)


def test_cross_terms_enumerate_neighbours_only(ring_channels):
    # Absent links contribute nothing because they are absent, not because
    # something cancelled: the report has no key for them at all.
    coders = design_cyclic_two_side(ring_channels, "A", 2)
    cross, _ = zero_forcing_report(ring_channels, coders)
    cfg = ring_channels.config
    for j, n, k, m in cross:
        assert j == k or j in neighbours(k, cfg.K)
    per_user_terms = (cfg.M - 1) + 2 * cfg.M
    assert len(cross) == cfg.K * cfg.M * per_user_terms


def test_basis_annihilation_certificate_approach_a():
    # With N_t = M*d the stacked neighbour-filtered channels leave no room:
    # they must kill the whole cell basis, not just a subspace.
    cfg = model2_config("A")
    Md = cfg.M * cfg.d
    assert cfg.N_t == Md
    for seed in range(50):
        channels = generate_channels(cfg, seed)
        coders = design_cyclic_two_side(channels, "A", seed)
        phi = coders.intermediates["cell_tx_basis"]
        for k in range(cfg.K):
            rows = []
            for j in neighbours(k, cfg.K):
                for m in range(cfg.M):
                    rows.append(
                        coders.receive_filter(j, m).conj().T @ channels.link(k, j, m)
                    )
            stack = np.vstack(rows)
            assert stack.shape == (2 * Md, cfg.N_t)
            assert np.linalg.norm(stack @ phi[k]) <= 1e-8


def test_aligning_inverse_identity_approach_c():
    cfg = model2_config("C")
    channels = generate_channels(cfg, 23)
    coders = design_cyclic_two_side(channels, "C", 24)
    aligning = coders.intermediates["aligning_inverse"]
    eye = np.eye(cfg.N_t)
    for k in range(cfg.K):
        for m in range(cfg.M):
            g = aligning[(k, m)]
            for j in neighbours(k, cfg.K):
                assert np.linalg.norm(g @ channels.link(j, k, m) - eye) <= 1e-8


def test_common_reference_approach_d():
    cfg = model2_config("D")
    channels = generate_channels(cfg, 33)
    coders = design_cyclic_two_side(channels, "D", 34)
    refs = coders.intermediates["rx_reference"]
    assert set(refs) == {
        (j, k) for k in range(cfg.K) for j in neighbours(k, cfg.K)
    }
    for (j, k), omega in refs.items():
        proj = omega @ omega.conj().T
        for m in range(cfg.M):
            filtered = (
                coders.receive_filter(k, m).conj().T @ channels.link(j, k, m)
            ).conj().T
            col = orthonormal_basis(filtered)
            assert col.shape[1] - np.linalg.norm(proj @ col) ** 2 <= 1e-6


def test_shared_tx_reference_approach_e():
    cfg = model2_config("E")
    channels = generate_channels(cfg, 43)
    coders = design_cyclic_two_side(channels, "E", 44)
    refs = coders.intermediates["tx_reference"]
    for k in range(cfg.K):
        for m in range(cfg.M):
            theta = orthonormal_basis(refs[(k, m)])
            residual_proj = np.eye(cfg.N_r) - theta @ theta.conj().T
            for j in neighbours(k, cfg.K):
                arrived = channels.link(j, k, m) @ np.hstack(
                    [coders.precoder(j, n) for n in range(cfg.M)]
                )
                assert np.linalg.norm(residual_proj @ arrived) <= 1e-8 * max(
                    1.0, np.linalg.norm(arrived)
                )


def test_pinned_instance_k6_headline():
    cfg = NetworkConfig(
        topology=Topology.CYCLIC_TWO_SIDE, K=6, M=3, d=2, N_t=6, N_r=14
    )
    channels = generate_channels(cfg, 88)
    coders = design_cyclic_two_side(channels, "A", 89)
    cross, desired = zero_forcing_report(channels, coders)
    assert max(cross.values()) <= 1e-8
    assert min(desired.values()) >= 1e-4


def test_pinned_instance_c_row():
    cfg = NetworkConfig(
        topology=Topology.CYCLIC_TWO_SIDE, K=6, M=3, d=2, N_t=12, N_r=24
    )
    channels = generate_channels(cfg, 90)
    coders = design_cyclic_two_side(channels, "C", 91)
    cross, _ = zero_forcing_report(channels, coders)
    assert max(cross.values()) <= 1e-8
    aligning = coders.intermediates["aligning_inverse"]
    eye = np.eye(cfg.N_t)
    for k in range(cfg.K):
        for j in neighbours(k, cfg.K):
            assert np.linalg.norm(aligning[(k, 0)] @ channels.link(j, k, 0) - eye) <= 1e-8


def test_single_user_cells_have_no_iui():
    cfg = NetworkConfig(
        topology=Topology.CYCLIC_TWO_SIDE, K=3, M=1, d=1, N_t=1, N_r=3
    )
    channels = generate_channels(cfg, 2)
    coders = design_cyclic_two_side(channels, "A", 3)
    cross, desired = zero_forcing_report(channels, coders)
    assert all(j != k for j, _, k, _ in cross)
    assert max(cross.values()) <= 1e-10
    assert min(desired.values()) >= 1e-4


def test_ring_needs_three_cells():
    cfg = NetworkConfig(
        topology=Topology.CYCLIC_TWO_SIDE, K=2, M=2, d=1, N_t=2, N_r=5
    )
    with pytest.raises(InvalidConfig, match="K >= 3"):
        generate_channels(cfg, 0)


def test_infeasible_antennas_below_gate():
    cfg = model2_config("B", N_t=5)
    channels = generate_channels(cfg, 1)
    with pytest.raises(InfeasibleAntennas):
        design_cyclic_two_side(channels, "B", 2)


def test_seed_determinism():
    cfg = model2_config("D")
    channels = generate_channels(cfg, 55)
    first = design_cyclic_two_side(channels, "D", 7)
    again = design_cyclic_two_side(channels, "D", 7)
    for key in first.precoders:
        assert first.precoders[key].tobytes() == again.precoders[key].tobytes()
        assert first.receive_filters[key].tobytes() == again.receive_filters[key].tobytes()
