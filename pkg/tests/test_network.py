"""Topology wiring, config validation, and channel statistics."""

from __future__ import annotations

import numpy as np
import pytest

from cellalign import (
    InvalidConfig,
    NetworkConfig,
    Topology,
    generate_channels,
    validate_config,
)

FC = Topology.FULL_CONNECTED
CTS = Topology.CYCLIC_TWO_SIDE
COSE = Topology.CYCLIC_ONE_SIDE_EDGE


def fc(K=3, M=2, d=1, N_t=4, N_r=4, **kw):
    return NetworkConfig(topology=FC, K=K, M=M, d=d, N_t=N_t, N_r=N_r, **kw)


def cose(**kw):
    base = dict(topology=COSE, K=3, M=2, d=1, M_star=1, M_edge=1, N_t=4, N_r_star=2, N_r_edge=2)
    base.update(kw)
    return NetworkConfig(**base)


class TestValidation:
    def test_valid_configs_have_no_issues(self):
        assert validate_config(fc()) == []
        assert validate_config(cose()) == []

    def test_two_side_ring_needs_three_cells(self):
        cfg = NetworkConfig(topology=CTS, K=2, M=2, d=1, N_t=4, N_r=4)
        issues = validate_config(cfg)
        assert any("K >= 3" in s for s in issues)

    def test_topology_accepts_the_plain_string_value(self):
        cfg = NetworkConfig(topology="cyclic_two_side", K=3, M=2, d=1, N_t=4, N_r=4)
        assert cfg.topology is CTS
        with pytest.raises(InvalidConfig, match="unknown topology"):
            NetworkConfig(topology="star", K=3, M=2, d=1, N_t=4)

    def test_full_connected_allows_single_cell(self):
        assert validate_config(fc(K=1)) == []

    def test_stream_count_bounded_by_receive_antennas(self):
        issues = validate_config(fc(d=5, N_r=4))
        assert any("d <= N_r" in s for s in issues)

    def test_user_split_must_sum(self):
        issues = validate_config(cose(M_star=2))
        assert any("M_star+M_edge=M" in s for s in issues)

    def test_edge_split_fields_required(self):
        cfg = NetworkConfig(topology=COSE, K=3, M=2, d=1, N_t=4)
        issues = validate_config(cfg)
        assert any("M_star and M_edge are required" in s for s in issues)

    def test_per_class_antennas_only_needed_when_class_occupied(self):
        # All users are edge users; interior antenna count may stay unset.
        cfg = cose(M_star=0, M_edge=2, N_r_star=None)
        assert validate_config(cfg) == []

    def test_generate_rejects_invalid(self):
        with pytest.raises(InvalidConfig):
            generate_channels(fc(K=0), 1)


class TestWiring:
    def test_full_connected_everyone_hears_everyone(self):
        cfg = fc(K=4)
        for m in range(cfg.M):
            assert cfg.interfering_cells(0, m) == (1, 2, 3)

    def test_two_side_ring_hears_only_neighbors(self):
        cfg = NetworkConfig(topology=CTS, K=6, M=3, d=1, N_t=4, N_r=4)
        assert set(cfg.interfering_cells(0, 0)) == {5, 1}
        assert set(cfg.interfering_cells(3, 2)) == {2, 4}

    def test_one_side_edge_split(self):
        cfg = cose(M_star=1, M_edge=1)
        assert list(cfg.interior_users) == [0]
        assert list(cfg.edge_users) == [1]
        assert cfg.interfering_cells(0, 0) == ()
        assert cfg.interfering_cells(0, 1) == (1,)
        assert cfg.interfering_cells(2, 1) == (0,)

    def test_two_side_link_count(self):
        # Each of the KM users has its direct link plus two cross links.
        cfg = NetworkConfig(topology=CTS, K=6, M=3, d=1, N_t=4, N_r=4)
        ch = generate_channels(cfg, 0)
        assert len(ch.links) == 3 * 6 * 3

    def test_absent_links_are_absent(self):
        ch = generate_channels(cose(), 0)
        assert ch.has_link(0, 0, 0)
        assert ch.has_link(1, 0, 1)
        assert not ch.has_link(1, 0, 0)  # interior user hears no other cell
        assert not ch.has_link(2, 0, 1)  # edge user hears only the next cell
        with pytest.raises(KeyError):
            ch.link(2, 0, 1)

    def test_per_class_antenna_lookup(self):
        cfg = cose(N_r_star=2, N_r_edge=5)
        assert cfg.rx_antennas(0) == 2
        assert cfg.rx_antennas(1) == 5


class TestChannelStatistics:
    def test_unit_variance_circular_gaussian(self):
        # Oracle: for CN(0,1), E|h| = sqrt(pi)/2 ~ 0.8862 and each real part
        # has variance 1/2. Averaged over every entry of a decent-sized set.
        cfg = NetworkConfig(topology=FC, K=3, M=3, d=1, N_t=24, N_r=24)
        ch = generate_channels(cfg, 1234)
        entries = np.concatenate([h.ravel() for h in ch.links.values()])
        assert entries.size > 10_000
        assert abs(np.mean(np.abs(entries)) - np.sqrt(np.pi) / 2) < 0.02
        assert 0.45 < np.var(entries.real) < 0.55
        assert 0.45 < np.var(entries.imag) < 0.55
        assert abs(np.mean(entries)) < 0.02

    def test_determinism(self):
        cfg = fc()
        a = generate_channels(cfg, 99)
        b = generate_channels(cfg, 99)
        assert a.links.keys() == b.links.keys()
        for key in a.links:
            assert a.link(*key).tobytes() == b.link(*key).tobytes()

    def test_seed_changes_channels(self):
        cfg = fc()
        a = generate_channels(cfg, 1)
        b = generate_channels(cfg, 2)
        assert not np.allclose(a.link(0, 0, 0), b.link(0, 0, 0))

    def test_links_are_stable_under_growth(self):
        # Adding a user or a cell must not disturb already-drawn links.
        small = generate_channels(fc(K=3, M=2, N_r=4), 7)
        more_users = generate_channels(fc(K=3, M=3, N_r=4), 7)
        more_cells = generate_channels(fc(K=4, M=2, N_r=4), 7)
        for key, h in small.links.items():
            assert np.array_equal(h, more_users.link(*key))
            assert np.array_equal(h, more_cells.link(*key))

    def test_channels_are_read_only(self):
        ch = generate_channels(fc(), 5)
        with pytest.raises(ValueError):
            ch.link(0, 0, 0)[0, 0] = 0.0

    def test_shapes_follow_user_class(self):
        ch = generate_channels(cose(N_r_star=2, N_r_edge=5, N_t=3), 11)
        assert ch.link(0, 0, 0).shape == (2, 3)
        assert ch.link(0, 0, 1).shape == (5, 3)
        assert ch.link(1, 0, 1).shape == (5, 3)
