"""Subspace metrics and rate machinery against brute-force definitions.

The chordal-distance oracle uses the projector form
``0.5 * ||P P^H - Q Q^H||_F^2`` computed from scratch; the implementation uses
the trace form. Agreement to 1e-10 across random instances is the contract.
"""

from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cellalign import (
    DimensionMismatch,
    InsufficientPoints,
    NetworkConfig,
    RateCurve,
    Topology,
    chordal_distance_sq,
    design_coders,
    dof_slope,
    generate_channels,
    interference_leakage,
    leakage_report,
    sum_rate,
)

from conftest import model2_config


def haar_basis(rng: np.random.Generator, n: int, w: int) -> np.ndarray:
    raw = rng.standard_normal((n, w)) + 1j * rng.standard_normal((n, w))
    q, _ = np.linalg.qr(raw)
    return q


def projector_route(p: np.ndarray, q: np.ndarray) -> float:
    def orth(a):
        u, s, _ = np.linalg.svd(a, full_matrices=False)
        return u[:, : np.count_nonzero(s > 1e-12 * s[0])]

    op, oq = orth(p), orth(q)
    diff = op @ op.conj().T - oq @ oq.conj().T
    return 0.5 * float(np.linalg.norm(diff) ** 2)


class TestChordalDistance:
    @given(seed=st.integers(0, 99_999))
    @settings(max_examples=60, deadline=None)
    def test_matches_projector_route(self, seed):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(2, 9))
        w = int(rng.integers(1, n + 1))
        p = rng.standard_normal((n, w)) + 1j * rng.standard_normal((n, w))
        q = rng.standard_normal((n, w)) + 1j * rng.standard_normal((n, w))
        assert chordal_distance_sq(p, q) == pytest.approx(
            projector_route(p, q), abs=1e-10
        )

    def test_zero_for_same_span(self, rng):
        b = haar_basis(rng, 6, 3)
        mixed = b @ (rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3)))
        assert chordal_distance_sq(b, mixed) == pytest.approx(0.0, abs=1e-10)

    def test_maximal_for_orthogonal_spans(self):
        p = np.eye(6)[:, :3]
        q = np.eye(6)[:, 3:]
        assert chordal_distance_sq(p, q) == pytest.approx(3.0, abs=1e-12)

    def test_basis_invariance(self, rng):
        p = haar_basis(rng, 7, 2)
        q = haar_basis(rng, 7, 2)
        d0 = chordal_distance_sq(p, q)
        rot = haar_basis(rng, 2, 2)
        assert chordal_distance_sq(p @ rot, q) == pytest.approx(d0, abs=1e-10)
        assert chordal_distance_sq(p, 3.7 * q) == pytest.approx(d0, abs=1e-10)

    def test_dimension_mismatch_rejected(self, rng):
        with pytest.raises(DimensionMismatch):
            chordal_distance_sq(haar_basis(rng, 6, 2), haar_basis(rng, 6, 3))
        with pytest.raises(DimensionMismatch):
            chordal_distance_sq(haar_basis(rng, 6, 2), haar_basis(rng, 5, 2))


class TestInterferenceLeakage:
    @given(seed=st.integers(0, 99_999))
    @settings(max_examples=60, deadline=None)
    def test_matches_elementwise_sum(self, seed):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(1, 8))
        p = rng.standard_normal((n, int(rng.integers(1, 5)))) + 0j
        q = rng.standard_normal((n, int(rng.integers(1, 5)))) + 0j
        brute = sum(
            abs(np.vdot(p[:, i], q[:, j])) ** 2
            for i in range(p.shape[1])
            for j in range(q.shape[1])
        )
        assert interference_leakage(p, q) == pytest.approx(brute, abs=1e-10)

    def test_orthogonal_blocks_leak_nothing(self):
        p = np.eye(4)[:, :2]
        q = np.eye(4)[:, 2:]
        assert interference_leakage(p, q) == 0.0

    def test_row_mismatch_rejected(self):
        with pytest.raises(DimensionMismatch):
            interference_leakage(np.eye(3), np.eye(4))


class TestLeakageReport:
    def test_report_consistent_with_direct_recomputation(self, ring_channels):
        coders = design_coders(ring_channels, "A", 5)
        rep = leakage_report(ring_channels, coders)
        cfg = ring_channels.config
        # Recompute one term by hand.
        k, m = 1, 0
        u = coders.receive_filters[(k, m)]
        j = cfg.interfering_cells(k, m)[0]
        h = ring_channels.link(j, k, m)
        v = coders.precoders[(j, 1)]
        hand = float(np.linalg.norm(u.conj().T @ h @ v) ** 2)
        assert rep.per_term[(k, m, j, 1)] == pytest.approx(hand, abs=1e-12)
        expected_norm = math.sqrt(hand) / max(1.0, float(np.linalg.norm(h)))
        assert rep.normalized[(k, m, j, 1)] == pytest.approx(expected_norm, abs=1e-12)
        assert rep.total == pytest.approx(sum(rep.per_user.values()), abs=1e-12)
        assert rep.max_normalized_residual == max(rep.normalized.values())

    def test_term_count_covers_iui_and_ici(self, ring_channels):
        coders = design_coders(ring_channels, "A", 5)
        rep = leakage_report(ring_channels, coders)
        cfg = ring_channels.config
        # Per user: (M-1) intra-cell terms + 2 neighbors x M cross terms.
        expected = cfg.K * cfg.M * ((cfg.M - 1) + 2 * cfg.M)
        assert len(rep.per_term) == expected


class TestSumRate:
    def test_single_user_siso_closed_form(self):
        # One cell, one user, one antenna everywhere: the rate must equal
        # log2(1 + rho |h|^2 |v|^2) with the unit-power precoder.
        cfg = NetworkConfig(topology=Topology.FULL_CONNECTED, K=1, M=1, d=1, N_t=1, N_r=1)
        ch = generate_channels(cfg, 3)
        coders = design_coders(ch, "A", 4)
        h = complex(ch.link(0, 0, 0)[0, 0])
        u = complex(coders.receive_filters[(0, 0)][0, 0])
        v = complex(coders.precoders[(0, 0)][0, 0])
        for snr_db in (0.0, 17.0, 40.0):
            rho = 10 ** (snr_db / 10)
            expected = math.log2(1 + rho * abs(u.conjugate() * h * v) ** 2)
            assert sum_rate(ch, coders, snr_db) == pytest.approx(expected, rel=1e-12)

    def test_rate_nondecreasing_in_snr(self, ring_channels):
        coders = design_coders(ring_channels, "A", 5)
        rates = [sum_rate(ring_channels, coders, s) for s in (0, 10, 20, 30, 40)]
        assert all(b >= a for a, b in zip(rates, rates[1:]))

    def test_interference_free_rate_scales_with_all_streams(self):
        # Perfect alignment: at high SNR the increment per 10 dB approaches
        # K*M*d * log2(10) bits.
        cfg = model2_config("A")
        ch = generate_channels(cfg, 11)
        coders = design_coders(ch, "A", 12)
        r50 = sum_rate(ch, coders, 50.0)
        r60 = sum_rate(ch, coders, 60.0)
        dof = cfg.K * cfg.M * cfg.d
        assert (r60 - r50) / (10 * math.log2(10) / 10) == pytest.approx(dof, rel=0.02)


class TestDofSlope:
    def test_synthetic_line_recovered_exactly(self):
        # rate = 3 + 7 log2(rho) should give slope 7 to machine precision.
        grid = (40.0, 45.0, 50.0, 55.0, 60.0)
        rates = tuple(3.0 + 7.0 * (s * math.log2(10) / 10) for s in grid)
        curve = RateCurve(snr_db=grid, sum_rate_bits=rates, trials=1)
        assert dof_slope(curve) == pytest.approx(7.0, abs=1e-9)

    def test_window_filters_points(self):
        grid = (0.0, 20.0, 40.0, 50.0, 60.0)
        rates = tuple(2.0 * (s * math.log2(10) / 10) for s in grid)
        curve = RateCurve(snr_db=grid, sum_rate_bits=rates, trials=1)
        assert dof_slope(curve, window_db=(30.0, 60.0)) == pytest.approx(2.0, abs=1e-9)

    def test_saturating_curve_has_flat_slope(self):
        grid = (50.0, 55.0, 60.0, 65.0, 70.0)
        rates = tuple(30.0 + 0.01 * i for i, _ in enumerate(grid))
        curve = RateCurve(snr_db=grid, sum_rate_bits=rates, trials=1)
        assert dof_slope(curve, window_db=(50.0, 70.0)) < 0.05

    def test_too_few_points_rejected(self):
        curve = RateCurve(snr_db=(42.0,), sum_rate_bits=(1.0,), trials=1)
        with pytest.raises(InsufficientPoints):
            dof_slope(curve)
        empty = RateCurve(snr_db=(0.0, 10.0), sum_rate_bits=(1.0, 2.0), trials=1)
        with pytest.raises(InsufficientPoints):
            dof_slope(empty)
