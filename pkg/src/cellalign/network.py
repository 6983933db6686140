"""Network topologies, configurations, and seeded channel generation.

Three downlink layouts are modeled. In the fully connected one every base
station is heard by every user. In the cyclic two-side layout cells sit on a
ring and each cell hears only its two neighbors. In the cyclic one-side-edge
layout each cell's users split into interior users, which hear only their own
base station, and edge users, which additionally hear the next cell's base
station around the ring.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import InvalidConfig
from .seeding import ROLE_CHANNEL, complex_gaussian, rng_for

__all__ = [
    "Topology",
    "NetworkConfig",
    "ChannelSet",
    "validate_config",
    "generate_channels",
]


class Topology(str, enum.Enum):
    FULL_CONNECTED = "full_connected"
    CYCLIC_TWO_SIDE = "cyclic_two_side"
    CYCLIC_ONE_SIDE_EDGE = "cyclic_one_side_edge"


@dataclass(frozen=True)
class NetworkConfig:
    """Cell/user/stream counts and antenna budget for one network instance.

    ``M_star``/``M_edge`` and the per-class antenna counts only apply to the
    one-side-edge topology; the uniform topologies use ``N_r`` alone. Users of
    a one-side-edge cell are indexed with interiors first: ``0..M_star-1``
    interior, ``M_star..M-1`` edge.
    """

    topology: Topology
    K: int
    M: int
    d: int
    N_t: int
    N_r: int | None = None
    M_star: int | None = None
    M_edge: int | None = None
    N_r_star: int | None = None
    N_r_edge: int | None = None

    def __post_init__(self):
        # Accept the plain string value; every downstream check compares by
        # enum identity.
        if not isinstance(self.topology, Topology):
            try:
                coerced = Topology(self.topology)
            except ValueError:
                raise InvalidConfig(
                    f"unknown topology {self.topology!r}"
                ) from None
            object.__setattr__(self, "topology", coerced)

    def rx_antennas(self, m: int) -> int:
        """Receive antenna count of user ``m`` (same in every cell)."""
        if self.topology is Topology.CYCLIC_ONE_SIDE_EDGE:
            assert self.M_star is not None
            if m < self.M_star:
                assert self.N_r_star is not None
                return self.N_r_star
            assert self.N_r_edge is not None
            return self.N_r_edge
        assert self.N_r is not None
        return self.N_r

    def is_edge_user(self, m: int) -> bool:
        if self.topology is not Topology.CYCLIC_ONE_SIDE_EDGE:
            return False
        assert self.M_star is not None
        return m >= self.M_star

    @property
    def interior_users(self) -> range:
        if self.topology is Topology.CYCLIC_ONE_SIDE_EDGE:
            assert self.M_star is not None
            return range(self.M_star)
        return range(self.M)

    @property
    def edge_users(self) -> range:
        if self.topology is Topology.CYCLIC_ONE_SIDE_EDGE:
            assert self.M_star is not None
            return range(self.M_star, self.M)
        return range(0)

    def interfering_cells(self, k: int, m: int) -> tuple[int, ...]:
        """Transmitters other than cell ``k`` that user ``(k, m)`` hears."""
        if self.topology is Topology.FULL_CONNECTED:
            return tuple(j for j in range(self.K) if j != k)
        if self.topology is Topology.CYCLIC_TWO_SIDE:
            prev, nxt = (k - 1) % self.K, (k + 1) % self.K
            return tuple(dict.fromkeys(j for j in (prev, nxt) if j != k))
        if self.is_edge_user(m):
            nxt = (k + 1) % self.K
            return (nxt,) if nxt != k else ()
        return ()

    def with_updates(self, **changes) -> "NetworkConfig":
        return replace(self, **changes)


def validate_config(cfg: NetworkConfig) -> list[str]:
    """Return all structural violations of ``cfg`` (empty list when valid)."""
    issues: list[str] = []
    if not isinstance(cfg.topology, Topology):
        issues.append(f"unknown topology {cfg.topology!r}")
        return issues

    if cfg.K < 1:
        issues.append(f"K must be >= 1, got {cfg.K}")
    if cfg.M < 1:
        issues.append(f"M must be >= 1, got {cfg.M}")
    if cfg.d < 1:
        issues.append(f"d must be >= 1, got {cfg.d}")
    if cfg.N_t < 1:
        issues.append(f"N_t must be >= 1, got {cfg.N_t}")

    if cfg.topology is Topology.CYCLIC_TWO_SIDE and cfg.K < 3:
        issues.append(f"K >= 3 required for {cfg.topology.value} (two distinct neighbors), got K={cfg.K}")
    if cfg.topology is Topology.CYCLIC_ONE_SIDE_EDGE and cfg.K < 2:
        issues.append(f"K >= 2 required for {cfg.topology.value}, got K={cfg.K}")

    if cfg.topology is Topology.CYCLIC_ONE_SIDE_EDGE:
        if cfg.M_star is None or cfg.M_edge is None:
            issues.append("M_star and M_edge are required for cyclic_one_side_edge")
        else:
            if cfg.M_star < 0 or cfg.M_edge < 0:
                issues.append(f"user-class counts must be >= 0, got M_star={cfg.M_star}, M_edge={cfg.M_edge}")
            if cfg.M_star + cfg.M_edge != cfg.M:
                issues.append(
                    f"M_star+M_edge=M violated: {cfg.M_star}+{cfg.M_edge} != {cfg.M}"
                )
            if cfg.M_star and (cfg.N_r_star is None or cfg.N_r_star < 1):
                issues.append(f"N_r_star must be >= 1 when interior users exist, got {cfg.N_r_star}")
            if cfg.M_edge and (cfg.N_r_edge is None or cfg.N_r_edge < 1):
                issues.append(f"N_r_edge must be >= 1 when edge users exist, got {cfg.N_r_edge}")
            if cfg.M_star and cfg.N_r_star is not None and cfg.d > cfg.N_r_star:
                issues.append(f"d <= N_r_star violated: d={cfg.d}, N_r_star={cfg.N_r_star}")
            if cfg.M_edge and cfg.N_r_edge is not None and cfg.d > cfg.N_r_edge:
                issues.append(f"d <= N_r_edge violated: d={cfg.d}, N_r_edge={cfg.N_r_edge}")
    else:
        if cfg.N_r is None or cfg.N_r < 1:
            issues.append(f"N_r must be >= 1, got {cfg.N_r}")
        elif cfg.d > cfg.N_r:
            issues.append(f"d <= N_r violated: d={cfg.d}, N_r={cfg.N_r}")

    return issues


@dataclass(frozen=True)
class ChannelSet:
    """All channel matrices of one network realization.

    ``links`` maps ``(tx_cell, rx_cell, rx_user)`` to the complex channel of
    shape ``rx_antennas x N_t``. Only links that exist in the topology are
    present; iterating over interference therefore never touches a
    non-existent path.
    """

    config: NetworkConfig
    seed: int
    links: dict[tuple[int, int, int], np.ndarray] = field(repr=False)

    def link(self, tx_cell: int, rx_cell: int, rx_user: int) -> np.ndarray:
        return self.links[(tx_cell, rx_cell, rx_user)]

    def has_link(self, tx_cell: int, rx_cell: int, rx_user: int) -> bool:
        return (tx_cell, rx_cell, rx_user) in self.links


def _link_keys(cfg: NetworkConfig) -> list[tuple[int, int, int]]:
    keys: list[tuple[int, int, int]] = []
    for k in range(cfg.K):
        for m in range(cfg.M):
            keys.append((k, k, m))
            for j in cfg.interfering_cells(k, m):
                keys.append((j, k, m))
    return sorted(keys)


def generate_channels(cfg: NetworkConfig, seed: int) -> ChannelSet:
    """Draw every existing link's channel matrix, deterministically per seed.

    Entries are i.i.d. circularly symmetric complex Gaussian with unit
    variance. Each link has its own substream keyed by the link identifiers,
    so regenerating with the same ``(cfg, seed)`` is bit-for-bit identical and
    adding users leaves existing links untouched.
    """
    issues = validate_config(cfg)
    if issues:
        raise InvalidConfig(issues)
    links: dict[tuple[int, int, int], np.ndarray] = {}
    for j, k, m in _link_keys(cfg):
        rng = rng_for(seed, ROLE_CHANNEL, j, k, m)
        h = complex_gaussian(rng, cfg.rx_antennas(m), cfg.N_t)
        h.setflags(write=False)
        links[(j, k, m)] = h
    return ChannelSet(config=cfg, seed=int(seed), links=links)
