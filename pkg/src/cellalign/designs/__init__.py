"""Closed-form coder constructions for the three network layouts."""

from __future__ import annotations

from ..errors import UnknownApproach
from ..network import ChannelSet, Topology
from .advanced import Codebook, design_cyclic_two_side_advanced, generate_codebook
from .common import CoderSet
from .cyclic_one_side import design_cyclic_one_side
from .cyclic_two_side import design_cyclic_two_side
from .full_connected import design_full_connected

__all__ = [
    "CoderSet",
    "Codebook",
    "design_coders",
    "design_full_connected",
    "design_cyclic_two_side",
    "design_cyclic_two_side_advanced",
    "design_cyclic_one_side",
    "generate_codebook",
]


def design_coders(
    channels: ChannelSet,
    approach: str,
    seed: int,
    codebook: Codebook | None = None,
) -> CoderSet:
    """Dispatch to the right topology/approach constructor.

    Uppercase approach letters select the per-topology baseline designs,
    lowercase letters the chained variants of the two-sided ring.
    """
    topology = channels.config.topology
    if topology is Topology.FULL_CONNECTED:
        return design_full_connected(channels, approach, seed)
    if topology is Topology.CYCLIC_TWO_SIDE:
        if approach.islower():
            return design_cyclic_two_side_advanced(channels, approach, seed, codebook=codebook)
        return design_cyclic_two_side(channels, approach, seed)
    if topology is Topology.CYCLIC_ONE_SIDE_EDGE:
        return design_cyclic_one_side(channels, approach, seed)
    raise UnknownApproach(f"no designs registered for topology {topology!r}")
