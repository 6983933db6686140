"""Deterministic random-stream derivation.

One user-facing 64-bit seed fans out into independent streams through
``numpy.random.SeedSequence`` entropy tuples ``(seed, role, *tags)``. Roles
separate the major consumers; tags identify the object being drawn (a link,
a cell, a user, a trial index). Because each link stream is keyed by its own
identifiers rather than by draw order, enlarging a network never perturbs the
draws of objects that already existed.
"""

from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1

ROLE_CHANNEL = 0
ROLE_DESIGN = 1
ROLE_CODEBOOK = 2
ROLE_TRIAL = 3

# Sub-tags for distinct random objects inside one design construction.
TAG_CELL_BASIS = 10
TAG_USER_BASIS = 11
TAG_COMMON_FILTER = 12
TAG_RX_FILTER = 13
TAG_FREE_BLOCK = 14
TAG_NULL_MIX = 15


def rng_for(seed: int, *tags: int) -> np.random.Generator:
    """PCG64 generator for the stream identified by ``(seed, *tags)``."""
    entropy = (int(seed) & _MASK64, *(int(t) & _MASK64 for t in tags))
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(entropy)))


def derive_seed(seed: int, *tags: int) -> int:
    """Collapse ``(seed, *tags)`` into a fresh 64-bit child seed."""
    entropy = (int(seed) & _MASK64, *(int(t) & _MASK64 for t in tags))
    state = np.random.SeedSequence(entropy).generate_state(1, dtype=np.uint64)
    return int(state[0])


def complex_gaussian(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    """Matrix of i.i.d. circularly symmetric complex Gaussians, unit variance."""
    real = rng.standard_normal((rows, cols))
    imag = rng.standard_normal((rows, cols))
    return (real + 1j * imag) / np.sqrt(2.0)
