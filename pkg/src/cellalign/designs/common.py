"""Shared machinery for the coder constructions.

Every design in this package produces a :class:`CoderSet`: unit-norm precoder
columns per served user, orthonormal receive filters, and the intermediate
factors (transmit bases, coefficient blocks, reference subspaces) that the
construction passed through. Intermediates are kept exactly consistent with
the final coders: orthonormalization folds its triangular factor into the
stored coefficients, so cascade identities hold to float precision rather
than only up to span.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Mapping

import numpy as np

from ..errors import DimensionMismatch, EmptyNullSpace, SingularConstruction
from ..linalg import DEFAULT_TOL, null_space_basis, numerical_rank, pseudo_inverse
from ..network import NetworkConfig
from ..seeding import complex_gaussian

__all__ = [
    "CoderSet",
    "random_orthonormal",
    "orthonormalize",
    "unit_normalize",
    "inverse_columns",
    "per_cell_inverse",
    "freeze",
]


def freeze(a: np.ndarray) -> np.ndarray:
    """Return ``a`` as a read-only complex array (no copy when possible)."""
    out = np.asarray(a, dtype=np.complex128)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class CoderSet:
    """Finished transmit/receive coders for one channel realization.

    ``precoders`` maps ``(cell, user)`` to an ``N_t x d`` block with unit-norm
    columns; ``receive_filters`` maps the same key to an orthonormal
    ``N_r x d`` block. ``intermediates`` carries construction-specific
    factors keyed by role name (``cell_tx_basis``, ``precoder_coeffs``,
    ``user_rx_basis``, ``filter_coeffs``, ``aligning_inverse``,
    ``common_filter``, ``rx_reference``, ``tx_reference``, ``design_stack``),
    each mapping its own key scheme to arrays.
    """

    config: NetworkConfig
    approach: str
    precoders: Mapping[tuple[int, int], np.ndarray]
    receive_filters: Mapping[tuple[int, int], np.ndarray]
    intermediates: Mapping[str, Any] = field(default_factory=dict)

    def precoder(self, cell: int, user: int) -> np.ndarray:
        return self.precoders[(cell, user)]

    def receive_filter(self, cell: int, user: int) -> np.ndarray:
        return self.receive_filters[(cell, user)]


def random_orthonormal(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    """Haar-distributed orthonormal block with a fixed phase convention."""
    if cols > rows:
        raise DimensionMismatch(f"cannot fit {cols} orthonormal columns in dimension {rows}")
    q, _ = orthonormalize(complex_gaussian(rng, rows, cols))
    return q


def mixed_null_basis(a: np.ndarray, width: int, rng: np.random.Generator) -> np.ndarray:
    """Generic ``width``-column basis inside the null space of ``a``.

    When the null space is larger than ``width``, the raw SVD basis can align
    with block structure in ``a`` (disconnected constraint systems return one
    basis vector per block), which makes sub-slices of the chosen columns
    rank deficient. Rotating the full basis by a seeded Haar matrix picks a
    generic subspace instead; every column still satisfies ``a @ x = 0``
    exactly, so downstream zero-forcing is unaffected.
    """
    full = null_space_basis(a)
    if full.shape[1] < width:
        raise EmptyNullSpace(
            f"null space has {full.shape[1]} dimensions, {width} requested"
        )
    if full.shape[1] == width:
        return full
    return full @ random_orthonormal(rng, full.shape[1], width)


def mixed_left_null_basis(a: np.ndarray, width: int, rng: np.random.Generator) -> np.ndarray:
    """Left-sided counterpart of :func:`mixed_null_basis` (``x† @ a = 0``)."""
    return mixed_null_basis(np.asarray(a, dtype=np.complex128).conj().T, width, rng)


def orthonormalize(raw: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """QR-orthonormalize ``raw``; return ``(q, c)`` with ``raw @ c == q``.

    The triangular factor is phase-fixed so its diagonal is real and
    positive, which pins the sign/phase freedom of each column. A raw block
    without full column rank has no such factorization and raises
    :class:`SingularConstruction`.
    """
    a = np.asarray(raw, dtype=np.complex128)
    if a.ndim != 2 or a.shape[1] > a.shape[0]:
        raise DimensionMismatch(f"cannot orthonormalize block of shape {a.shape}")
    q, r = np.linalg.qr(a)
    diag = np.diagonal(r)
    scale = max(1.0, float(np.linalg.norm(a)))
    if np.any(np.abs(diag) <= DEFAULT_TOL * scale):
        raise SingularConstruction(
            f"rank-deficient block of shape {a.shape} cannot be orthonormalized"
        )
    phases = diag / np.abs(diag)
    q = q * phases
    r = r * phases.conj()[:, None]
    c = np.linalg.solve(r, np.eye(r.shape[0], dtype=np.complex128))
    return q, c


def unit_normalize(raw: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Scale columns of ``raw`` to unit norm; return ``(v, scale)``.

    ``scale`` is the diagonal right-factor that was applied, so the same
    factor can be folded into coefficient blocks to keep cascades exact.
    A numerically zero column means an upstream inverse collapsed, which is
    reported as :class:`SingularConstruction` rather than patched over.
    """
    a = np.asarray(raw, dtype=np.complex128)
    norms = np.linalg.norm(a, axis=0)
    floor = 1e-12 * max(1.0, float(np.linalg.norm(a)))
    if np.any(norms <= floor):
        raise SingularConstruction("precoder column collapsed to zero during normalization")
    scale = np.diag(1.0 / norms).astype(np.complex128)
    return a @ scale, scale


def per_cell_inverse(
    channels,
    rx_filters: Mapping[tuple[int, int], np.ndarray],
    tx_blocks: Mapping[int, np.ndarray],
    extra_rows: Mapping[int, list[np.ndarray]] | None = None,
    users_of=None,
):
    """Second transmit stage shared by most approaches.

    Stacks each cell's filtered direct channels (through the cell's transmit
    block), appends any approach-specific nulling rows, and takes ``Md``
    columns of the stack's (right) inverse. Returns unit-column precoders,
    the coefficient blocks that reproduce them exactly from the transmit
    block, and the stacks themselves for diagnostics.

    ``users_of`` lets layouts with non-uniform cells say which users join the
    stack; the default is every user index below ``config.M``.
    """
    cfg = channels.config
    d, M = cfg.d, cfg.M
    if users_of is None:
        users_of = lambda k: range(M)  # noqa: E731 - tiny local default
    precoders: dict[tuple[int, int], np.ndarray] = {}
    coeffs: dict[tuple[int, int], np.ndarray] = {}
    stacks: dict[int, np.ndarray] = {}
    for k in range(cfg.K):
        users = list(users_of(k))
        rows = [
            rx_filters[(k, m)].conj().T @ channels.link(k, k, m) @ tx_blocks[k]
            for m in users
        ]
        if extra_rows and extra_rows.get(k):
            rows.extend(extra_rows[k])
        stack = np.vstack(rows)
        inv_cols = inverse_columns(stack, len(users) * d)
        stacks[k] = stack
        for i, m in enumerate(users):
            raw = tx_blocks[k] @ inv_cols[:, i * d : (i + 1) * d]
            v, scale = unit_normalize(raw)
            precoders[(k, m)] = v
            coeffs[(k, m)] = inv_cols[:, i * d : (i + 1) * d] @ scale
    return precoders, coeffs, stacks


def inverse_columns(block: np.ndarray, count: int, which: str = "first") -> np.ndarray:
    """Selected columns of the (pseudo-)inverse of a stacked design block.

    For a square ``block`` this is a plain inverse; a wide block (fewer rows
    than columns) uses the pseudo-inverse, which realizes a right inverse
    when the rows are independent. Rank deficiency in either case raises
    :class:`SingularConstruction` because the construction relied on the
    stack being full rank.
    """
    b = np.asarray(block, dtype=np.complex128)
    rows, cols = b.shape
    if count > cols:
        raise DimensionMismatch(f"asked for {count} columns of a {rows}x{cols} inverse")
    if rows > cols:
        raise DimensionMismatch(
            f"design stack of shape {b.shape} is tall: no right inverse exists"
        )
    if numerical_rank(b) < rows:
        raise SingularConstruction(
            f"design stack of shape {b.shape} is rank deficient; cannot invert"
        )
    if rows == cols:
        inv = np.linalg.solve(b, np.eye(rows, dtype=np.complex128))
    else:
        inv = pseudo_inverse(b)
    if which == "first":
        return inv[:, :count]
    if which == "last":
        return inv[:, cols - count :]
    raise ValueError(f"which must be 'first' or 'last', not {which!r}")
