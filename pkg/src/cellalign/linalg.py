"""Dense complex-matrix kernels shared by every coder construction.

All routines are thin, deterministic wrappers over numpy's LAPACK bindings
with two extra guarantees the constructions rely on:

* a single relative tolerance convention (``DEFAULT_TOL`` times the largest
  singular value) for every rank decision, and
* a fixed phase convention for returned basis columns (first non-negligible
  entry real positive), so identical inputs produce bit-identical bases and
  seeded experiments can be replayed exactly.

Inputs are never modified; every function returns a fresh array.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionMismatch, EmptyNullSpace, NotHermitian, ZeroMatrix

DEFAULT_TOL = 1e-9
"""Relative rank tolerance.

Channels are order-one Gaussian matrices and the constructions take at most a
few products of them, so singular values below ``1e-9`` of the largest one
are noise.
"""

_PHASE_FLOOR = 1e-12


def _as_complex(a: np.ndarray) -> np.ndarray:
    arr = np.asarray(a)
    if arr.ndim != 2 or arr.size == 0:
        raise DimensionMismatch(f"expected a nonempty 2-d array, got shape {arr.shape}")
    return arr.astype(np.complex128, copy=False)


def fix_column_phases(m: np.ndarray) -> np.ndarray:
    """Rotate each column so its first non-negligible entry is real positive.

    Subspace-level quantities are unaffected; the point is determinism of the
    concrete basis across repeated runs.
    """
    out = np.array(m, dtype=np.complex128, copy=True)
    for j in range(out.shape[1]):
        col = out[:, j]
        mags = np.abs(col)
        top = mags.max(initial=0.0)
        if top <= _PHASE_FLOOR:
            continue
        lead = int(np.argmax(mags > _PHASE_FLOOR * max(1.0, top)))
        pivot = col[lead]
        if abs(pivot) > 0:
            out[:, j] = col * (np.conj(pivot) / abs(pivot))
    return out


def numerical_rank(a: np.ndarray, tol: float = DEFAULT_TOL) -> int:
    """Count singular values above ``tol`` times the largest one.

    The zero matrix has rank 0 regardless of ``tol``.
    """
    if tol < 0:
        raise DimensionMismatch("tolerance must be nonnegative")
    arr = _as_complex(a)
    sv = np.linalg.svd(arr, compute_uv=False)
    if sv.size == 0 or sv[0] == 0.0:
        return 0
    return int(np.count_nonzero(sv > tol * sv[0]))


def null_space_basis(
    a: np.ndarray, tol: float = DEFAULT_TOL, width: int | None = None
) -> np.ndarray:
    """Orthonormal basis of the (right) null space ``{x : A x = 0}``.

    Parameters
    ----------
    a : array, shape (r, c)
    tol : relative singular-value cutoff for the rank decision.
    width : optional fixed number of columns. When given, the first ``width``
        basis columns are returned; if the null space is smaller,
        ``EmptyNullSpace`` is raised.

    Returns
    -------
    array, shape (c, n) with orthonormal columns and ``A @ N ~ 0``.
    """
    if tol < 0:
        raise DimensionMismatch("tolerance must be nonnegative")
    arr = _as_complex(a)
    _, sv, vh = np.linalg.svd(arr, full_matrices=True)
    cols = arr.shape[1]
    if sv.size == 0 or sv[0] == 0.0:
        rank = 0
    else:
        rank = int(np.count_nonzero(sv > tol * sv[0]))
    basis = vh[rank:].conj().T
    if width is not None:
        if width > basis.shape[1]:
            raise EmptyNullSpace(
                f"requested {width} null-space columns, only {basis.shape[1]} exist "
                f"for a {arr.shape[0]}x{cols} matrix of rank {rank}"
            )
        basis = basis[:, :width]
    return fix_column_phases(basis)


def left_null_basis(
    a: np.ndarray, tol: float = DEFAULT_TOL, width: int | None = None
) -> np.ndarray:
    """Orthonormal basis ``N`` with ``N† A = 0`` (null space of ``A†``).

    Receive filters are left annihilators of interference blocks, so this is
    the form the constructions actually consume.
    """
    return null_space_basis(_as_complex(a).conj().T, tol=tol, width=width)


def pseudo_inverse(a: np.ndarray) -> np.ndarray:
    """Moore-Penrose pseudo-inverse with the package-wide rank tolerance."""
    arr = _as_complex(a)
    return np.linalg.pinv(arr, rcond=DEFAULT_TOL)


def orthonormal_basis(a: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal basis of the column space of ``a``.

    Raises ``ZeroMatrix`` when every column is numerically zero.
    """
    arr = _as_complex(a)
    u, sv, _ = np.linalg.svd(arr, full_matrices=False)
    if sv.size == 0 or sv[0] == 0.0:
        raise ZeroMatrix(f"no nonzero columns in a {arr.shape[0]}x{arr.shape[1]} matrix")
    rank = int(np.count_nonzero(sv > tol * sv[0]))
    if rank == 0:
        raise ZeroMatrix(f"no nonzero columns in a {arr.shape[0]}x{arr.shape[1]} matrix")
    return fix_column_phases(u[:, :rank])


def smallest_eigvecs(s: np.ndarray, q: int) -> np.ndarray:
    """Orthonormal eigenvectors of the ``q`` smallest eigenvalues of Hermitian ``s``.

    Eigenvalues are taken in ascending order; ties inherit LAPACK's ordering
    and the column-phase convention keeps the result reproducible. Only the
    spanned subspace is contractually meaningful when the spectrum is
    degenerate.
    """
    arr = _as_complex(s)
    n = arr.shape[0]
    if arr.shape[0] != arr.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got {arr.shape}")
    if not (1 <= q <= n):
        raise DimensionMismatch(f"requested {q} eigenvectors from a {n}x{n} matrix")
    scale = max(1.0, float(np.linalg.norm(arr)))
    if np.linalg.norm(arr - arr.conj().T) > 1e-10 * scale:
        raise NotHermitian("matrix is not Hermitian within 1e-10 relative tolerance")
    herm = (arr + arr.conj().T) / 2.0
    _, vecs = np.linalg.eigh(herm)
    return fix_column_phases(vecs[:, :q])
