"""Exception types raised across the package.

Every error that callers are expected to catch is defined here so that the
CLI can map any failure onto a single-line diagnostic and a nonzero exit
status without importing the module that raised it.
"""

from __future__ import annotations


class CellAlignError(Exception):
    """Base class for all package-specific errors."""


class DimensionMismatch(CellAlignError):
    """Operands have incompatible shapes for the requested operation."""


class ZeroMatrix(CellAlignError):
    """An operation needing a nonzero matrix received a (numerically) zero one."""


class NotHermitian(CellAlignError):
    """A matrix required to be Hermitian is not, beyond tolerance."""


class EmptyNullSpace(CellAlignError):
    """A fixed-width null-space basis was requested but the null space is smaller."""


class InvalidConfig(CellAlignError):
    """A network configuration violates its structural invariants."""

    def __init__(self, violations: list[str] | str):
        if isinstance(violations, str):
            violations = [violations]
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class UnknownApproach(CellAlignError):
    """The requested design approach does not exist for the given topology."""


class InfeasibleAntennas(CellAlignError):
    """Antenna counts violate a dimension requirement of the chosen design.

    The violated inequality is carried in ``detail`` with the config's numbers
    substituted, e.g. ``"N_t >= Md (got N_t=2, need 3)"``.
    """

    def __init__(self, detail: str):
        self.detail = detail
        super().__init__(detail)


class SingularConstruction(CellAlignError):
    """A required inverse or null space was rank-deficient.

    Under the continuous channel law this is a probability-zero event; it is
    surfaced rather than patched so that trials stay independent.
    """


class MissingCodebook(CellAlignError):
    """The selected design option needs a codebook and none was supplied."""


class InsufficientPoints(CellAlignError):
    """Too few samples fall inside the requested fitting window."""
