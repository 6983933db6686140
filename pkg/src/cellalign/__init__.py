"""Closed-form interference alignment for multi-cell MIMO downlinks.

The package designs transmit precoders and receive filters for three network
layouts (fully connected, two-sided ring, one-sided ring with edge users),
verifies the resulting zero-forcing numerically, and sweeps Monte Carlo rate
curves whose high-power slope certifies the delivered degrees of freedom.
"""

from .designs import (
    Codebook,
    CoderSet,
    design_coders,
    design_cyclic_one_side,
    design_cyclic_two_side,
    design_cyclic_two_side_advanced,
    design_full_connected,
    generate_codebook,
)
from .errors import (
    CellAlignError,
    DimensionMismatch,
    EmptyNullSpace,
    InfeasibleAntennas,
    InsufficientPoints,
    InvalidConfig,
    MissingCodebook,
    NotHermitian,
    SingularConstruction,
    UnknownApproach,
    ZeroMatrix,
)
from .evaluation import (
    LeakageReport,
    RateCurve,
    SweepResult,
    chordal_distance_sq,
    dof_slope,
    interference_leakage,
    leakage_report,
    rate_sweep,
    rate_sweep_detailed,
    sum_rate,
)
from .harness import (
    Scenario,
    check_feasibility,
    load_scenario,
    print_tables,
    run_scenario,
)
from .network import ChannelSet, NetworkConfig, Topology, generate_channels, validate_config
from .tables import (
    antenna_row,
    approaches_for,
    feasibility_requirements,
    min_antennas,
    require_feasible,
    resource_report,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "CellAlignError",
    "DimensionMismatch",
    "ZeroMatrix",
    "NotHermitian",
    "EmptyNullSpace",
    "InvalidConfig",
    "UnknownApproach",
    "InfeasibleAntennas",
    "SingularConstruction",
    "MissingCodebook",
    "InsufficientPoints",
    "Topology",
    "NetworkConfig",
    "ChannelSet",
    "validate_config",
    "generate_channels",
    "approaches_for",
    "antenna_row",
    "min_antennas",
    "resource_report",
    "feasibility_requirements",
    "require_feasible",
    "CoderSet",
    "Codebook",
    "design_coders",
    "design_full_connected",
    "design_cyclic_two_side",
    "design_cyclic_two_side_advanced",
    "design_cyclic_one_side",
    "generate_codebook",
    "chordal_distance_sq",
    "interference_leakage",
    "LeakageReport",
    "leakage_report",
    "sum_rate",
    "RateCurve",
    "SweepResult",
    "rate_sweep",
    "rate_sweep_detailed",
    "dof_slope",
    "Scenario",
    "load_scenario",
    "run_scenario",
    "print_tables",
    "check_feasibility",
]
