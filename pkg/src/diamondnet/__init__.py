"""Capacity approximation and simplification of Gaussian diamond relay networks.

A diamond network connects a source to a destination through a layer of
relays. This package computes the combinatorial min-cut approximation to
its capacity (exactly, in O(n log n)), brackets the information-theoretic
cut-set bound around it, discovers small relay subsets guaranteed to carry
a k/(k+1) fraction of it, and analyzes the amplify-and-forward strategy.
See the ``diamondnet`` CLI for the file format and commands.
"""

from .af import (
    AfCoefficients,
    AfReport,
    af_grid_search,
    af_optimize,
    af_rate,
    af_rate_batch,
    af_snr_bound_sides,
    af_upper_bound,
)
from .cuts import (
    Cut,
    OmegaResult,
    SandwichReport,
    cut_value,
    gap_constant,
    omega_bruteforce,
    omega_fast,
    sandwich,
)
from .errors import DegenerateNetworkError, SizeLimitError, ValidationError
from .generate import random_network
from .model import (
    Network,
    RateTable,
    RelayChannels,
    network_from,
    point_capacity,
    rate_table,
)
from .netfile import NetworkFile, from_network, from_rates, load, loads
from .selection import (
    Certificate,
    GuaranteeReport,
    SelectionResult,
    TradeoffReport,
    guarantee,
    hybrid_tradeoff,
    omega_k_bruteforce,
    omega_k_ratio,
    select,
    strategy_gap,
    tight_config,
    verify_selection,
)
from .verify import Failure, VerifyReport, run_verification, trial_seed

__version__ = "0.1.0"

__all__ = [
    "AfCoefficients",
    "AfReport",
    "Certificate",
    "Cut",
    "DegenerateNetworkError",
    "Failure",
    "GuaranteeReport",
    "Network",
    "NetworkFile",
    "OmegaResult",
    "RateTable",
    "RelayChannels",
    "SandwichReport",
    "SelectionResult",
    "SizeLimitError",
    "TradeoffReport",
    "ValidationError",
    "VerifyReport",
    "af_grid_search",
    "af_optimize",
    "af_rate",
    "af_rate_batch",
    "af_snr_bound_sides",
    "af_upper_bound",
    "cut_value",
    "from_network",
    "from_rates",
    "gap_constant",
    "guarantee",
    "hybrid_tradeoff",
    "load",
    "loads",
    "network_from",
    "omega_bruteforce",
    "omega_fast",
    "omega_k_bruteforce",
    "omega_k_ratio",
    "point_capacity",
    "random_network",
    "rate_table",
    "run_verification",
    "sandwich",
    "select",
    "strategy_gap",
    "tight_config",
    "trial_seed",
    "verify_selection",
]
