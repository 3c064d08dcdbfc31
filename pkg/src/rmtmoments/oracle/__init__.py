"""Independent checks of the recursion engine."""

from .harer_zagier import hz_closed_form, hz_three_term_check
from .montecarlo import McEstimate, MonteCarloConfig, mc_estimate, mc_estimate_many
from .wick import wick_enumerate, wick_moment

__all__ = [
    "McEstimate",
    "MonteCarloConfig",
    "hz_closed_form",
    "hz_three_term_check",
    "mc_estimate",
    "mc_estimate_many",
    "wick_enumerate",
    "wick_moment",
]
