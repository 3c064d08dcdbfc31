"""Exact mixed trace moments of GUE, GOE and isotropic Wishart matrices."""

__version__ = "0.1.0"

from .engine import Ensemble, MomentCache, moment  # noqa: E402
from .layout import canonicalize, parse_layout  # noqa: E402
from .polynomial import MomentPolynomial  # noqa: E402

__all__ = ["Ensemble", "MomentCache", "MomentPolynomial", "canonicalize", "moment", "parse_layout"]
