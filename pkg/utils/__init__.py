"""
Shared numeric helpers and the library exception hierarchy
"""

from .errors import (
    PricingError,
    ValidationError,
    UnsupportedCombinationError,
    NeedsAssumptionError,
    FixtureError,
    NumericalError,
    DomainError,
    SingularityError,
    AlreadyKnockedOutError,
)
from .math_kernel import Probability, norm_cdf, log_norm_cdf, scaled_norm_cdf, clamp_probability

__all__ = [
    # Errors
    "PricingError",
    "ValidationError",
    "UnsupportedCombinationError",
    "NeedsAssumptionError",
    "FixtureError",
    "NumericalError",
    "DomainError",
    "SingularityError",
    "AlreadyKnockedOutError",

    # Math kernel
    "Probability",
    "norm_cdf",
    "log_norm_cdf",
    "scaled_norm_cdf",
    "clamp_probability",
]
