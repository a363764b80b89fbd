"""
Scalar special functions and numeric guards used by every pricer
"""
import math
from typing import NewType

from scipy.special import log_ndtr, ndtr

from config.constants import NORM_CDF_TAIL_CUTOFF
from .errors import DomainError

Probability = NewType("Probability", float)


def norm_cdf(x: float) -> Probability:
    """Standard normal CDF; exactly 0 / 1 beyond the tail cutoff"""
    if not math.isfinite(x):
        raise DomainError(f"norm_cdf needs a finite argument, got {x}")
    if x <= -NORM_CDF_TAIL_CUTOFF:
        return Probability(0.0)
    if x >= NORM_CDF_TAIL_CUTOFF:
        return Probability(1.0)
    return Probability(float(ndtr(x)))


def log_norm_cdf(x: float) -> float:
    """Natural log of the standard normal CDF, accurate deep in the lower tail"""
    if not math.isfinite(x):
        raise DomainError(f"log_norm_cdf needs a finite argument, got {x}")
    return float(log_ndtr(x))


def scaled_norm_cdf(log_scale: float, x: float) -> float:
    """exp(log_scale) * Phi(x), evaluated in log space"""
    log_value = log_scale + log_norm_cdf(x)
    try:
        return math.exp(log_value)
    except OverflowError:
        raise DomainError(f"exp({log_scale}) * Phi({x}) overflows") from None


def clamp_probability(p: float) -> Probability:
    """Clamp a computed probability into [0, 1]"""
    if math.isnan(p):
        raise DomainError("probability is NaN")
    return Probability(min(1.0, max(0.0, p)))
