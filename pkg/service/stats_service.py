"""
Bernoulli-trial sizing, 95% confidence intervals and the S_f / T_f
performance coefficients.
"""

from fractions import Fraction
from models.experiment import CoefficientSummary, PerfPair, ProblemKind, SampleStats
from typing import List, Tuple
import math

Z_95 = 1.96
MARGIN = 0.05
# (1.96 / 0.05)^2 = 1536.64, kept exact so the ceiling is not off by one
TRIALS_FACTOR = Fraction(196, 5) ** 2


def bernoulli_trials(variance: float) -> int:
    """Trials needed for a 95% interval of half-width 0.05: ceil(1536.64 * variance)."""
    if variance < 0:
        raise ValueError(f"variance must be non-negative, got {variance}")
    return math.ceil(TRIALS_FACTOR * Fraction(variance))


def confidence_interval(stats: SampleStats) -> Tuple[float, float]:
    half = Z_95 * math.sqrt(stats.variance / stats.n)
    return stats.mean - half, stats.mean + half


def summarize(values: List[float]) -> CoefficientSummary:
    stats = SampleStats.from_values(values)
    low, high = confidence_interval(stats)
    return CoefficientSummary(mean=stats.mean, variance=stats.variance, ci_low=low, ci_high=high)


def perf_dkp(z_dc: float, z_star: float, t_dc: float, t_star: float) -> PerfPair:
    """Maximization: S_f = 100 * z_dc / z*."""
    if z_star <= 0:
        raise ValueError(f"z* must be positive, got {z_star}")
    if t_star <= 0:
        raise ValueError(f"t* must be positive, got {t_star}")
    return PerfPair(s_f=100.0 * z_dc / z_star, t_f=100.0 * t_dc / t_star)


def perf_min(z_full: float, z_dc: float, t_dc: float, t_full: float) -> PerfPair:
    """Minimization: S_f = 100 * z_full / z_dc, so the fraction stays near or below 100."""
    if z_dc <= 0:
        raise ValueError(f"z_dc must be positive, got {z_dc}")
    if t_full <= 0:
        raise ValueError(f"t_full must be positive, got {t_full}")
    return PerfPair(s_f=100.0 * z_full / z_dc, t_f=100.0 * t_dc / t_full)


def perf_pair(problem: ProblemKind, z_full: float, z_dc: float, t_full: float, t_dc: float) -> PerfPair:
    """Orientation is chosen by problem kind, never from the values."""
    if problem == ProblemKind.DKP:
        return perf_dkp(z_dc, z_full, t_dc, t_full)
    return perf_min(z_full, z_dc, t_dc, t_full)
