import math
from typing import Sequence, Tuple

import numpy as np
from scipy.stats import norm


def wilson_interval(successes: int, trials: int, confidence: float = 0.95) -> Tuple[float, float]:
    """
    Wilson score interval of a binomial proportion
        :param successes: counted events
        :param trials: number of trials, at least 1
        :param confidence: two-sided confidence level
    """
    if trials <= 0:
        raise ValueError('trials must be positive')
    z = float(norm.ppf(1 - (1 - confidence) / 2))
    p = successes / trials
    denom = 1 + z * z / trials
    centre = (p + z * z / (2 * trials)) / denom
    half = z * math.sqrt(p * (1 - p) / trials + z * z / (4 * trials * trials)) / denom
    return max(0.0, min(p, centre - half)), min(1.0, max(p, centre + half))


def wilson_upper(successes: int, trials: int, confidence: float = 0.95) -> float:
    return wilson_interval(successes, trials, confidence)[1]


def binomial_sigma(p: float, trials: int) -> float:
    """Standard error of an empirical frequency"""
    return math.sqrt(max(p * (1 - p), 0.0) / trials)


def fit_exponent(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Slope of the least-squares line through (log x, log y)"""
    slope, _ = np.polyfit(np.log(np.asarray(xs, dtype=float)), np.log(np.asarray(ys, dtype=float)), 1)
    return float(slope)
