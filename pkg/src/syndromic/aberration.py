"""Change-point scoring on count series.

The detector compares today's count against a short trailing baseline:

    S_t = max(0, (C_t - (mu_t + k * sigma_t)) / sigma_t)

with mu_t and sigma_t the sample mean and standard deviation over the
history window (two weeks by default). Scores map onto five alert bands
and a coarse trend direction (up, down, sideways) for display.
"""
from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from datetime import datetime
from typing import Sequence

import numpy as np

TRENDS = ("up", "down", "sideways")

DEFAULT_K = 1.0
DEFAULT_HISTORY_DAYS = 14
DEFAULT_SIGMA_FLOOR = 0.5
DEFAULT_BAND_THRESHOLDS = (1.0, 2.0, 3.0, 4.0)
TREND_DELTA = 0.25


@dataclass(frozen=True)
class AberrationConfig:
    k: float = DEFAULT_K
    history_days: int = DEFAULT_HISTORY_DAYS
    sigma_floor: float = DEFAULT_SIGMA_FLOOR
    band_thresholds: tuple[float, ...] = DEFAULT_BAND_THRESHOLDS
    stratify_by_hour: bool = True

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("k must be non-negative")
        if self.history_days < 2:
            raise ValueError("history window must cover at least 2 days")
        if self.sigma_floor <= 0:
            raise ValueError("sigma floor must be positive")
        if list(self.band_thresholds) != sorted(self.band_thresholds) or not self.band_thresholds:
            raise ValueError("band thresholds must be non-empty and ascending")


@dataclass(frozen=True)
class BaselineWindow:
    """Trailing counts the current observation is judged against."""

    counts: tuple[float, ...]

    def __post_init__(self):
        if len(self.counts) < 2:
            raise ValueError("baseline window needs at least 2 counts")

    @property
    def mean(self) -> float:
        return float(np.mean(self.counts))

    @property
    def std(self) -> float:
        """Sample (n-1) standard deviation."""
        return float(np.std(self.counts, ddof=1))


@dataclass(frozen=True)
class AlertState:
    score: float
    band: int
    trend: str
    computed_at: datetime
    city: str = ""
    syndrome: str = ""
    count: float = 0.0

    def __post_init__(self):
        if self.score < 0 or not np.isfinite(self.score):
            raise ValueError("score must be finite and non-negative")
        if not 0 <= self.band <= 4:
            raise ValueError("band out of range")
        if self.trend not in TRENDS:
            raise ValueError(f"unknown trend {self.trend!r}")


def c2_score(
    history: BaselineWindow | Sequence[float],
    c_t: float,
    k: float = DEFAULT_K,
    sigma_floor: float = DEFAULT_SIGMA_FLOOR,
) -> float:
    """max(0, (C_t - (mu + k*sigma)) / sigma) over the history window.

    sigma is the sample standard deviation, floored at sigma_floor so
    quiet series (constant history) cannot divide by zero.
    """
    if not isinstance(history, BaselineWindow):
        history = BaselineWindow(counts=tuple(float(c) for c in history))
    if k < 0:
        raise ValueError("k must be non-negative")
    mu = history.mean
    sigma = history.std
    if sigma < sigma_floor:
        sigma = sigma_floor
    return max(0.0, (c_t - (mu + k * sigma)) / sigma)


def band(score: float, thresholds: Sequence[float] = DEFAULT_BAND_THRESHOLDS) -> int:
    """Map a score onto alert bands 0..len(thresholds).

    With the default thresholds [1, 2, 3, 4]: band 0 for S < 1, band b
    for S in [b, b+1), band 4 for S >= 4.
    """
    if score < 0:
        raise ValueError("score must be non-negative")
    return bisect_right(list(thresholds), score)


def trend(latest: float, previous: float | None) -> str:
    """Direction of score movement; sideways when no previous score exists
    or the change stays within +/-0.25."""
    if previous is None:
        return "sideways"
    delta = latest - previous
    if delta > TREND_DELTA:
        return "up"
    if delta < -TREND_DELTA:
        return "down"
    return "sideways"
