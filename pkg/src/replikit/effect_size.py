"""Standardized mean difference (Cohen's d): point estimate, standard error,
confidence intervals, and sign/magnitude classification."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import DegenerateSampleError, DomainError
from .stats_core import SampleSummary, normal_quantile


@dataclass(frozen=True)
class EffectSize:
    """Standardized mean difference with its standard error and arm sizes."""

    d: float
    se: float
    n1: int
    n2: int

    def __post_init__(self) -> None:
        if not math.isfinite(self.d):
            raise DomainError(f"d must be finite, got {self.d}")
        if not (math.isfinite(self.se) and self.se > 0):
            raise DomainError(f"se must be finite and > 0, got {self.se}")
        if self.n1 < 2 or self.n2 < 2:
            raise DomainError(f"arm sizes must be >= 2, got n1={self.n1}, n2={self.n2}")


class EffectCategory(Enum):
    """Seven sign/magnitude bands partitioning the real line."""

    LARGE_NEG = "large_neg"
    MED_NEG = "med_neg"
    SMALL_NEG = "small_neg"
    NONE = "none"
    SMALL_POS = "small_pos"
    MED_POS = "med_pos"
    LARGE_POS = "large_pos"


# Cohen (1992) thresholds; a boundary value belongs to the inner band.
_SMALL, _MED, _LARGE = 0.2, 0.5, 0.8

_TEXT_LABELS = {
    EffectCategory.LARGE_NEG: "Large-",
    EffectCategory.MED_NEG: "Med-",
    EffectCategory.SMALL_NEG: "Small-",
    EffectCategory.NONE: "None",
    EffectCategory.SMALL_POS: "Small+",
    EffectCategory.MED_POS: "Med+",
    EffectCategory.LARGE_POS: "Large+",
}


def category_label(cat: EffectCategory) -> str:
    """Short human-readable label for a category."""
    return _TEXT_LABELS[cat]


@dataclass(frozen=True)
class Interval:
    """A (lower, upper) range at a given coverage level."""

    lower: float
    upper: float
    level: float

    def __post_init__(self) -> None:
        if not self.lower <= self.upper:
            raise DomainError(f"interval requires lower <= upper, got [{self.lower}, {self.upper}]")
        if not 0.0 < self.level < 1.0:
            raise DomainError(f"level must be in (0, 1), got {self.level}")

    @property
    def width(self) -> float:
        return self.upper - self.lower

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.lower + self.upper)

    def contains(self, x: float) -> bool:
        return self.lower <= x <= self.upper


def pooled_sd(arm1: SampleSummary, arm2: SampleSummary) -> float:
    """Degrees-of-freedom-weighted combination of the two arms' sds."""
    df = arm1.n + arm2.n - 2
    return math.sqrt(((arm1.n - 1) * arm1.sd**2 + (arm2.n - 1) * arm2.sd**2) / df)


def standard_error_d(d: float, n1: int, n2: int) -> float:
    """Large-sample standard error of d: sqrt((n1+n2)/(n1*n2) + d^2/(2(n1+n2)))."""
    if n1 < 2 or n2 < 2:
        raise DomainError(f"arm sizes must be >= 2, got n1={n1}, n2={n2}")
    n = n1 + n2
    return math.sqrt(n / (n1 * n2) + d * d / (2.0 * n))


def hedges_correction(df: int) -> float:
    """Exact small-sample bias correction factor J for df = n1 + n2 - 2."""
    if df < 2:
        raise DomainError(f"df must be >= 2, got {df}")
    return math.exp(math.lgamma(df / 2.0) - math.lgamma((df - 1) / 2.0)) / math.sqrt(df / 2.0)


def cohens_d(arm1: SampleSummary, arm2: SampleSummary, hedges: bool = False) -> EffectSize:
    """Standardized mean difference between two arms.

    d = (mean1 - mean2) / pooled_sd, with the standard error from
    ``standard_error_d``. With ``hedges=True`` the exact small-sample
    correction is applied to both d and its se (off by default).
    """
    sp = pooled_sd(arm1, arm2)
    if sp == 0.0:
        raise DegenerateSampleError("pooled standard deviation is zero; d undefined")
    d = (arm1.mean - arm2.mean) / sp
    se = standard_error_d(d, arm1.n, arm2.n)
    if hedges:
        j = hedges_correction(arm1.n + arm2.n - 2)
        d, se = j * d, j * se
    return EffectSize(d=d, se=se, n1=arm1.n, n2=arm2.n)


def classify(d: float) -> EffectCategory:
    """Bin d into one of the seven sign/magnitude categories."""
    if not math.isfinite(d):
        raise DomainError(f"d must be finite, got {d}")
    mag = abs(d)
    if mag <= _SMALL:
        return EffectCategory.NONE
    if mag <= _MED:
        return EffectCategory.SMALL_POS if d > 0 else EffectCategory.SMALL_NEG
    if mag <= _LARGE:
        return EffectCategory.MED_POS if d > 0 else EffectCategory.MED_NEG
    return EffectCategory.LARGE_POS if d > 0 else EffectCategory.LARGE_NEG


def confidence_interval(effect: EffectSize, level: float = 0.95) -> Interval:
    """Normal-quantile confidence interval d +/- z * se, symmetric about d."""
    if not 0.0 < level < 1.0:
        raise DomainError(f"level must be in (0, 1), got {level}")
    z = normal_quantile((1.0 + level) / 2.0)
    return Interval(effect.d - z * effect.se, effect.d + z * effect.se, level)
