"""Confidence bands on the rank CDF of latent positives.

The rank distribution of latent positives is assumed to match that of the
known positives (labels assigned completely at random), so a bootstrap band
around the known positives' empirical rank CDF also covers the latent CDF.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InsufficientPositives, InvalidLevel
from .ranking import Label, Ranking, rank_cdf


@dataclass(eq=False)
class CdfBand:
    """Pair of rank-indexed bounds on a rank CDF.

    ``lower`` and ``upper`` are arrays of length n+1 indexed by rank
    (entry 0 is the rank-0 cutoff). Invariants, checked at construction:
    0 <= lower <= upper <= 1 pointwise, both nondecreasing, lower[0] == 0
    and upper[n] == 1.

    ``confidence_level``, ``resamples`` and ``seed`` record how a bootstrap
    band was built; they are None for bands from other sources (degenerate
    or user-supplied).
    """

    lower: np.ndarray
    upper: np.ndarray
    confidence_level: float | None = None
    resamples: int | None = None
    seed: int | None = None

    def __post_init__(self):
        self.lower = np.asarray(self.lower, dtype=np.float64)
        self.upper = np.asarray(self.upper, dtype=np.float64)
        if self.lower.shape != self.upper.shape or self.lower.ndim != 1:
            raise ValueError("lower and upper must be 1-d arrays of equal length")
        if self.lower.shape[0] < 2:
            raise ValueError("a band needs at least ranks 0 and 1")
        if np.any(self.lower > self.upper):
            raise ValueError("band lower bound exceeds upper bound somewhere")
        if np.any(self.lower < 0) or np.any(self.upper > 1):
            raise ValueError("band values must lie in [0, 1]")
        if np.any(np.diff(self.lower) < 0) or np.any(np.diff(self.upper) < 0):
            raise ValueError("band bounds must be nondecreasing in rank")
        if self.lower[0] != 0.0:
            raise ValueError("lower bound at rank 0 must be 0")
        if self.upper[-1] != 1.0:
            raise ValueError("upper bound at rank n must be 1")
        self.lower.setflags(write=False)
        self.upper.setflags(write=False)

    @property
    def n(self) -> int:
        return self.lower.shape[0] - 1


def bootstrap_band(
    ranking: Ranking,
    resamples: int = 2000,
    confidence_level: float = 0.95,
    seed: int = 0,
) -> CdfBand:
    """Pointwise percentile bootstrap band on the known positives' rank CDF.

    Each resample draws ``|P_L|`` ranks with replacement from the known
    positives' ranks and recomputes the empirical CDF over ranks 0..n. The
    band takes, at every rank, the alpha/2 and 1 - alpha/2 quantiles across
    resamples (numpy's default quantile: linear interpolation between order
    statistics, ``q_k = lo + (hi - lo) * frac`` at position
    ``(m - 1) * q``). The raw band is then repaired to be monotone with a
    running maximum (lower) and a right-to-left running minimum (upper);
    float interpolation is the only thing the repair guards against, so it
    never crosses the empirical CDF.

    Resample ``i`` draws from its own generator seeded by ``(seed, i)``, so
    the result does not depend on execution order and is reproducible
    bit-for-bit.
    """
    if not 0.0 < confidence_level < 1.0:
        raise InvalidLevel(f"confidence level must be in (0, 1), got {confidence_level}")
    if resamples < 1:
        raise ValueError(f"resamples must be >= 1, got {resamples}")
    pos_ranks = ranking.ranks_of(Label.KNOWN_POSITIVE)
    k = pos_ranks.shape[0]
    if k < 2:
        raise InsufficientPositives(f"bootstrap needs at least 2 known positives, got {k}")
    n = ranking.n

    cdfs = np.empty((resamples, n + 1), dtype=np.float64)
    for i in range(resamples):
        rng = np.random.default_rng([seed, i])
        draw = pos_ranks[rng.integers(0, k, size=k)]
        counts = np.bincount(draw, minlength=n + 1).cumsum()
        cdfs[i] = counts / k

    alpha = 1.0 - confidence_level
    lower = np.quantile(cdfs, alpha / 2.0, axis=0)
    upper = np.quantile(cdfs, 1.0 - alpha / 2.0, axis=0)
    lower = np.maximum.accumulate(lower)
    upper = np.minimum.accumulate(upper[::-1])[::-1]
    np.clip(lower, 0.0, 1.0, out=lower)
    np.clip(upper, 0.0, 1.0, out=upper)
    lower[0] = 0.0
    upper[-1] = 1.0
    return CdfBand(
        lower=lower,
        upper=upper,
        confidence_level=confidence_level,
        resamples=resamples,
        seed=seed,
    )


def degenerate_band(ranking: Ranking) -> CdfBand:
    """Zero-width band equal to the known positives' empirical rank CDF.

    Useful to study the no-uncertainty limit: all band-induced slack in the
    bounds vanishes and only the surrogate-count arithmetic remains.
    """
    if ranking.n_pos_labeled < 1:
        raise InsufficientPositives("degenerate band needs at least 1 known positive")
    values = rank_cdf(ranking, Label.KNOWN_POSITIVE).values
    return CdfBand(lower=values.copy(), upper=values.copy())
