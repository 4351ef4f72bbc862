"""Per-rank contingency tables bounding FPR under partial labels.

Given a cutoff rank r, the unlabeled set contributes unknown true labels.
Treating a worst-case (or best-case) number of unlabeled examples above the
cutoff as "surrogate positives" yields, per rank, the contingency table with
the greatest lower bound on FPR and the one with the least upper bound. Only
set sizes enter the computation; no explicit partition of the unlabeled set
is ever materialized.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .band import CdfBand
from .errors import InfeasibleBeta, InternalInconsistency
from .ranking import Ranking

# Slack used when turning real-valued products (CDF bound times a count)
# into integer counts. Products that are mathematically integral can land a
# few ulp off; the slack must dominate that rounding noise while staying far
# below the 1/count resolution of genuine non-integers.
TOLERANCE = 1e-9


def ceil_with_slack(x: float) -> int:
    """Ceiling that forgives float noise just above an integer."""
    return math.ceil(x - TOLERANCE * max(1.0, abs(x)))


def floor_with_slack(x: float) -> int:
    """Floor that forgives float noise just below an integer."""
    return math.floor(x + TOLERANCE * max(1.0, abs(x)))


def _ceil_with_slack_vec(x: np.ndarray) -> np.ndarray:
    return np.ceil(x - TOLERANCE * np.maximum(1.0, np.abs(x))).astype(np.int64)


def _floor_with_slack_vec(x: np.ndarray) -> np.ndarray:
    return np.floor(x + TOLERANCE * np.maximum(1.0, np.abs(x))).astype(np.int64)


@dataclass(frozen=True)
class BetaSpec:
    """Estimate of the fraction of latent positives in the unlabeled set.

    ``beta_hat`` is the point estimate; ``beta_lo``/``beta_up`` optionally
    bracket it for interval-based bounds.
    """

    beta_hat: float
    beta_lo: float | None = None
    beta_up: float | None = None

    def __post_init__(self):
        if not 0.0 <= self.beta_hat <= 1.0:
            raise InfeasibleBeta(f"beta_hat must be in [0, 1], got {self.beta_hat}")
        if (self.beta_lo is None) != (self.beta_up is None):
            raise InfeasibleBeta("beta_lo and beta_up must be given together")
        if self.beta_lo is not None:
            if not 0.0 <= self.beta_lo <= self.beta_hat <= self.beta_up <= 1.0:
                raise InfeasibleBeta(
                    f"need 0 <= beta_lo <= beta_hat <= beta_up <= 1, got "
                    f"({self.beta_lo}, {self.beta_hat}, {self.beta_up})"
                )

    def surrogate_count(self, u_size: int) -> int:
        """Number of unlabeled examples treated as latent positives.

        Half-up rounding of ``beta_hat * u_size``; documented once here and
        used consistently everywhere.
        """
        count = math.floor(self.beta_hat * u_size + 0.5)
        if count > u_size:
            raise InfeasibleBeta(f"surrogate count {count} exceeds |U| = {u_size}")
        return count


@dataclass(frozen=True)
class ContingencyTable:
    """Nonnegative TP/FP/FN/TN counts at one cutoff rank."""

    tp: int
    fp: int
    fn: int
    tn: int

    def __post_init__(self):
        if min(self.tp, self.fp, self.fn, self.tn) < 0:
            raise InternalInconsistency(f"negative cell in {self!r}")

    @property
    def positives(self) -> int:
        return self.tp + self.fn

    @property
    def negatives(self) -> int:
        return self.fp + self.tn

    @property
    def predicted_positive(self) -> int:
        return self.tp + self.fp

    @property
    def tpr(self) -> float:
        return self.tp / self.positives if self.positives else math.nan

    @property
    def fpr(self) -> float:
        return self.fp / self.negatives if self.negatives else math.nan

    @property
    def precision(self) -> float:
        return self.tp / self.predicted_positive if self.predicted_positive else math.nan


def theta_upper(t_ub: float, beta_hat: float, u_size: int) -> int:
    """Minimum surrogate positives above the cutoff to reach a CDF value.

    ``ceil(t_ub * beta_hat * u_size)``: rounding up guarantees the surrogate
    set's rank CDF is at least ``t_ub`` whenever that is feasible.
    """
    return max(0, ceil_with_slack(t_ub * beta_hat * u_size))


def theta_lower(t_lb: float, beta_hat: float, u_size: int) -> int:
    """Maximum surrogate positives above the cutoff to stay below a CDF value.

    ``floor(t_lb * beta_hat * u_size)``, the mirror image of
    :func:`theta_upper`.
    """
    return max(0, floor_with_slack(t_lb * beta_hat * u_size))


def surrogate_top_count(theta: int, p_star_size: int, top_u: int, bottom_u: int) -> int:
    """Realizable number of surrogate positives above the cutoff.

    Clamps ``theta`` into what the unlabeled partition allows: at most
    ``top_u`` can sit above the cutoff, and whatever does not fit below
    (capacity ``bottom_u``) is forced above. The result always lies in
    ``[max(0, p_star_size - bottom_u), min(top_u, p_star_size)]``.
    """
    if p_star_size > top_u + bottom_u:
        raise InfeasibleBeta(
            f"{p_star_size} surrogate positives cannot fit in |U| = {top_u + bottom_u}"
        )
    theta = min(max(theta, 0), p_star_size)
    if p_star_size - theta <= bottom_u:
        return min(top_u, theta)
    return p_star_size - bottom_u


def unlabeled_partial_table(
    r: int, top_u: int, u_size: int, p_star_size: int, top_p_star: int
) -> ContingencyTable:
    """Contingency-table block contributed by the unlabeled examples."""
    if top_p_star > min(top_u, p_star_size):
        raise InternalInconsistency(
            f"top_p_star {top_p_star} exceeds min(top_u={top_u}, p_star={p_star_size})"
        )
    tp = top_p_star
    fn = p_star_size - top_p_star
    fp = top_u - top_p_star
    tn = (u_size - p_star_size) - fp
    return ContingencyTable(tp=tp, fp=fp, fn=fn, tn=tn)


@dataclass(eq=False)
class TableColumns:
    """Contingency tables for all ranks 0..n as parallel count arrays."""

    tp: np.ndarray
    fp: np.ndarray
    fn: np.ndarray
    tn: np.ndarray

    def __post_init__(self):
        if min(self.tp.min(), self.fp.min(), self.fn.min(), self.tn.min()) < 0:
            raise InternalInconsistency("negative contingency-table cell")
        for arr in (self.tp, self.fp, self.fn, self.tn):
            arr.setflags(write=False)

    @property
    def positives(self) -> int:
        return int(self.tp[0] + self.fn[0])

    @property
    def negatives(self) -> int:
        return int(self.fp[0] + self.tn[0])

    def tpr(self) -> np.ndarray:
        return self.tp / max(self.positives, 1)

    def fpr(self) -> np.ndarray:
        return self.fp / max(self.negatives, 1)

    def precision(self) -> np.ndarray:
        """Precision per rank; NaN where nothing is predicted positive."""
        predicted = self.tp + self.fp
        with np.errstate(invalid="ignore"):
            return np.where(predicted > 0, self.tp / np.maximum(predicted, 1), np.nan)

    def at(self, r: int) -> ContingencyTable:
        return ContingencyTable(
            tp=int(self.tp[r]), fp=int(self.fp[r]), fn=int(self.fn[r]), tn=int(self.tn[r])
        )


@dataclass(eq=False)
class BoundTables:
    """Per-rank bound tables for ranks 0..n.

    ``fpr_lower`` realizes the greatest lower bound on FPR at each rank (its
    points dominate in ROC space); ``fpr_upper`` realizes the least upper
    bound. ``fallback_lower[r]`` marks ranks where the target CDF value was
    unreachable above the cutoff and every unlabeled example there was taken
    as surrogate positive; ``fallback_upper[r]`` marks the mirror case below
    the cutoff. Bounds degrade to the trivial extreme at flagged ranks.
    """

    fpr_lower: TableColumns
    fpr_upper: TableColumns
    fallback_lower: np.ndarray
    fallback_upper: np.ndarray
    p_star: int
    n: int
    u_size: int
    n_pos_labeled: int
    n_neg_labeled: int

    def __post_init__(self):
        self.fallback_lower.setflags(write=False)
        self.fallback_upper.setflags(write=False)

    @property
    def positives_total(self) -> int:
        return self.n_pos_labeled + self.p_star

    @property
    def negatives_total(self) -> int:
        return self.n - self.positives_total

    def table_fpr_lower(self, r: int) -> ContingencyTable:
        return self.fpr_lower.at(r)

    def table_fpr_upper(self, r: int) -> ContingencyTable:
        return self.fpr_upper.at(r)


def _family(
    ranking: Ranking,
    p_star: int,
    theta: np.ndarray,
    top_u: np.ndarray,
    bottom_u: np.ndarray,
) -> TableColumns:
    """Assemble labeled counts plus the surrogate split into full tables."""
    top_star = np.where(
        p_star - theta <= bottom_u,
        np.minimum(top_u, theta),
        p_star - bottom_u,
    )
    cum_pos = ranking.cum_known_pos
    cum_neg = ranking.cum_known_neg
    u = ranking.n_unlabeled
    tp = cum_pos + top_star
    fp = cum_neg + (top_u - top_star)
    fn = (ranking.n_pos_labeled - cum_pos) + (p_star - top_star)
    tn = (ranking.n_neg_labeled - cum_neg) + ((u - p_star) - (top_u - top_star))
    cols = TableColumns(tp=tp, fp=fp, fn=fn, tn=tn)
    if not np.array_equal(cols.tp + cols.fp, np.arange(ranking.n + 1)):
        raise InternalInconsistency("predicted positives do not equal the cutoff rank")
    return cols


def bound_tables(ranking: Ranking, band: CdfBand, beta: BetaSpec) -> BoundTables:
    """Greatest-lower and least-upper FPR bound tables at every rank.

    The surrogate count above each cutoff comes from the band: the ceiling
    of ``upper * p_star`` for the FPR-lower family and the floor of
    ``lower * p_star`` for the FPR-upper family, both clamped to what the
    unlabeled partition can realize. The ceiling/floor is taken against the
    realized integer surrogate total ``p_star``, which is what the
    feasibility constraint is actually stated over; with an integral
    ``beta_hat * u_size`` this matches applying the rounding to
    ``beta_hat * u_size`` directly.
    """
    if band.n != ranking.n:
        raise ValueError(f"band covers {band.n} ranks but ranking has {ranking.n}")
    u = ranking.n_unlabeled
    p_star = beta.surrogate_count(u)
    top_u = ranking.cum_unlabeled
    bottom_u = u - top_u

    theta_up = np.minimum(_ceil_with_slack_vec(band.upper * p_star), p_star)
    np.maximum(theta_up, 0, out=theta_up)
    theta_lo = np.clip(_floor_with_slack_vec(band.lower * p_star), 0, p_star)

    return BoundTables(
        fpr_lower=_family(ranking, p_star, theta_up, top_u, bottom_u),
        fpr_upper=_family(ranking, p_star, theta_lo, top_u, bottom_u),
        fallback_lower=theta_up > top_u,
        fallback_upper=(p_star - theta_lo) > bottom_u,
        p_star=p_star,
        n=ranking.n,
        u_size=u,
        n_pos_labeled=ranking.n_pos_labeled,
        n_neg_labeled=ranking.n_neg_labeled,
    )


def classical_tables(ranking: Ranking, positive_selector) -> TableColumns:
    """Fully-labeled contingency tables treating one set as the positives."""
    cum_pos = ranking.cumulative_counts(positive_selector)
    p = int(cum_pos[-1])
    ranks = np.arange(ranking.n + 1)
    tp = cum_pos.astype(np.int64)
    fp = ranks - tp
    return TableColumns(tp=tp, fp=fp, fn=p - tp, tn=(ranking.n - p) - fp)
