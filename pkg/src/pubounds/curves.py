"""ROC and PR bound curves and their AUC intervals."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateCurve
from .tables import BoundTables, TableColumns


@dataclass(eq=False)
class BoundCurve:
    """Lower and upper bound curves in one space.

    Points are per rank, ordered by rank (one table, one point), so each
    point maps back to its contingency table. ``space`` is "roc"
    (x = FPR, y = TPR) or "pr" (x = recall, y = precision).
    """

    space: str
    lower_points: np.ndarray
    upper_points: np.ndarray
    auc_lower: float
    auc_upper: float

    def __post_init__(self):
        self.lower_points.setflags(write=False)
        self.upper_points.setflags(write=False)


def _trapezoid(y: np.ndarray, x: np.ndarray) -> float:
    # np.trapezoid replaced np.trapz in numpy 2.0.
    trap = getattr(np, "trapezoid", None) or np.trapz
    return float(trap(y, x))


def _roc_points(cols: TableColumns) -> np.ndarray:
    if cols.positives == 0 or cols.negatives == 0:
        raise DegenerateCurve(
            f"ROC undefined with {cols.positives} positives and {cols.negatives} negatives"
        )
    return np.column_stack((cols.fpr(), cols.tpr()))


def _pr_points(cols: TableColumns) -> np.ndarray:
    if cols.positives == 0:
        raise DegenerateCurve("PR curve undefined without positives")
    n = cols.tp.shape[0] - 1
    ranks = np.arange(1, n + 1, dtype=np.float64)
    recall = cols.tp[1:] / cols.positives
    precision = cols.tp[1:] / ranks
    # Precision at rank 0 is 0/0; start the curve at recall 0 with the
    # precision of the first cutoff.
    points = np.empty((n + 1, 2), dtype=np.float64)
    points[0] = (0.0, precision[0])
    points[1:, 0] = recall
    points[1:, 1] = precision
    return points


def roc_bounds(tables: BoundTables) -> BoundCurve:
    """ROC bound curves from the two table families.

    The greatest-lower-bound-on-FPR tables produce the upper (dominating)
    curve, the least-upper-bound tables the lower curve. AUC is the
    trapezoidal rule over the per-rank points, matching straight-line
    interpolation between consecutive cutoffs.
    """
    upper = _roc_points(tables.fpr_lower)
    lower = _roc_points(tables.fpr_upper)
    return BoundCurve(
        space="roc",
        lower_points=lower,
        upper_points=upper,
        auc_lower=_trapezoid(lower[:, 1], lower[:, 0]),
        auc_upper=_trapezoid(upper[:, 1], upper[:, 0]),
    )


def pr_bounds(tables: BoundTables) -> BoundCurve:
    """PR bound curves from the same two table families.

    A point exists at every rank, so the trapezoidal rule over the per-rank
    points needs no interpolation scheme beyond connecting adjacent ranks.
    """
    upper = _pr_points(tables.fpr_lower)
    lower = _pr_points(tables.fpr_upper)
    return BoundCurve(
        space="pr",
        lower_points=lower,
        upper_points=upper,
        auc_lower=_trapezoid(lower[:, 1], lower[:, 0]),
        auc_upper=_trapezoid(upper[:, 1], upper[:, 0]),
    )


def auc_interval(curve: BoundCurve) -> tuple[float, float]:
    """(auc_lower, auc_upper) of a bound curve."""
    return (curve.auc_lower, curve.auc_upper)


def classical_roc(cols: TableColumns) -> tuple[np.ndarray, float]:
    """Single ROC curve and AUC for fully-labeled tables."""
    points = _roc_points(cols)
    return points, _trapezoid(points[:, 1], points[:, 0])


def classical_pr(cols: TableColumns) -> tuple[np.ndarray, float]:
    """Single PR curve and AUC for fully-labeled tables."""
    points = _pr_points(cols)
    return points, _trapezoid(points[:, 1], points[:, 0])
