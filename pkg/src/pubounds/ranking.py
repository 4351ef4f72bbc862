"""Rankings, label partitions and rank CDFs.

A ranking orders examples by descending classifier score. Every quantity in
this package is derived from per-rank counts of the three label classes
(known positive, known negative, unlabeled), so the ranking precomputes
cumulative counts and all queries are O(1) or vectorized.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import IntEnum
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import (
    EmptyInput,
    EmptySet,
    InvalidScore,
    NoNegatives,
    RankOutOfRange,
)


class Label(IntEnum):
    """Label status of a test example. Integer values match the file format."""

    KNOWN_POSITIVE = 1
    KNOWN_NEGATIVE = -1
    UNLABELED = 0


# A selector is either a label class or an explicit set of source indices.
Selector = Union[Label, Iterable[int]]


@dataclass(frozen=True)
class Example:
    """One scored test example.

    ``source_index`` is the position in the original input; it breaks score
    ties deterministically and identifies the example across models.
    """

    score: float
    label: Label
    source_index: int


@dataclass(eq=False)
class Ranking:
    """Examples sorted by descending score; ties by ascending source index.

    Ranks are 1-based: the example at position ``i`` of the sorted arrays has
    rank ``i + 1``. Rank 0 is the implicit "predict nothing positive" cutoff.
    Instances are immutable after construction (arrays are write-protected)
    and safe to share across threads.

    Attributes
    ----------
    scores, labels, source_index : arrays in rank order (labels hold the
        integer values of :class:`Label`).
    cum_known_pos, cum_known_neg, cum_unlabeled : length n+1 arrays;
        entry r is the count of that class at ranks 1..r.
    tie_count : number of examples sharing their score with at least one
        other example. Curve points within a tie block depend on the
        documented tie rule, so a nonzero value is worth surfacing.
    """

    scores: np.ndarray
    labels: np.ndarray
    source_index: np.ndarray
    n: int
    n_pos_labeled: int
    n_neg_labeled: int
    n_unlabeled: int
    tie_count: int
    cum_known_pos: np.ndarray
    cum_known_neg: np.ndarray
    cum_unlabeled: np.ndarray

    def __post_init__(self):
        for arr in (
            self.scores,
            self.labels,
            self.source_index,
            self.cum_known_pos,
            self.cum_known_neg,
            self.cum_unlabeled,
        ):
            arr.setflags(write=False)

    # -- queries ----------------------------------------------------------

    def example_at(self, rank: int) -> Example:
        """Return the example occupying ``rank`` (1-based)."""
        if not 1 <= rank <= self.n:
            raise RankOutOfRange(f"rank {rank} outside 1..{self.n}")
        i = rank - 1
        return Example(
            score=float(self.scores[i]),
            label=Label(int(self.labels[i])),
            source_index=int(self.source_index[i]),
        )

    @property
    def examples(self) -> tuple[Example, ...]:
        return tuple(self.example_at(r) for r in range(1, self.n + 1))

    def member_mask(self, selector: Selector) -> np.ndarray:
        """Boolean mask over rank positions for a label class or index set."""
        if isinstance(selector, Label):
            return self.labels == int(selector)
        wanted = np.asarray(sorted(set(int(i) for i in selector)), dtype=np.int64)
        return np.isin(self.source_index, wanted)

    def ranks_of(self, selector: Selector) -> np.ndarray:
        """Ascending ranks (1-based) of the selected examples."""
        return np.flatnonzero(self.member_mask(selector)) + 1

    def cumulative_counts(self, selector: Selector) -> np.ndarray:
        """Length n+1 array: entry r = selected examples at ranks <= r."""
        if isinstance(selector, Label):
            return {
                Label.KNOWN_POSITIVE: self.cum_known_pos,
                Label.KNOWN_NEGATIVE: self.cum_known_neg,
                Label.UNLABELED: self.cum_unlabeled,
            }[selector]
        counts = np.zeros(self.n + 1, dtype=np.int64)
        np.cumsum(self.member_mask(selector), out=counts[1:])
        return counts


def _assemble(scores: np.ndarray, labels: np.ndarray, source_index: np.ndarray) -> Ranking:
    """Build a Ranking from arrays already in rank order."""
    n = scores.shape[0]
    pos = labels == int(Label.KNOWN_POSITIVE)
    neg = labels == int(Label.KNOWN_NEGATIVE)
    unl = labels == int(Label.UNLABELED)

    def cum(mask: np.ndarray) -> np.ndarray:
        out = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(mask, out=out[1:])
        return out

    _, tie_sizes = np.unique(scores, return_counts=True)
    tie_count = int(np.sum(tie_sizes[tie_sizes > 1]))
    return Ranking(
        scores=scores,
        labels=labels,
        source_index=source_index,
        n=n,
        n_pos_labeled=int(pos.sum()),
        n_neg_labeled=int(neg.sum()),
        n_unlabeled=int(unl.sum()),
        tie_count=tie_count,
        cum_known_pos=cum(pos),
        cum_known_neg=cum(neg),
        cum_unlabeled=cum(unl),
    )


def ranking_from_arrays(
    scores: Sequence[float] | np.ndarray,
    labels: Sequence[int] | np.ndarray,
    source_index: Sequence[int] | np.ndarray | None = None,
) -> Ranking:
    """Build a ranking from parallel arrays (fast path for large inputs).

    ``labels`` uses the integer encoding of :class:`Label` (1, -1, 0).
    ``source_index`` defaults to input order.
    """
    scores = np.asarray(scores, dtype=np.float64).copy()
    if scores.size == 0:
        raise EmptyInput("at least one example is required")
    finite = np.isfinite(scores)
    if not finite.all():
        bad = int(np.flatnonzero(~finite)[0])
        src = bad if source_index is None else int(np.asarray(source_index)[bad])
        raise InvalidScore(src, float(scores[bad]))
    labels = np.asarray(labels, dtype=np.int8).copy()
    if labels.shape != scores.shape:
        raise EmptyInput("scores and labels must have equal length")
    valid = {int(v) for v in Label}
    present = set(np.unique(labels).tolist())
    if not present <= valid:
        raise ValueError(f"labels must be in {sorted(valid)}, got {sorted(present - valid)}")
    if source_index is None:
        source_index = np.arange(scores.size, dtype=np.int64)
    else:
        source_index = np.asarray(source_index, dtype=np.int64).copy()
    # Descending score, ascending source index within ties.
    order = np.lexsort((source_index, -scores))
    return _assemble(scores[order], labels[order], source_index[order])


def build_ranking(examples: Sequence[Example]) -> Ranking:
    """Sort examples into a :class:`Ranking`.

    Raises ``EmptyInput`` for an empty sequence and ``InvalidScore`` for a
    NaN/infinite score.
    """
    if len(examples) == 0:
        raise EmptyInput("at least one example is required")
    scores = np.array([e.score for e in examples], dtype=np.float64)
    labels = np.array([int(e.label) for e in examples], dtype=np.int8)
    source = np.array([e.source_index for e in examples], dtype=np.int64)
    return ranking_from_arrays(scores, labels, source)


def flip_ranking(ranking: Ranking) -> Ranking:
    """Mirror a ranking for evaluation driven by the known negatives.

    The order is reversed (rank r maps to rank n - r + 1), known positives
    and known negatives swap roles, and scores are negated so the result is
    again sorted by descending score. Tie blocks mirror exactly because the
    sorted sequence is reversed rather than re-sorted.
    """
    return _assemble(
        -ranking.scores[::-1].copy(),
        (-ranking.labels[::-1]).astype(np.int8),
        ranking.source_index[::-1].copy(),
    )


@dataclass(eq=False)
class RankCdf:
    """Empirical CDF of a set's ranks within the overall ranking.

    ``counts[r]`` is the exact number of set members at ranks 1..r
    (``counts[0] == 0``); ``values`` divides by the set size, so every value
    is an integer multiple of ``1/set_size``.
    """

    counts: np.ndarray
    set_size: int

    def __post_init__(self):
        self.counts.setflags(write=False)

    @property
    def values(self) -> np.ndarray:
        return self.counts / self.set_size

    def value_at(self, rank: int) -> float:
        return float(self.counts[rank]) / self.set_size


def rank_cdf(ranking: Ranking, selector: Selector) -> RankCdf:
    """Rank CDF of the selected set; equals TPR at each cutoff rank."""
    counts = ranking.cumulative_counts(selector)
    size = int(counts[-1])
    if size == 0:
        raise EmptySet(f"selector {selector!r} matched no examples")
    return RankCdf(counts=counts.copy(), set_size=size)


def top_count(ranking: Ranking, selector: Selector, r: int) -> int:
    """Number of selected examples at ranks <= r (r = 0 gives 0)."""
    if not 0 <= r <= ranking.n:
        raise RankOutOfRange(f"rank {r} outside 0..{ranking.n}")
    return int(ranking.cumulative_counts(selector)[r])


def bottom_count(ranking: Ranking, selector: Selector, r: int) -> int:
    """Number of selected examples at ranks > r."""
    counts = ranking.cumulative_counts(selector)
    if not 0 <= r <= ranking.n:
        raise RankOutOfRange(f"rank {r} outside 0..{ranking.n}")
    return int(counts[-1] - counts[r])


def fpr_from_tpr(ranking: Ranking, pos_size: int, tpr_at_r: float, r: int) -> float:
    """FPR at rank r implied by the TPR of a positive set of known size.

    With ``tp = tpr * pos_size`` true positives among the top r, the
    remaining ``r - tp`` predictions are false positives out of
    ``n - pos_size`` negatives. ``tpr_at_r`` must be a multiple of
    ``1/pos_size``; the true-positive count is recovered by rounding so the
    result is an exact ratio of integers.
    """
    if pos_size >= ranking.n:
        raise NoNegatives(f"positive set of size {pos_size} leaves no negatives in n={ranking.n}")
    if not 0 <= r <= ranking.n:
        raise RankOutOfRange(f"rank {r} outside 0..{ranking.n}")
    if not 0.0 <= tpr_at_r <= 1.0:
        raise ValueError(f"tpr_at_r must be in [0, 1], got {tpr_at_r}")
    tp = int(round(tpr_at_r * pos_size))
    if tp > r:
        raise ValueError(f"tpr {tpr_at_r} at rank {r} implies {tp} true positives > r")
    return (r - tp) / (ranking.n - pos_size)


def tpr_at(ranking: Ranking, selector: Selector, r: int) -> float:
    """TPR of the selected set at rank r (its rank CDF at r)."""
    counts = ranking.cumulative_counts(selector)
    size = int(counts[-1])
    if size == 0:
        raise EmptySet("TPR undefined for an empty set")
    return int(counts[r]) / size


def fpr_at(ranking: Ranking, selector: Selector, r: int) -> float:
    """FPR at rank r treating the selected set as the positives."""
    counts = ranking.cumulative_counts(selector)
    size = int(counts[-1])
    if size >= ranking.n:
        raise NoNegatives("no negatives left")
    return (r - int(counts[r])) / (ranking.n - size)


def is_finite_score(value: float) -> bool:
    return math.isfinite(value)
