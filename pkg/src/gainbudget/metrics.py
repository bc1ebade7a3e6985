"""Gain, cumulative gain, and threshold classification metrics.

Gain for a quantile is the number of positive instances it holds divided by
the total number of positives in the test set.  Profiles store the integer
counts and defer division to presentation, so sum-to-one checks are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .ranking import QuantilePartition, RankedList


@dataclass(frozen=True)
class GainProfile:
    """Per-quantile positive counts for one model's ranking.

    `size` is the number of ranked instances behind the profile (N).
    Gain and cumulative gain are derived views over the stored counts.
    """

    model_name: str
    per_quantile_positive: tuple[int, ...]
    positive_total: int
    size: int

    def __post_init__(self) -> None:
        if self.positive_total < 1:
            raise ValueError("gain is undefined without at least one positive instance")
        if min(self.per_quantile_positive, default=0) < 0:
            raise ValueError("negative per-quantile count")
        if sum(self.per_quantile_positive) != self.positive_total:
            raise ValueError(
                "per-quantile positives must sum to positive_total "
                f"({sum(self.per_quantile_positive)} != {self.positive_total})"
            )

    @property
    def quantile_count(self) -> int:
        return len(self.per_quantile_positive)

    @property
    def cumulative_positive_count(self) -> tuple[int, ...]:
        counts = []
        running = 0
        for c in self.per_quantile_positive:
            running += c
            counts.append(running)
        return tuple(counts)

    @property
    def gain(self) -> tuple[float, ...]:
        return tuple(c / self.positive_total for c in self.per_quantile_positive)

    @property
    def cumulative(self) -> tuple[float, ...]:
        return tuple(c / self.positive_total for c in self.cumulative_positive_count)

    @property
    def gain_exact(self) -> tuple[Fraction, ...]:
        return tuple(
            Fraction(c, self.positive_total) for c in self.per_quantile_positive
        )

    @property
    def cumulative_exact(self) -> tuple[Fraction, ...]:
        return tuple(
            Fraction(c, self.positive_total) for c in self.cumulative_positive_count
        )


@dataclass(frozen=True)
class ConfusionMatrix:
    """Counts from treating the top `cutoff_k` ranked instances as positive."""

    tp: int
    fp: int
    tn: int
    fn: int
    cutoff_k: int

    @property
    def size(self) -> int:
        return self.tp + self.fp + self.tn + self.fn

    @property
    def positive_support(self) -> int:
        return self.tp + self.fn

    @property
    def negative_support(self) -> int:
        return self.tn + self.fp


@dataclass(frozen=True)
class ClassMetrics:
    """Per-class and support-weighted precision/recall/F1 plus accuracy.

    `conventions` names the fields where a zero-denominator convention was
    applied (value forced to 0); renderers surface it as a footnote.
    """

    positive_precision: float
    positive_recall: float
    positive_f1: float
    negative_precision: float
    negative_recall: float
    negative_f1: float
    weighted_precision: float
    weighted_recall: float
    weighted_f1: float
    accuracy: float
    conventions: tuple[str, ...] = ()


def gain_profile(p: QuantilePartition) -> GainProfile:
    """Build the gain profile of a quantile partition.

    Raises ValueError when the ranking holds no positives (division by zero).
    """
    if p.ranked.positive_total < 1:
        raise ValueError(
            f"{p.ranked.dataset_name}: gain undefined, dataset has no positive instances"
        )
    return GainProfile(
        model_name=p.ranked.dataset_name,
        per_quantile_positive=p.per_quantile_positive,
        positive_total=p.ranked.positive_total,
        size=p.ranked.size,
    )


def ideal_profile(size: int, positive_total: int, quantile_count: int) -> GainProfile:
    """Profile of a perfect ranker: all positives in the top positions."""
    if not 1 <= positive_total <= size:
        raise ValueError(f"positive_total must be in 1..{size}, got {positive_total}")
    if not 1 <= quantile_count <= size:
        raise ValueError(f"quantile count must be in 1..{size}, got {quantile_count}")
    boundaries = [q * size // quantile_count for q in range(quantile_count + 1)]
    counts = tuple(
        min(boundaries[q + 1], positive_total) - min(boundaries[q], positive_total)
        for q in range(quantile_count)
    )
    return GainProfile(
        model_name="ideal",
        per_quantile_positive=counts,
        positive_total=positive_total,
        size=size,
    )


def random_baseline(quantile_count: int) -> GainProfile:
    """Uniform profile: gain 1/Q per quantile, the diagonal reference curve."""
    if quantile_count < 1:
        raise ValueError(f"quantile count must be positive, got {quantile_count}")
    return GainProfile(
        model_name="random",
        per_quantile_positive=(1,) * quantile_count,
        positive_total=quantile_count,
        size=quantile_count,
    )


def confusion_at_cutoff(r: RankedList, k: int) -> ConfusionMatrix:
    """Predict the top k instances positive, the rest negative, and tally."""
    n = r.size
    if not 0 <= k <= n:
        raise ValueError(f"cutoff must be in 0..{n}, got {k}")
    tp = sum(1 for inst in r.order[:k] if inst.positive)
    fp = k - tp
    fn = r.positive_total - tp
    tn = n - k - fn
    return ConfusionMatrix(tp=tp, fp=fp, tn=tn, fn=fn, cutoff_k=k)


def accuracy_at_cutoff(r: RankedList, k: int) -> float:
    """Fraction of correct predictions at cutoff k.

    Computed by a direct scan, independently of confusion_at_cutoff, so the
    two stay mutually checkable.
    """
    n = r.size
    if not 0 <= k <= n:
        raise ValueError(f"cutoff must be in 0..{n}, got {k}")
    correct = sum(
        1 for rank, inst in enumerate(r.order) if inst.positive == (rank < k)
    )
    return correct / n


def class_metrics(
    c: ConfusionMatrix, positive_support: int, negative_support: int
) -> ClassMetrics:
    """Per-class P/R/F1 (negative class by role swap) plus weighted means.

    A class with zero predicted or zero gold instances scores 0 on the
    affected metric; every such convention is recorded in `conventions`.
    """
    if positive_support != c.positive_support or negative_support != c.negative_support:
        raise ValueError(
            f"supports ({positive_support}, {negative_support}) do not match the "
            f"confusion matrix ({c.positive_support}, {c.negative_support})"
        )

    conventions: list[str] = []

    def ratio(num: int, den: int, field: str) -> float:
        if den == 0:
            conventions.append(field)
            return 0.0
        return num / den

    def f1(p: float, r: float, field: str) -> float:
        if p + r == 0:
            conventions.append(field)
            return 0.0
        return 2 * p * r / (p + r)

    pos_p = ratio(c.tp, c.tp + c.fp, "positive_precision")
    pos_r = ratio(c.tp, c.tp + c.fn, "positive_recall")
    pos_f = f1(pos_p, pos_r, "positive_f1")
    neg_p = ratio(c.tn, c.tn + c.fn, "negative_precision")
    neg_r = ratio(c.tn, c.tn + c.fp, "negative_recall")
    neg_f = f1(neg_p, neg_r, "negative_f1")

    total = positive_support + negative_support

    def weighted(pos: float, neg: float) -> float:
        return (positive_support * pos + negative_support * neg) / total

    return ClassMetrics(
        positive_precision=pos_p,
        positive_recall=pos_r,
        positive_f1=pos_f,
        negative_precision=neg_p,
        negative_recall=neg_r,
        negative_f1=neg_f,
        weighted_precision=weighted(pos_p, neg_p),
        weighted_recall=weighted(pos_r, neg_r),
        weighted_f1=weighted(pos_f, neg_f),
        accuracy=(c.tp + c.tn) / c.size,
        conventions=tuple(conventions),
    )
