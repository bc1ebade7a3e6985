"""Ordering instances by score and splitting the order into quantiles."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .dataset import LabeledDataset, LabeledInstance


class TiePolicy(str, Enum):
    """How equal scores are ordered.

    stable keeps input-file order; pessimistic puts negatives first (a lower
    bound on gain); optimistic puts positives first (an upper bound).
    """

    STABLE = "stable"
    PESSIMISTIC = "pessimistic"
    OPTIMISTIC = "optimistic"


@dataclass(frozen=True)
class RankedList:
    """Instances in descending-score order under an explicit tie policy."""

    dataset_name: str
    order: tuple[LabeledInstance, ...]
    policy: TiePolicy
    positive_total: int

    @property
    def size(self) -> int:
        return len(self.order)


@dataclass(frozen=True)
class QuantilePartition:
    """The ranked order cut into Q contiguous groups of near-equal size.

    Quantile q covers order indices [boundaries[q], boundaries[q+1]) with
    boundaries[q] = floor(q * N / Q), so sizes differ by at most one.
    """

    ranked: RankedList
    boundaries: tuple[int, ...]
    per_quantile_positive: tuple[int, ...]
    per_quantile_size: tuple[int, ...]

    @property
    def quantile_count(self) -> int:
        return len(self.boundaries) - 1


def rank_instances(d: LabeledDataset, policy: TiePolicy = TiePolicy.STABLE) -> RankedList:
    """Sort descending by score; ties resolved per policy, then input order."""
    if not d.instances:
        raise ValueError("cannot rank an empty dataset")
    if policy is TiePolicy.STABLE:
        key = lambda inst: -inst.score
    elif policy is TiePolicy.PESSIMISTIC:
        key = lambda inst: (-inst.score, inst.positive)
    else:
        key = lambda inst: (-inst.score, not inst.positive)
    order = tuple(sorted(d.instances, key=key))
    return RankedList(
        dataset_name=d.name,
        order=order,
        policy=policy,
        positive_total=sum(1 for inst in order if inst.positive),
    )


def partition_quantiles(r: RankedList, quantile_count: int) -> QuantilePartition:
    """Split the ranked order into `quantile_count` groups by the floor rule."""
    n = r.size
    if quantile_count < 1 or quantile_count > n:
        raise ValueError(
            f"quantile count must be between 1 and {n}, got {quantile_count}"
        )
    boundaries = tuple(q * n // quantile_count for q in range(quantile_count + 1))
    sizes = []
    positives = []
    for q in range(quantile_count):
        segment = r.order[boundaries[q] : boundaries[q + 1]]
        sizes.append(len(segment))
        positives.append(sum(1 for inst in segment if inst.positive))
    return QuantilePartition(
        ranked=r,
        boundaries=boundaries,
        per_quantile_positive=tuple(positives),
        per_quantile_size=tuple(sizes),
    )
