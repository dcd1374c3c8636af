"""Throughput-latency Pareto fronts and deadline-constrained improvements.

Operating points come from concurrency sweeps: each point pairs a p99
latency with the throughput achieved at that setting. A point dominates
another when it is strictly faster at no lower throughput (or equally fast
at strictly higher throughput); the front is the set of undominated points.
"""

import math
from dataclasses import dataclass
from typing import Sequence

from .catalog import MissingDataError, ProfileEntry, ValidationError, WorkloadProfile

#: Latency ceiling applied when *presenting* fronts; computation ignores it.
DISPLAY_LATENCY_CUTOFF_MS = 150.0


@dataclass(frozen=True)
class TradeoffPoint:
    """One measured operating point; concurrency is provenance only."""

    p99_latency: float  # ms
    throughput: float  # inferences/second
    concurrency: int | None = None

    def __post_init__(self) -> None:
        if self.p99_latency <= 0 or self.throughput <= 0:
            raise ValidationError("tradeoff points must have positive coordinates")


def dominates(a: TradeoffPoint, b: TradeoffPoint) -> bool:
    """True when ``a`` renders ``b`` redundant."""
    if a.p99_latency < b.p99_latency and a.throughput >= b.throughput:
        return True
    return a.p99_latency == b.p99_latency and a.throughput > b.throughput


def pareto_front(points: Sequence[TradeoffPoint]) -> list[TradeoffPoint]:
    """Undominated points, sorted by ascending latency.

    Throughput is strictly increasing along the returned front. Points tied
    on both coordinates collapse to the earliest one in input order.
    """
    if not points:
        raise ValidationError("pareto_front requires at least one point")
    ordered = sorted(enumerate(points), key=lambda ip: (ip[1].p99_latency, -ip[1].throughput, ip[0]))
    front: list[TradeoffPoint] = []
    best = -math.inf
    for _, point in ordered:
        if point.throughput > best:
            front.append(point)
            best = point.throughput
    return front


def max_throughput_under_deadline(front: Sequence[TradeoffPoint], deadline: float) -> float | None:
    """Best throughput achievable at p99 latency <= deadline, or None."""
    feasible = [p.throughput for p in front if p.p99_latency <= deadline]
    return max(feasible) if feasible else None


def entry_points(entry: ProfileEntry) -> list[TradeoffPoint]:
    """The entry's latency samples as tradeoff points."""
    return [TradeoffPoint(p99_latency=lat, throughput=thr) for lat, thr in entry.latency_samples]


def constrained_improvement(
    profile: WorkloadProfile,
    sys_a: str,
    sys_b: str,
    deadline: float | None = None,
) -> float:
    """Throughput improvement of ``sys_b`` over ``sys_a`` under a deadline.

    Both systems are reduced to their Pareto fronts first; with no deadline
    the ratio compares unconstrained best throughputs. Raises when either
    system lacks latency samples or has no point meeting the deadline.
    """
    ratios = []
    for name in (sys_a, sys_b):
        entry = profile.entry_for(name)
        points = entry_points(entry)
        if not points:
            raise MissingDataError(f"profile '{profile.application}' entry '{name}' has no latency samples")
        front = pareto_front(points)
        best = max_throughput_under_deadline(front, math.inf if deadline is None else deadline)
        if best is None:
            raise MissingDataError(
                f"profile '{profile.application}' entry '{name}': no operating point within {deadline} ms"
            )
        ratios.append(best)
    return ratios[1] / ratios[0]


def presentation_front(front: Sequence[TradeoffPoint], cutoff: float = DISPLAY_LATENCY_CUTOFF_MS) -> list[TradeoffPoint]:
    """Front filtered to latencies <= cutoff, for display/serialization only."""
    return [p for p in front if p.p99_latency <= cutoff]
