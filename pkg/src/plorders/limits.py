"""Convergence of standard orderings, judged from finite evidence.

An ordering sequence converges exactly when every map's sign eventually
settles.  With finitely many terms available, the probes here only report
that a sign has or has not been constant over the last quarter of the
budget.  They never claim divergence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .intervals import IntervalSet
from .orders import (
    PointStream,
    SignAssignment,
    StagedOrdering,
    StandardOrdering,
    compare_standard,
    deciding_point_staged,
)
from .pl import IDENTITY, PLHomeo, Sign


@dataclass(frozen=True)
class OrderingSequence:
    """Orderings ``provider(1), ..., provider(budget)``."""

    provider: Callable[[int], StandardOrdering]
    budget: int

    def __post_init__(self):
        if self.budget < 1:
            raise ValueError("budget must be at least 1")

    def __getitem__(self, n: int) -> StandardOrdering:
        if not 1 <= n <= self.budget:
            raise IndexError(n)
        return self.provider(n)

    def __iter__(self):
        return (self.provider(n) for n in range(1, self.budget + 1))


def stabilization_window(budget: int) -> int:
    """Length of the tail that must be constant to call something stable."""
    return max(2, math.ceil(budget / 4)) if budget > 1 else 1


# ----------------------------------------------------------- relevant points

def relevant_points(ord: StagedOrdering, stage: int, count: int) -> list[tuple[int, Fraction]]:
    """First ``count`` relevant ``(stream index, point)`` pairs of one stage."""
    earlier = IntervalSet.empty()
    for st in ord.stages[:stage]:
        earlier = earlier.union(st.region)
    st = ord.stages[stage]
    if count <= 0 or st.region.intersection(earlier.exterior()).is_empty():
        return []
    out = []
    for i, x in enumerate(st.stream):
        if not earlier.closure_contains(x):
            out.append((i, x))
            if len(out) == count:
                return out


def approximating_sequence(ord: StagedOrdering, n: int) -> StandardOrdering:
    """n-th standard ordering of a sequence converging to ``ord``.

    Its prefix lists the first ``n - j`` relevant points of stage ``j``
    (j = 0, 1, ...), in stage order and then stream order, with the signs
    they carry in ``ord``.  The rest of the line follows in canonical order
    with sign +.
    """
    if n < 1:
        raise ValueError("n starts at 1")
    prefix, table = [], {}
    for j, stage in enumerate(ord.stages):
        for i, x in relevant_points(ord, j, n - j):
            table[len(prefix)] = stage.signs(i)
            prefix.append(x)
    return StandardOrdering(PointStream(tuple(prefix)), SignAssignment(table, Sign.POSITIVE))


def relevance_threshold(ord: StagedOrdering, f: PLHomeo) -> int | None:
    """Smallest n from which ``approximating_sequence(ord, n)`` must decide ``f``
    at the same point as ``ord``, or None for the identity.
    """
    hit = deciding_point_staged(ord, f, IDENTITY)
    if hit is None:
        return None
    stage, index, _ = hit
    earlier = IntervalSet.empty()
    for st in ord.stages[:stage]:
        earlier = earlier.union(st.region)
    pts = ord.stages[stage].stream.points(index)
    rank = sum(1 for x in pts if not earlier.closure_contains(x))
    return rank + 1 + stage


# ------------------------------------------------------------------ probes

@dataclass
class TestTrace:
    function: PLHomeo
    signs: list[Sign]
    stabilized: bool
    first_stable_index: int | None

    @property
    def final_sign(self) -> Sign:
        return self.signs[-1]


@dataclass
class StabilizationReport:
    budget: int
    window: int
    traces: list[TestTrace] = field(default_factory=list)

    @property
    def all_stabilized(self) -> bool:
        return all(t.stabilized for t in self.traces)


def _tail_start(values: Sequence) -> int:
    """1-based index from which ``values`` is constant."""
    start = len(values)
    while start > 1 and values[start - 2] == values[-1]:
        start -= 1
    return start


def stabilization_probe(seq: OrderingSequence, tests: Sequence[PLHomeo]) -> StabilizationReport:
    orderings = list(seq)
    window = stabilization_window(seq.budget)
    report = StabilizationReport(seq.budget, window)
    for f in tests:
        signs = [compare_standard(o, f, IDENTITY)[0] for o in orderings]
        start = _tail_start(signs)
        ok = seq.budget - start + 1 >= window
        report.traces.append(TestTrace(f, signs, ok, start if ok else None))
    return report


@dataclass(frozen=True)
class NotStabilized:
    position: int
    trace: tuple = ()

    def __bool__(self) -> bool:
        return False


def limit_prefix(seq: OrderingSequence, m: int) -> list:
    """Eventual ``(point, sign)`` at stream positions 0..m-1, or :class:`NotStabilized`."""
    if m < 1:
        raise ValueError("m must be at least 1")
    orderings = list(seq)
    window = stabilization_window(seq.budget)
    columns = [[] for _ in range(m)]
    for o in orderings:
        pts = o.stream.points(m)
        for p in range(m):
            columns[p].append((pts[p], o.signs(p)))
    out = []
    for p, col in enumerate(columns):
        start = _tail_start(col)
        if seq.budget - start + 1 >= window:
            out.append(col[-1])
        else:
            out.append(NotStabilized(p, tuple(col)))
    return out
