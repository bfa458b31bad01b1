"""Finite unions of open rational intervals, and boolean combinations of them.

:class:`IntervalSet` is closed under union and intersection and is what
``above_set``/``below_set``/``difference_set`` return.  Differences and
symmetric differences of open sets can pick up boundary points, so those
produce a :class:`RationalSet`.  It keeps its isolated points and open
pieces separately, which makes membership exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .rationals import (
    NEG_INF,
    POS_INF,
    Endpoint,
    canonical_index,
    first_canonical_in,
    format_endpoint,
    parse_endpoint,
)


def _sample_inside(lo: Endpoint, hi: Endpoint) -> Fraction:
    """Some rational strictly inside (lo, hi)."""
    if lo == NEG_INF and hi == POS_INF:
        return Fraction(0)
    if lo == NEG_INF:
        return hi - 1
    if hi == POS_INF:
        return lo + 1
    return (lo + hi) / 2


@dataclass(frozen=True)
class IntervalSet:
    """Sorted, pairwise disjoint open intervals.

    Two neighbouring intervals may share an endpoint; the shared point is then
    *not* in the set, which is why they are kept apart.
    """

    intervals: tuple[tuple[Endpoint, Endpoint], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "intervals", _normalize(self.intervals))

    @classmethod
    def empty(cls) -> "IntervalSet":
        return cls(())

    @classmethod
    def full(cls) -> "IntervalSet":
        return cls(((NEG_INF, POS_INF),))

    @classmethod
    def of(cls, *pairs) -> "IntervalSet":
        return cls(tuple((_coerce(lo), _coerce(hi)) for lo, hi in pairs))

    # ------------------------------------------------------------ queries
    def is_empty(self) -> bool:
        return not self.intervals

    def __bool__(self) -> bool:
        return bool(self.intervals)

    def __iter__(self):
        return iter(self.intervals)

    def __len__(self) -> int:
        return len(self.intervals)

    def __contains__(self, x) -> bool:
        return any(lo < x < hi for lo, hi in self.intervals)

    def closure_contains(self, x) -> bool:
        return any(lo <= x <= hi for lo, hi in self.intervals)

    def is_full(self) -> bool:
        return self.intervals == ((NEG_INF, POS_INF),)

    def is_dense(self) -> bool:
        """True when the closure is the whole line (only finitely many gaps points)."""
        if not self.intervals:
            return False
        if self.intervals[0][0] != NEG_INF or self.intervals[-1][1] != POS_INF:
            return False
        return all(a[1] == b[0] for a, b in zip(self.intervals, self.intervals[1:]))

    def exterior(self) -> "IntervalSet":
        """Complement of the closure: the open gaps of positive length."""
        bounds = [NEG_INF]
        for lo, hi in self.intervals:
            bounds += [lo, hi]
        bounds.append(POS_INF)
        gaps = []
        for a, b in zip(bounds[::2], bounds[1::2]):
            if a == NEG_INF and b == NEG_INF or a == POS_INF and b == POS_INF:
                continue
            gaps.append((a, b))
        return IntervalSet(tuple(gaps))

    def endpoints(self) -> list[Fraction]:
        pts = set()
        for lo, hi in self.intervals:
            for e in (lo, hi):
                if e not in (NEG_INF, POS_INF):
                    pts.add(e)
        return sorted(pts)

    def first_canonical(self) -> tuple[int, Fraction] | None:
        """Smallest-index canonical rational in the set, or None if empty."""
        best = None
        for lo, hi in self.intervals:
            cand = first_canonical_in(lo, hi)
            if best is None or cand[0] < best[0]:
                best = cand
        return best

    # -------------------------------------------------------------- algebra
    def union(self, other: "IntervalSet") -> "IntervalSet":
        return IntervalSet(self.intervals + other.intervals)

    __or__ = union

    def intersection(self, other: "IntervalSet") -> "IntervalSet":
        out = []
        i = j = 0
        a, b = self.intervals, other.intervals
        while i < len(a) and j < len(b):
            lo = max(a[i][0], b[j][0])
            hi = min(a[i][1], b[j][1])
            if lo < hi:
                out.append((lo, hi))
            if a[i][1] < b[j][1]:
                i += 1
            else:
                j += 1
        return IntervalSet(tuple(out))

    __and__ = intersection

    def intersects(self, other: "IntervalSet") -> bool:
        return not self.intersection(other).is_empty()

    def symmetric_difference(self, other: "IntervalSet") -> "RationalSet":
        return RationalSet.combine([self, other], lambda a, b: a != b)

    def difference(self, other: "IntervalSet") -> "RationalSet":
        return RationalSet.combine([self, other], lambda a, b: a and not b)

    def to_json(self) -> list:
        return [[format_endpoint(lo), format_endpoint(hi)] for lo, hi in self.intervals]

    @classmethod
    def from_json(cls, data) -> "IntervalSet":
        return cls(tuple((parse_endpoint(lo), parse_endpoint(hi)) for lo, hi in data))

    def __str__(self) -> str:
        if not self.intervals:
            return "∅"
        return " ∪ ".join(f"({_fmt(lo)}, {_fmt(hi)})" for lo, hi in self.intervals)


def _fmt(e: Endpoint) -> str:
    if e == NEG_INF:
        return "-∞"
    if e == POS_INF:
        return "∞"
    return str(e)


def _coerce(e) -> Endpoint:
    if isinstance(e, str):
        return parse_endpoint(e)
    if isinstance(e, float):
        if e in (NEG_INF, POS_INF):
            return e
        raise TypeError("finite endpoints must be exact rationals")
    return Fraction(e)


def _normalize(intervals: Iterable[tuple[Endpoint, Endpoint]]):
    items = []
    for lo, hi in intervals:
        lo, hi = _coerce(lo), _coerce(hi)
        if lo == POS_INF or hi == NEG_INF:
            raise ValueError("interval endpoint on the wrong side")
        if lo < hi:
            items.append((lo, hi))
    items.sort()
    merged: list[tuple[Endpoint, Endpoint]] = []
    for lo, hi in items:
        if merged and lo < merged[-1][1]:
            if hi > merged[-1][1]:
                merged[-1] = (merged[-1][0], hi)
        else:
            merged.append((lo, hi))
    return tuple(merged)


@dataclass(frozen=True)
class RationalSet:
    """A finite union of open intervals and isolated points.

    Produced by boolean combinations of open sets; pieces are listed left to
    right and never overlap.  Neighbouring pieces are not merged, so an
    interval followed by its endpoint stays as two pieces.
    """

    opens: tuple[tuple[Endpoint, Endpoint], ...]
    points: tuple[Fraction, ...]

    @classmethod
    def combine(cls, sets: Sequence[IntervalSet], rule: Callable[..., bool]) -> "RationalSet":
        """Pieces of the line on which ``rule(x in s for s in sets)`` holds."""
        crit = sorted({e for s in sets for e in s.endpoints()})
        bounds = [NEG_INF, *crit, POS_INF]
        opens, points = [], []
        for lo, hi in zip(bounds, bounds[1:]):
            x = _sample_inside(lo, hi)
            if rule(*(x in s for s in sets)):
                opens.append((lo, hi))
        for p in crit:
            if rule(*(p in s for s in sets)):
                points.append(p)
        return cls(tuple(opens), tuple(points))

    def is_empty(self) -> bool:
        return not self.opens and not self.points

    def __bool__(self) -> bool:
        return not self.is_empty()

    def __contains__(self, x) -> bool:
        return x in self.points or any(lo < x < hi for lo, hi in self.opens)

    def interior(self) -> IntervalSet:
        # an isolated point sitting between two open pieces fills the gap
        joined: list[list] = []
        pts = set(self.points)
        for lo, hi in self.opens:
            if joined and joined[-1][1] == lo and lo in pts:
                joined[-1][1] = hi
            else:
                joined.append([lo, hi])
        return IntervalSet(tuple((lo, hi) for lo, hi in joined))

    def first_canonical(self, exclude: Iterable[Fraction] = ()) -> tuple[int, Fraction] | None:
        """Smallest-index canonical rational in the set avoiding ``exclude``."""
        excluded = set(exclude)
        best = None
        for p in self.points:
            if p in excluded:
                continue
            k = canonical_index(p)
            if best is None or k < best[0]:
                best = (k, p)
        for lo, hi in self.opens:
            cand = _first_avoiding(lo, hi, excluded)
            if best is None or cand[0] < best[0]:
                best = cand
        return best

    def to_json(self) -> dict:
        return {
            "open": [[format_endpoint(lo), format_endpoint(hi)] for lo, hi in self.opens],
            "points": [format_endpoint(p) for p in self.points],
        }

    def __str__(self) -> str:
        parts = [f"({_fmt(lo)}, {_fmt(hi)})" for lo, hi in self.opens]
        parts += [f"{{{p}}}" for p in self.points]
        return " ∪ ".join(parts) if parts else "∅"


def _first_avoiding(lo, hi, excluded: set) -> tuple[int, Fraction]:
    inside = sorted(p for p in excluded if lo < p < hi)
    bounds = [lo, *inside, hi]
    return min(first_canonical_in(a, b) for a, b in zip(bounds, bounds[1:]))
