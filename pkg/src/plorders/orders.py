"""Dynamical-lexicographic orderings on PL homeomorphisms.

Three kinds of ordering are supported:

* :class:`StandardOrdering`: compare at the first point of a dense
  sequence where two maps differ, with a per-index sign flip.
* :class:`StagedOrdering`: finitely many region-restricted streams, one
  after another.  This is a well-order of type ω·k.
* :class:`CompositeOrdering`: decide by the germ at +∞ first and fall back
  to a standard ordering for maps with trivial germ.

All comparisons are exact.  Stream searches never scan point by point.  The
first stream point inside an open difference set is located through
:func:`plorders.rationals.first_canonical_in`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping, Sequence

from .intervals import IntervalSet
from .pl import IDENTITY, AffineGerm, PLHomeo, Sign, compose, difference_set, invert
from .rationals import (
    NEG_INF,
    POS_INF,
    as_rational,
    canonical_index,
    canonical_rationals,
    count_canonical_below,
)

SignFn = Callable[[PLHomeo], Sign]


class Undecided(ValueError):
    """A germ ordering could not separate a germ from the identity."""


class InvalidPair(ValueError):
    """A typicality pair whose above/below sets do not match."""


class InvalidOrdering(ValueError):
    pass


# ---------------------------------------------------------------- streams

@dataclass(frozen=True)
class PointStream:
    """Distinct points: an explicit prefix, then the canonical rationals in ``region``.

    The continuation skips points already used by the prefix.
    """

    prefix: tuple[Fraction, ...] = ()
    region: IntervalSet = field(default_factory=IntervalSet.full)

    def __post_init__(self):
        prefix = tuple(as_rational(p) for p in self.prefix)
        if len(set(prefix)) != len(prefix):
            raise InvalidOrdering("stream prefix points must be distinct")
        for p in prefix:
            if p not in self.region:
                raise InvalidOrdering(f"prefix point {p} lies outside the stream region")
        if self.region.is_empty():
            raise InvalidOrdering("stream region is empty")
        object.__setattr__(self, "prefix", prefix)

    def __iter__(self) -> Iterator[Fraction]:
        yield from self.prefix
        used = set(self.prefix)
        k = 0
        while True:
            k = self._next_index(k)
            q = canonical_rationals(k)
            if q not in used:
                yield q
            k += 1

    def _next_index(self, k: int) -> int:
        """Smallest canonical index >= k whose rational lies in the region."""
        for j in range(k, k + 32):
            if canonical_rationals(j) in self.region:
                return j
        # sparse region: bracket by doubling, then bisect on the exact count
        ivs = self.region.intervals
        base = count_canonical_below(k, ivs)
        lo, step = k, 64
        while count_canonical_below(lo + step, ivs) == base:
            lo, step = lo + step, step * 2
        hi = lo + step
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if count_canonical_below(mid, ivs) == base:
                lo = mid
            else:
                hi = mid
        return lo

    def points(self, count: int) -> list[Fraction]:
        out = []
        if count <= 0:
            return out
        for q in self:
            out.append(q)
            if len(out) == count:
                break
        return out

    def point(self, index: int) -> Fraction:
        return self.points(index + 1)[index]

    def _continuation_before(self, k: int) -> int:
        """How many continuation points have canonical index below ``k``."""
        used = sum(1 for p in self.prefix if canonical_index(p) < k)
        return count_canonical_below(k, self.region.intervals) - used

    def first_hit(self, target: IntervalSet) -> tuple[int, Fraction] | None:
        """First ``(stream index, point)`` lying in the open set ``target``.

        Gives the same answer as walking the stream one point at a time.
        """
        for i, p in enumerate(self.prefix):
            if p in target:
                return i, p
        # prefix points are now known to miss target, so they never compete
        found = target.intersection(self.region).first_canonical()
        if found is None:
            return None
        k, q = found
        return len(self.prefix) + self._continuation_before(k), q


@dataclass(frozen=True)
class SignAssignment:
    """Signs by stream index, with a default beyond the table."""

    table: Mapping[int, Sign] = field(default_factory=dict)
    default: Sign = Sign.POSITIVE

    def __post_init__(self):
        table = {int(k): Sign(v) for k, v in dict(self.table).items()}
        if Sign.ZERO in table.values() or self.default == Sign.ZERO:
            raise InvalidOrdering("signs must be + or -")
        object.__setattr__(self, "table", table)
        object.__setattr__(self, "default", Sign(self.default))

    def __call__(self, index: int) -> Sign:
        return self.table.get(index, self.default)

    def __hash__(self):
        return hash((tuple(sorted(self.table.items())), self.default))


# ------------------------------------------------------------- orderings

class _Ordering:
    def sign(self, f: PLHomeo) -> Sign:
        return self.compare(f, IDENTITY)

    def compare(self, f: PLHomeo, g: PLHomeo) -> Sign:
        raise NotImplementedError


@dataclass(frozen=True)
class StandardOrdering(_Ordering):
    stream: PointStream = field(default_factory=PointStream)
    signs: SignAssignment = field(default_factory=SignAssignment)

    def __post_init__(self):
        if not self.stream.region.is_full():
            raise InvalidOrdering("a standard ordering needs a stream dense in the whole line")

    @classmethod
    def build(cls, prefix: Iterable = (), signs: Mapping | None = None,
              default: Sign = Sign.POSITIVE) -> "StandardOrdering":
        return cls(PointStream(tuple(prefix)), SignAssignment(signs or {}, default))

    def compare(self, f, g) -> Sign:
        return compare_standard(self, f, g)[0]


@dataclass(frozen=True)
class Stage:
    stream: PointStream
    signs: SignAssignment = field(default_factory=SignAssignment)

    @property
    def region(self) -> IntervalSet:
        return self.stream.region


@dataclass(frozen=True)
class StagedOrdering(_Ordering):
    stages: tuple[Stage, ...]

    def __post_init__(self):
        stages = tuple(self.stages)
        if not stages:
            raise InvalidOrdering("need at least one stage")
        union = IntervalSet.empty()
        for st in stages:
            union = union.union(st.region)
        if not union.is_dense():
            raise InvalidOrdering("stage regions must together be dense in the line")
        object.__setattr__(self, "stages", stages)

    @classmethod
    def build(cls, stages: Sequence[tuple]) -> "StagedOrdering":
        """``stages`` as ``(region, prefix, signs, default)`` tuples."""
        out = []
        for region, prefix, signs, default in stages:
            out.append(Stage(PointStream(tuple(prefix), region), SignAssignment(signs, default)))
        return cls(tuple(out))

    def compare(self, f, g) -> Sign:
        return compare_staged(self, f, g)[0]


class GermVariant(enum.Enum):
    EVENTUALLY_ABOVE = "eventually_above"
    EVAL_LEX = "eval_lex"


@dataclass(frozen=True)
class GermOrdering:
    variant: GermVariant = GermVariant.EVENTUALLY_ABOVE
    points: tuple[Fraction, ...] = ()

    def __post_init__(self):
        pts = tuple(as_rational(p) for p in self.points)
        if len(set(pts)) != len(pts):
            raise InvalidOrdering("EvalLex points must be distinct")
        object.__setattr__(self, "points", pts)

    @classmethod
    def eventually_above(cls) -> "GermOrdering":
        return cls(GermVariant.EVENTUALLY_ABOVE)

    @classmethod
    def eval_lex(cls, points: Iterable) -> "GermOrdering":
        return cls(GermVariant.EVAL_LEX, tuple(points))

    def __call__(self, germ: AffineGerm) -> Sign:
        return germ_sign(self, germ)


@dataclass(frozen=True)
class CompositeOrdering(_Ordering):
    germ: GermOrdering
    interior: StandardOrdering = field(default_factory=StandardOrdering)

    def sign(self, f) -> Sign:
        return sign_composite(self, f)

    def compare(self, f, g) -> Sign:
        if f == g:
            return Sign.ZERO
        return sign_composite(self, compose(invert(g), f))


# ------------------------------------------------------------ comparisons

def _moved(f: PLHomeo, g: PLHomeo) -> IntervalSet:
    if g.is_identity():
        return f.moved
    if f.is_identity():
        return g.moved
    return difference_set(f, g)


def compare_standard(ord: StandardOrdering, f: PLHomeo, g: PLHomeo) -> tuple[Sign, int | None]:
    """Sign of ``f`` relative to ``g`` plus the deciding stream index."""
    diff = _moved(f, g)
    if diff.is_empty():
        return Sign.ZERO, None
    index, x = ord.stream.first_hit(diff)
    return Sign.of(f(x) - g(x)) * ord.signs(index), index


def compare_staged(ord: StagedOrdering, f: PLHomeo, g: PLHomeo
                   ) -> tuple[Sign, tuple[int, int] | None]:
    """Sign plus ``(stage, stream index)`` of the deciding point."""
    diff = _moved(f, g)
    if diff.is_empty():
        return Sign.ZERO, None
    for j, stage in enumerate(ord.stages):
        hit = stage.stream.first_hit(diff)
        if hit is not None:
            index, x = hit
            return Sign.of(f(x) - g(x)) * stage.signs(index), (j, index)
    raise InvalidOrdering("difference set avoids every stage; regions are not dense")


def deciding_point_staged(ord: StagedOrdering, f: PLHomeo, g: PLHomeo = IDENTITY):
    """``(stage, index, point)`` where ``f`` and ``g`` are first told apart, or None."""
    diff = _moved(f, g)
    if diff.is_empty():
        return None
    for j, stage in enumerate(ord.stages):
        hit = stage.stream.first_hit(diff)
        if hit is not None:
            return j, hit[0], hit[1]
    return None


@dataclass(frozen=True)
class RelevantPoint:
    point: Fraction
    stage: int
    index: int
    sign: Sign
    is_relevant: bool


def relevant_prefix(ord: StagedOrdering, count: int) -> list[RelevantPoint]:
    """First ``count`` points of every stage, in well-order, with relevance flags.

    A point is relevant when it is not in the closure of the earlier stages'
    regions.  Earlier points of its own stage are finitely many and distinct,
    so they cannot accumulate at it.
    """
    out = []
    earlier = IntervalSet.empty()
    for j, stage in enumerate(ord.stages):
        for i, x in enumerate(stage.stream.points(count)):
            out.append(RelevantPoint(x, j, i, stage.signs(i), not earlier.closure_contains(x)))
        earlier = earlier.union(stage.region)
    return out


# --------------------------------------------------------------- germs

def germ_sign(ord: GermOrdering, germ: AffineGerm) -> Sign:
    if germ.is_trivial():
        return Sign.ZERO
    if ord.variant is GermVariant.EVENTUALLY_ABOVE:
        if germ.a != 1:
            return Sign.of(germ.a - 1)
        return Sign.of(germ.b)
    for p in ord.points:
        s = Sign.of(germ(p) - p)
        if s:
            return s
    raise Undecided(f"evaluation points {list(ord.points)} cannot separate germ "
                    f"({germ.a}, {germ.b}) from the identity")


def sign_composite(ord: CompositeOrdering, f: PLHomeo) -> Sign:
    germ = f.germ()
    if not germ.is_trivial():
        return germ_sign(ord.germ, germ)
    return compare_standard(ord.interior, f, IDENTITY)[0]


# ------------------------------------------------------------- harnesses

@dataclass
class Violation:
    kind: str
    detail: str
    witnesses: tuple = ()


@dataclass
class ConeReport:
    samples: int
    pairs_checked: int = 0
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_positive_cone(sign_fn: SignFn, samples: Sequence[PLHomeo],
                         products: Mapping | None = None) -> ConeReport:
    """Check the positive-cone axioms of ``sign_fn`` on ``samples``.

    Positives times positives must be positive, exactly one of ``f`` and
    ``f^-1`` is positive for ``f != id``, and the identity gets ``ZERO``.
    ``products`` may supply precomputed ``(i, j) -> samples[i] ∘ samples[j]``.
    """
    report = ConeReport(samples=len(samples))
    if sign_fn(IDENTITY) != Sign.ZERO:
        report.violations.append(Violation("identity", "identity has a nonzero sign"))
    signs = []
    for f in samples:
        s = sign_fn(f)
        signs.append(s)
        if f.is_identity():
            continue
        if s == Sign.ZERO:
            report.violations.append(Violation("zero", "nontrivial element signed zero", (f,)))
            continue
        if sign_fn(invert(f)) != -s:
            report.violations.append(Violation(
                "trichotomy", "f and its inverse do not have opposite signs", (f,)))
    for i, f in enumerate(samples):
        for j, g in enumerate(samples):
            if signs[i] != Sign.POSITIVE or signs[j] != Sign.POSITIVE:
                continue
            fg = products[i, j] if products is not None else compose(f, g)
            report.pairs_checked += 1
            if sign_fn(fg) != Sign.POSITIVE:
                report.violations.append(Violation(
                    "closure", "product of positives is not positive", (f, g)))
    return report


@dataclass
class TypicalityReport:
    pairs: int
    mismatches: list[tuple[PLHomeo, PLHomeo, Sign, Sign]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches


def typicality_probe(sign_fn: SignFn, pairs: Iterable[tuple[PLHomeo, PLHomeo]]) -> TypicalityReport:
    """Report pairs with identical above/below sets but different signs."""
    pairs = list(pairs)
    report = TypicalityReport(pairs=len(pairs))
    for f, g in pairs:
        if f.above != g.above or f.below != g.below:
            raise InvalidPair(f"above/below sets differ: {f.above} / {f.below} vs "
                              f"{g.above} / {g.below}")
        sf, sg = sign_fn(f), sign_fn(g)
        if sf != sg:
            report.mismatches.append((f, g, sf, sg))
    return report
