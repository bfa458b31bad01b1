"""Witness constructions: test maps, the g/h construction, and finite agreement.

The centrepiece is :func:`construct_g`.  It takes maps whose above-sets and
below-sets have the same union ``A`` and produces ``g = g_1 ∘ ... ∘ g_n``
that lies strictly above the diagonal exactly on ``A``, while each ``g_i``
moves points in the same directions as ``f_i``.  :func:`construct_h` is the
mirror image.  Any typical ordering making all ``f_i`` positive would then
make both ``g`` and ``h`` positive, which is impossible because
``h^-1`` and ``g`` have the same above/below sets.

The damping map γ is sampled on a grid, not derived in closed form.
Every result is checked exactly before it is returned, and the grid is
refined if the check fails.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .intervals import IntervalSet, RationalSet
from .orders import PointStream, Sign, SignAssignment, StandardOrdering, compare_standard
from .pl import (
    IDENTITY,
    PiecewiseLinear,
    PLHomeo,
    compose,
    compose_all,
    compose_pl,
    invert,
    minus_part,
    pl_bump,
    plus_part,
    pointwise_max,
)
from .rationals import NEG_INF, POS_INF, as_rational, iter_canonical

HALF = Fraction(1, 2)
_T = PiecewiseLinear((Fraction(0),), (Fraction(0),), Fraction(1), Fraction(1))


class NotAPlusPart(ValueError):
    pass


class PreconditionViolated(ValueError):
    def __init__(self, message: str, certificate: RationalSet):
        super().__init__(message)
        self.certificate = certificate


class ConstructionFailed(RuntimeError):
    pass


class NotJointlyPositivizable(ValueError):
    def __init__(self, message: str, stage: int, remaining: list[int], certificate: tuple):
        super().__init__(message)
        self.stage = stage
        self.remaining = remaining
        self.certificate = certificate


class InvalidIntervals(ValueError):
    pass


# ------------------------------------------------------------------ Θ(x, t)

@dataclass(frozen=True)
class ThetaInT:
    """``t -> f_1^+(... f_{n-1}^+(f_n^+(x - t) - t) ... - t)`` for a fixed x."""

    x: Fraction
    function: PiecewiseLinear

    def __call__(self, t) -> Fraction:
        return self.function(as_rational(t))


def theta_in_t(plus_parts: Sequence[PLHomeo], x) -> ThetaInT:
    x = as_rational(x)
    for p in plus_parts:
        if not p.below.is_empty():
            raise NotAPlusPart(f"{p} dips below the diagonal on {p.below}")
    u = PiecewiseLinear((Fraction(0),), (x,), Fraction(-1), Fraction(-1))
    for i in reversed(range(len(plus_parts))):
        u = compose_pl(plus_parts[i], u)
        if i:
            u = u - _T
    return ThetaInT(x, u)


def solve_t(plus_parts: Sequence[PLHomeo], x) -> Fraction:
    """Unique ``t >= 0`` with ``Θ(x, t) = x``."""
    x = as_rational(x)
    if not plus_parts:
        return Fraction(0)
    theta = theta_in_t(plus_parts, x)
    return theta.function.preimage(x)


# ------------------------------------------------------------ construct_g/h

@dataclass
class GConstruction:
    parts: list[PLHomeo]
    product: PLHomeo
    gamma: PLHomeo
    region: IntervalSet
    rounds: int


@dataclass
class AnBResult:
    g_parts: list[PLHomeo]
    g: PLHomeo
    h_parts: list[PLHomeo]
    h: PLHomeo
    gamma: PLHomeo
    gamma_h: PLHomeo
    region: IntervalSet
    h_index_map: list[int]  # h_parts[k] shares above/below sets with inputs[h_index_map[k]]
    rounds: tuple[int, int]
    certificate: dict = field(default_factory=dict)


def _unions(fs: Sequence[PLHomeo]) -> tuple[IntervalSet, IntervalSet]:
    A = IntervalSet.empty()
    B = IntervalSet.empty()
    for f in fs:
        A = A.union(f.above)
        B = B.union(f.below)
    return A, B


class _TCache:
    def __init__(self, plus_parts):
        self.plus_parts = plus_parts
        self.values: dict[Fraction, Fraction] = {}

    def __call__(self, x: Fraction) -> Fraction:
        t = self.values.get(x)
        if t is None:
            t = self.values[x] = solve_t(self.plus_parts, x)
        return t


def _grid(c, d, seeds: set, round_: int) -> list[Fraction]:
    """Sample points in (c, d): seeds, refined midpoints, approaches to the ends."""
    pts = sorted(p for p in seeds if c < p < d)
    if not pts:
        if c == NEG_INF and d == POS_INF:
            pts = [Fraction(0)]
        elif c == NEG_INF:
            pts = [d - 1]
        elif d == POS_INF:
            pts = [c + 1]
        else:
            pts = [(c + d) / 2]
    for _ in range(1 + round_):
        pts = sorted(set(pts) | {(a + b) / 2 for a, b in zip(pts, pts[1:])})
    depth = 3 + 2 * round_
    lo, hi = pts[0], pts[-1]
    span = max(hi - lo, Fraction(1))
    extra = set()
    for k in range(1, depth + 1):
        extra.add(c + (lo - c) / 2 ** k if c != NEG_INF else lo - span * 2 ** k)
        extra.add(d - (d - hi) / 2 ** k if d != POS_INF else hi + span * 2 ** k)
    return sorted(set(pts) | extra)


def _gamma_nodes(c, d, grid, fplus, fminus, tval, damping) -> list[tuple[Fraction, Fraction]]:
    """γ at the grid points of one component (c, d) of the moved set."""
    def m(y):
        lo, hi = fplus.preimage(y), fminus.preimage(y)
        cands = [tval(lo), tval(hi)]
        cands += [tval(z) for z in grid if lo < z < hi]
        return min(cands)

    nodes = []
    running = c  # sup of γ0 over points to the left; γ0 = id outside the component
    for y in grid:
        g0 = y - HALF * damping * m(y)
        running = g0 if running == NEG_INF else max(running, g0)
        nodes.append((y, HALF * (y + running)))
    return nodes


def _assemble_gamma(components, node_lists) -> PLHomeo:
    nodes = []
    for (c, d), ns in zip(components, node_lists):
        if c != NEG_INF:
            nodes.append((c, c))
        nodes.extend(ns)
        if d != POS_INF:
            nodes.append((d, d))
    if not nodes:
        return IDENTITY
    return PLHomeo.interpolate(nodes, 1, 1)


def _seed_points(fs, pluses, minuses, fplus, fminus) -> set:
    seeds = set()
    for h in (*fs, *pluses, *minuses, fplus, fminus):
        seeds.update(h.xs)
    images = set()
    for p in seeds:
        images.update((fplus(p), fminus(p), fplus.preimage(p), fminus.preimage(p)))
    return seeds | images


def _check_g(fs, parts, product, A) -> bool:
    if product.above != A or not product.below.is_empty():
        return False
    return all(p.above == f.above and p.below == f.below for p, f in zip(parts, fs))


def construct_g(fs: Sequence[PLHomeo], max_rounds: int = 20) -> GConstruction:
    """Maps ``g_i`` with the above/below sets of ``f_i`` whose product lies above
    the diagonal exactly on ``A``, the common union of the above/below sets.
    """
    fs = list(fs)
    A, B = _unions(fs)
    if A != B:
        raise PreconditionViolated(
            f"union of above-sets {A} differs from union of below-sets {B}",
            A.symmetric_difference(B))
    if A.is_empty():
        return GConstruction(list(fs), compose_all(fs), IDENTITY, A, 0)

    pluses = [plus_part(f) for f in fs]
    minuses = [minus_part(f) for f in fs]
    fplus, fminus = compose_all(pluses), compose_all(minuses)
    tval = _TCache(pluses)
    seeds = _seed_points(fs, pluses, minuses, fplus, fminus)
    components = list(A)

    for round_ in range(max_rounds):
        damping = Fraction(1, 2 ** round_)
        node_lists = []
        for c, d in components:
            grid = _grid(c, d, seeds, round_)
            node_lists.append(_gamma_nodes(c, d, grid, fplus, fminus, tval, damping))
        gamma = _assemble_gamma(components, node_lists)
        parts = [compose(p, pointwise_max(m, gamma)) for p, m in zip(pluses, minuses)]
        product = compose_all(parts)
        if gamma.above.is_empty() and gamma.below == A and _check_g(fs, parts, product, A):
            return GConstruction(parts, product, gamma, A, round_ + 1)
    raise ConstructionFailed(f"no valid damping map after {max_rounds} refinement rounds")


def construct_h(fs: Sequence[PLHomeo], max_rounds: int = 20) -> GConstruction:
    """Mirror of :func:`construct_g`: the product lies below the diagonal on ``A``.

    Built from the inverses, whose above/below sets are swapped; the parts
    come out in reverse order, so ``parts[k]`` matches ``fs[n-1-k]``.
    """
    mirrored = construct_g([invert(f) for f in fs], max_rounds)
    parts = [invert(p) for p in reversed(mirrored.parts)]
    return GConstruction(parts, invert(mirrored.product), mirrored.gamma,
                         mirrored.region, mirrored.rounds)


def construct_anb(fs: Sequence[PLHomeo], max_rounds: int = 20) -> AnBResult:
    fs = list(fs)
    g = construct_g(fs, max_rounds)
    h = construct_h(fs, max_rounds)
    n = len(fs)
    index_map = [n - 1 - k for k in range(n)]
    A = g.region
    cert = {
        "A": A,
        "above_g": g.product.above,
        "below_g": g.product.below,
        "above_h": h.product.above,
        "below_h": h.product.below,
        "gamma_above": g.gamma.above,
        "gamma_below": g.gamma.below,
    }
    if not (cert["above_g"] == A and cert["below_g"].is_empty()
            and cert["above_h"].is_empty() and cert["below_h"] == A):
        raise ConstructionFailed("certificate sets do not match")
    for k, part in enumerate(h.parts):
        src = fs[index_map[k]]
        if part.above != src.above or part.below != src.below:
            raise ConstructionFailed(f"h part {k} does not match input {index_map[k]}")
    return AnBResult(g.parts, g.product, h.parts, h.product, g.gamma, h.gamma, A,
                     index_map, (g.rounds, h.rounds), cert)


# ---------------------------------------------------- finite agreement

@dataclass
class Approximation:
    ordering: StandardOrdering
    points: list[Fraction]
    signs: list[Sign]
    decided_by: list[list[int]]  # input indices decided at each chosen point


def approximate_typical_trace(desired_positive: Sequence[PLHomeo]) -> Approximation:
    """Like :func:`approximate_typical` but also reports which point decides which map."""
    fs = list(desired_positive)
    if not fs:
        raise ValueError("need at least one map")
    for i, f in enumerate(fs):
        if f.is_identity():
            raise ValueError(f"input {i} is the identity and cannot be made positive")
    pending = list(range(len(fs)))
    points, signs, decided = [], [], []
    while pending:
        A, B = _unions([fs[i] for i in pending])
        sym = A.symmetric_difference(B)
        if sym.is_empty():
            raise NotJointlyPositivizable(
                f"stage {len(points) + 1}: above-union equals below-union ({A})",
                len(points) + 1, list(pending), (A, B))
        _, x = sym.first_canonical()
        s = Sign.POSITIVE if x in A else Sign.NEGATIVE
        here = [i for i in pending if x in fs[i].moved]
        points.append(x)
        signs.append(s)
        decided.append(here)
        pending = [i for i in pending if i not in here]

    # one point can decide several maps; pad with undeciding points so the
    # prefix has one point per input
    taken = set(points)
    for _, q in iter_canonical():
        if len(points) >= len(fs):
            break
        if q not in taken:
            points.append(q)
            signs.append(Sign.POSITIVE)
            decided.append([])
    ordering = StandardOrdering(PointStream(tuple(points)),
                                SignAssignment(dict(enumerate(signs)), Sign.POSITIVE))
    for i, f in enumerate(fs):
        if compare_standard(ordering, f, IDENTITY)[0] != Sign.POSITIVE:
            raise AssertionError(f"input {i} did not come out positive")
    return Approximation(ordering, points, signs, decided)


def approximate_typical(desired_positive: Sequence[PLHomeo]) -> StandardOrdering:
    """A standard ordering in which every given map is positive.

    Points are picked greedily.  Each one is the canonical-first rational in
    the symmetric difference between the above-set union and the below-set
    union of the maps not yet decided.
    """
    return approximate_typical_trace(desired_positive).ordering


# ------------------------------------------------------------- test maps

def relevance_bump(x, a) -> PLHomeo:
    """Bump supported on (x - a, x + a) lifting x to x + a/2."""
    x, a = as_rational(x), as_rational(a)
    if a <= 0:
        raise ValueError("radius must be positive")
    return pl_bump((x - a, x + a), a / 2)


def alternating_bump(intervals: Sequence[Sequence], start_parity: Sign = Sign.POSITIVE) -> PLHomeo:
    """Bumps on disjoint intervals, alternately up and down in list order."""
    ivs = [(as_rational(lo), as_rational(hi)) for lo, hi in intervals]
    for lo, hi in ivs:
        if not lo < hi:
            raise InvalidIntervals(f"empty interval ({lo}, {hi})")
    ordered = sorted(ivs)
    for (a, b), (c, _) in zip(ordered, ordered[1:]):
        if c < b:
            raise InvalidIntervals(f"intervals ({a}, {b}) and ({c}, ...) overlap")
    if not ivs:
        return IDENTITY
    nodes = []
    for pos, (lo, hi) in enumerate(ivs):
        up = (pos % 2 == 0) == (start_parity == Sign.POSITIVE)
        mid = (lo + hi) / 2
        lift = (hi - lo) / 4
        nodes += [(lo, lo), (mid, mid + lift if up else mid - lift), (hi, hi)]
    return PLHomeo.interpolate(nodes, 1, 1)


def same_germ_pair(x) -> tuple[PLHomeo, PLHomeo]:
    """Two maps with germ (1, 1) at +∞ moving ``x`` in opposite directions."""
    x = as_rational(x)
    ends = [(x - 2, x - 2), (x + 2, x + 3)]
    up = PLHomeo.interpolate([ends[0], (x, x + HALF), ends[1]], 1, 1)
    down = PLHomeo.interpolate([ends[0], (x, x - HALF), ends[1]], 1, 1)
    return up, down


def separating_pair() -> tuple[PLHomeo, PLHomeo]:
    """``x + 1`` and the map equal to ``x + 1`` up to 2 and ``2x - 1`` after."""
    f = PLHomeo.translation(1)
    g = PLHomeo.from_breaks([(2, 3)], 1, 2)
    return f, g
