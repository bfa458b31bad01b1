"""Seeded random generators for maps, orderings and witness instances.

Every generator takes a :class:`random.Random` so callers control the seed.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from .intervals import IntervalSet
from .orders import PointStream, SignAssignment, Stage, StagedOrdering, StandardOrdering
from .pl import NotMonotone, PLHomeo, Sign
from .rationals import NEG_INF, POS_INF


def random_rational(rng: random.Random, bits: int = 8, max_den: int = 16) -> Fraction:
    """Numerator with at most ``bits`` bits (signed), denominator in 1..max_den."""
    bound = (1 << bits) - 1
    return Fraction(rng.randint(-bound, bound), rng.randint(1, max_den))


def random_positive(rng: random.Random, lo=Fraction(1, 4), hi=4, max_den: int = 8) -> Fraction:
    """A rational in [lo, hi] with small denominator."""
    den = rng.randint(1, max_den)
    a, b = int(Fraction(lo) * den) + 1, int(Fraction(hi) * den)
    return Fraction(rng.randint(min(a, b), b), den)


def random_homeo(rng: random.Random, max_breaks: int = 12, bits: int = 8,
                 max_den: int = 16) -> PLHomeo:
    """An increasing PL map with at most ``max_breaks`` breakpoints."""
    k = rng.randint(1, max_breaks)
    xs = sorted({random_rational(rng, bits, max_den) for _ in range(k)})
    ys = [random_rational(rng, bits, max_den)]
    for a, b in zip(xs, xs[1:]):
        ys.append(ys[-1] + (b - a) * random_positive(rng))
    return PLHomeo.from_breaks(list(zip(xs, ys)), random_positive(rng), random_positive(rng))


def random_bump_map(rng: random.Random, lo: Fraction, hi: Fraction, up: bool) -> PLHomeo:
    """A map moving exactly (lo, hi), up or down, with 1 to 3 interior nodes."""
    width = hi - lo
    cuts = sorted({lo + width * Fraction(rng.randint(1, 15), 16) for _ in range(rng.randint(1, 3))})
    nodes = [(lo, lo)]
    for c in cuts:
        room = min(c - lo, hi - c)
        shift = room * Fraction(rng.randint(1, 7), 8)
        nodes.append((c, c + shift if up else c - shift))
    nodes.append((hi, hi))
    return PLHomeo.interpolate(_monotone(nodes), 1, 1)


def _monotone(nodes):
    # bump nodes can cross after shifting; drop any that would break monotonicity
    out = [nodes[0]]
    for x, y in nodes[1:-1]:
        if y > out[-1][1]:
            out.append((x, y))
    last = nodes[-1]
    while out[-1][1] >= last[1]:
        out.pop()
    out.append(last)
    return out


# ------------------------------------------------------------ matched pairs

def matched_pair(rng: random.Random, f: PLHomeo) -> PLHomeo:
    """A map with the same above and below sets as ``f``.

    The displacement ``f(x) - x`` is rescaled by a random positive factor at
    every breakpoint and fixed-point boundary and re-interpolated.  Tails keep
    their slopes, so their displacement sign is unchanged.  Factors shrink
    toward 1 until the result is increasing.
    """
    d = f.minus_identity()
    nodes = sorted(set(f.xs) | set(d.zeros()))
    factors = [Fraction(rng.randint(1, 16), 4) for _ in nodes]
    for _ in range(64):
        pts = [(x, x + lam * (f(x) - x)) for x, lam in zip(nodes, factors)]
        if all(a[1] < b[1] for a, b in zip(pts, pts[1:])):
            return PLHomeo.interpolate(pts, f.left_slope, f.right_slope)
        factors = [1 + (lam - 1) / 2 for lam in factors]
    return f


# ---------------------------------------------------------------- orderings

def random_signs(rng: random.Random, n: int) -> dict[int, Sign]:
    return {i: rng.choice((Sign.POSITIVE, Sign.NEGATIVE)) for i in range(n)}


def _distinct_points(rng: random.Random, count: int, region: IntervalSet | None = None):
    pts: list[Fraction] = []
    tries = 0
    while len(pts) < count and tries < 50 * count + 50:
        tries += 1
        x = random_rational(rng, 5, 8)
        if region is not None and x not in region:
            continue
        if x not in pts:
            pts.append(x)
    return pts


def random_standard(rng: random.Random, max_prefix: int = 6) -> StandardOrdering:
    prefix = _distinct_points(rng, rng.randint(0, max_prefix))
    default = rng.choice((Sign.POSITIVE, Sign.NEGATIVE))
    table = random_signs(rng, len(prefix) + rng.randint(0, 4))
    return StandardOrdering(PointStream(tuple(prefix)), SignAssignment(table, default))


def random_staged(rng: random.Random, max_stages: int = 3, max_prefix: int = 4) -> StagedOrdering:
    """Stages whose regions are unions of pieces cut from the line at random points."""
    k = rng.randint(2, max_stages)
    cuts = sorted({random_rational(rng, 4, 4) for _ in range(rng.randint(k - 1, k + 3))})
    bounds = [NEG_INF, *cuts, POS_INF]
    pieces = list(zip(bounds, bounds[1:]))
    k = min(k, len(pieces))
    rng.shuffle(pieces)
    owner = list(range(k)) + [rng.randrange(k) for _ in range(len(pieces) - k)]
    stages = []
    for j in range(k):
        region = IntervalSet(tuple(p for p, o in zip(pieces, owner) if o == j))
        prefix = _distinct_points(rng, rng.randint(0, max_prefix), region)
        default = rng.choice((Sign.POSITIVE, Sign.NEGATIVE))
        signs = SignAssignment(random_signs(rng, len(prefix) + 2), default)
        stages.append(Stage(PointStream(tuple(prefix), region), signs))
    return StagedOrdering(tuple(stages))


# ------------------------------------------------------------ AnB instances

def random_anb_instance(rng: random.Random, max_regions: int = 3) -> list[PLHomeo]:
    """Two maps whose above-set union equals their below-set union.

    Each region is an interval that one map raises and the other lowers.
    """
    m = rng.randint(1, max_regions)
    cuts = sorted({Fraction(rng.randint(-40, 40), 4) for _ in range(2 * m + 2)})
    regions = []
    i = 0
    while i + 1 < len(cuts) and len(regions) < m:
        regions.append((cuts[i], cuts[i + 1]))
        i += rng.randint(1, 2) + (1 if rng.random() < 0.5 else 0)
        i = max(i, 2 * len(regions))
    nodes = [[], []]
    for lo, hi in regions:
        up_first = rng.random() < 0.5
        for which in (0, 1):
            up = (which == 0) == up_first
            bump = random_bump_map(rng, lo, hi, up)
            nodes[which] += [b for b in bump.breaks]
    return [PLHomeo.interpolate(_dedup(n), 1, 1) for n in nodes]


def _dedup(nodes: Sequence[tuple[Fraction, Fraction]]):
    out = {}
    for x, y in nodes:
        out[x] = y
    return sorted(out.items())
