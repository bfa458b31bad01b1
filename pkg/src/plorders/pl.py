"""Exact piecewise-linear maps of the line with rational breakpoints.

Every map carries a finite list of breakpoints and two affine tails.  Values
are kept in a normal form: collinear breakpoints are dropped, and an affine
map is stored with a single anchor breakpoint at x = 0.  Two maps are equal
exactly when their normal forms are identical, so ``==`` and ``hash`` work
as function equality.

:class:`PiecewiseLinear` is the general carrier (any continuous PL function,
used for differences and for functions of an auxiliary parameter);
:class:`PLHomeo` adds the increasing-homeomorphism invariant and the group
operations.
"""

from __future__ import annotations

import enum
from bisect import bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .intervals import IntervalSet
from .rationals import NEG_INF, POS_INF, as_rational, format_rational, parse_rational

ZERO = Fraction(0)
ONE = Fraction(1)


class Sign(enum.IntEnum):
    NEGATIVE = -1
    ZERO = 0
    POSITIVE = 1

    def __neg__(self) -> "Sign":
        return Sign(-int(self))

    def __mul__(self, other):
        if isinstance(other, Sign):
            return Sign(int(self) * int(other))
        return int(self) * other

    @classmethod
    def of(cls, value) -> "Sign":
        return cls((value > 0) - (value < 0))

    @property
    def symbol(self) -> str:
        return {1: "+", -1: "-", 0: "0"}[int(self)]

    @classmethod
    def from_symbol(cls, s: str) -> "Sign":
        try:
            return {"+": cls.POSITIVE, "-": cls.NEGATIVE, "0": cls.ZERO}[s]
        except KeyError:
            raise ValueError(f"unknown sign symbol {s!r}") from None

    def __str__(self) -> str:
        return self.symbol


class NotMonotone(ValueError):
    """Data does not describe a strictly increasing map."""


class InvalidBump(ValueError):
    pass


@dataclass(frozen=True)
class PiecewiseLinear:
    """Continuous PL function ``R -> R`` with affine tails (not necessarily monotone)."""

    xs: tuple[Fraction, ...]
    ys: tuple[Fraction, ...]
    left_slope: Fraction
    right_slope: Fraction
    _slopes: tuple = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        xs = tuple(as_rational(x) for x in self.xs)
        ys = tuple(as_rational(y) for y in self.ys)
        ls, rs = as_rational(self.left_slope), as_rational(self.right_slope)
        if not xs or len(xs) != len(ys):
            raise ValueError("need at least one breakpoint and matching x/y lists")
        if any(a >= b for a, b in zip(xs, xs[1:])):
            raise ValueError("breakpoint x-coordinates must be strictly increasing")
        xs, ys, slopes = _normal_form(xs, ys, ls, rs)
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "ys", ys)
        object.__setattr__(self, "left_slope", slopes[0])
        object.__setattr__(self, "right_slope", slopes[-1])
        object.__setattr__(self, "_slopes", slopes)

    # ---------------------------------------------------------- evaluation
    @property
    def breaks(self) -> tuple[tuple[Fraction, Fraction], ...]:
        return tuple(zip(self.xs, self.ys))

    @property
    def slopes(self) -> tuple[Fraction, ...]:
        """``(left tail, segment 1, ..., right tail)``."""
        return self._slopes

    def __call__(self, x) -> Fraction:
        xs, ys = self.xs, self.ys
        i = bisect_right(xs, x)
        if i == 0:
            return ys[0] + self.left_slope * (x - xs[0])
        return ys[i - 1] + self._slopes[i] * (x - xs[i - 1])

    def evaluate(self, x) -> Fraction:
        return self(as_rational(x))

    def is_increasing(self) -> bool:
        return all(s > 0 for s in self._slopes)

    def is_decreasing(self) -> bool:
        return all(s < 0 for s in self._slopes)

    # ------------------------------------------------------------- algebra
    def __add__(self, other):
        if isinstance(other, PiecewiseLinear):
            xs = sorted(set(self.xs) | set(other.xs))
            return PiecewiseLinear(
                tuple(xs),
                tuple(self(x) + other(x) for x in xs),
                self.left_slope + other.left_slope,
                self.right_slope + other.right_slope,
            )
        c = as_rational(other)
        return PiecewiseLinear(self.xs, tuple(y + c for y in self.ys),
                               self.left_slope, self.right_slope)

    def __neg__(self):
        return PiecewiseLinear(self.xs, tuple(-y for y in self.ys),
                               -self.left_slope, -self.right_slope)

    def __sub__(self, other):
        if isinstance(other, PiecewiseLinear):
            return self + (-other)
        return self + (-as_rational(other))

    def minus_identity(self) -> "PiecewiseLinear":
        """The displacement ``x -> f(x) - x``."""
        return PiecewiseLinear(self.xs, tuple(y - x for x, y in zip(self.xs, self.ys)),
                               self.left_slope - 1, self.right_slope - 1)

    def preimage(self, y) -> Fraction:
        """The unique x with f(x) = y; requires strict monotonicity."""
        if self.is_decreasing():
            return (-self).preimage(-y)
        xs, ys = self.xs, self.ys
        i = bisect_right(ys, y)
        if i == 0:
            return xs[0] + (y - ys[0]) / self.left_slope
        return xs[i - 1] + (y - ys[i - 1]) / self._slopes[i]

    # --------------------------------------------------------- sign pieces
    def zeros(self) -> list[Fraction]:
        """Endpoints of the zero set: isolated roots and ends of zero segments."""
        xs, ys = self.xs, self.ys
        out = []
        if self.left_slope != 0 and ys[0] / self.left_slope > 0:
            out.append(xs[0] - ys[0] / self.left_slope)
        for i, (x, y) in enumerate(zip(xs, ys)):
            if y == 0:
                out.append(x)
            if i + 1 < len(xs):
                y2 = ys[i + 1]
                if (y < 0 < y2) or (y2 < 0 < y):
                    out.append(x - y * (xs[i + 1] - x) / (y2 - y))
        if self.right_slope != 0 and ys[-1] / self.right_slope < 0:
            out.append(xs[-1] - ys[-1] / self.right_slope)
        return out

    def sign_pieces(self) -> list[tuple[object, object, Sign]]:
        """Open pieces between consecutive zeros, each with its constant sign."""
        zs = self.zeros()
        bounds = [NEG_INF, *zs, POS_INF]
        pieces = []
        for lo, hi in zip(bounds, bounds[1:]):
            if lo == NEG_INF and hi == POS_INF:
                x = ZERO
            elif lo == NEG_INF:
                x = hi - 1
            elif hi == POS_INF:
                x = lo + 1
            else:
                x = (lo + hi) / 2
            pieces.append((lo, hi, Sign.of(self(x))))
        return pieces

    def positive_set(self) -> IntervalSet:
        return IntervalSet(tuple((lo, hi) for lo, hi, s in self.sign_pieces() if s > 0))

    def negative_set(self) -> IntervalSet:
        return IntervalSet(tuple((lo, hi) for lo, hi, s in self.sign_pieces() if s < 0))

    def support(self) -> IntervalSet:
        return IntervalSet(tuple((lo, hi) for lo, hi, s in self.sign_pieces() if s != 0))


def _normal_form(xs, ys, ls, rs):
    n = len(xs)
    seg = [(ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i]) for i in range(n - 1)]
    full = [ls, *seg, rs]
    keep = [i for i in range(n) if full[i] != full[i + 1]]
    if not keep:
        # affine: anchor at 0
        b = ys[0] - ls * xs[0]
        return (ZERO,), (b,), (ls, ls)
    if len(keep) == n:
        return xs, ys, tuple(full)
    kx = tuple(xs[i] for i in keep)
    ky = tuple(ys[i] for i in keep)
    slopes = [ls]
    slopes += [(ky[i + 1] - ky[i]) / (kx[i + 1] - kx[i]) for i in range(len(kx) - 1)]
    slopes.append(rs)
    return kx, ky, tuple(slopes)


def compose_pl(outer: PiecewiseLinear, inner: PiecewiseLinear, cls=PiecewiseLinear):
    """``outer ∘ inner`` for a strictly monotone ``inner``."""
    values = dict(zip(inner.xs, (outer(y) for y in inner.ys)))
    for x, y in zip(outer.xs, outer.ys):
        values[inner.preimage(x)] = y
    pts = sorted(values)
    if inner.left_slope > 0:
        ls = outer.left_slope * inner.left_slope
        rs = outer.right_slope * inner.right_slope
    else:
        ls = outer.right_slope * inner.left_slope
        rs = outer.left_slope * inner.right_slope
    return cls(tuple(pts), tuple(values[p] for p in pts), ls, rs)


def _pointwise(f: PiecewiseLinear, g: PiecewiseLinear, pick_max: bool, cls):
    d = f - g
    pts = sorted(set(f.xs) | set(g.xs) | set(d.zeros()))
    choose = max if pick_max else min
    ys = tuple(choose(f(p), g(p)) for p in pts)

    def tail(x, f_slope, g_slope):
        s = d(x)
        f_wins = s >= 0 if pick_max else s <= 0
        return f_slope if f_wins else g_slope

    ls = tail(pts[0] - 1, f.left_slope, g.left_slope)
    rs = tail(pts[-1] + 1, f.right_slope, g.right_slope)
    return cls(tuple(pts), ys, ls, rs)


# ------------------------------------------------------------------ germs

@dataclass(frozen=True)
class AffineGerm:
    """Germ at +∞ of a map that is eventually ``x -> a*x + b``."""

    a: Fraction
    b: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", as_rational(self.a))
        object.__setattr__(self, "b", as_rational(self.b))
        if self.a <= 0:
            raise ValueError("germ slope must be positive")

    def is_trivial(self) -> bool:
        return self.a == 1 and self.b == 0

    def __call__(self, x) -> Fraction:
        return self.a * x + self.b

    def compose(self, other: "AffineGerm") -> "AffineGerm":
        return AffineGerm(self.a * other.a, self.a * other.b + self.b)

    __matmul__ = compose

    def inverse(self) -> "AffineGerm":
        return AffineGerm(1 / self.a, -self.b / self.a)

    @classmethod
    def identity(cls) -> "AffineGerm":
        return cls(ONE, ZERO)


# --------------------------------------------------------------- homeos

@dataclass(frozen=True)
class PLHomeo(PiecewiseLinear):
    """Increasing PL homeomorphism of the line."""

    def __post_init__(self):
        super().__post_init__()
        if not self.is_increasing():
            raise NotMonotone("PLHomeo needs every slope (tails included) to be positive")

    # ----- constructors
    @classmethod
    def from_breaks(cls, breaks: Iterable[Sequence], left_slope=1, right_slope=1) -> "PLHomeo":
        pts = [(as_rational(x), as_rational(y)) for x, y in breaks]
        return cls(tuple(p[0] for p in pts), tuple(p[1] for p in pts),
                   as_rational(left_slope), as_rational(right_slope))

    @classmethod
    def affine(cls, a, b) -> "PLHomeo":
        a = as_rational(a)
        return cls((ZERO,), (as_rational(b),), a, a)

    @classmethod
    def identity(cls) -> "PLHomeo":
        return cls.affine(1, 0)

    @classmethod
    def translation(cls, c) -> "PLHomeo":
        return cls.affine(1, c)

    @classmethod
    def interpolate(cls, points: Iterable[Sequence], left_slope=1, right_slope=1) -> "PLHomeo":
        """Interpolating map through ``(x, y)`` nodes; duplicates must agree."""
        table = {}
        for x, y in points:
            x, y = as_rational(x), as_rational(y)
            if table.setdefault(x, y) != y:
                raise NotMonotone(f"conflicting values at {x}")
        xs = sorted(table)
        return cls(tuple(xs), tuple(table[x] for x in xs),
                   as_rational(left_slope), as_rational(right_slope))

    # ----- group structure
    def is_identity(self) -> bool:
        return self == IDENTITY

    def __matmul__(self, other: "PLHomeo") -> "PLHomeo":
        return compose(self, other)

    def inverse(self) -> "PLHomeo":
        return invert(self)

    # ----- cached set data
    @cached_property
    def above(self) -> IntervalSet:
        return self.minus_identity().positive_set()

    @cached_property
    def below(self) -> IntervalSet:
        return self.minus_identity().negative_set()

    @cached_property
    def moved(self) -> IntervalSet:
        return self.above.union(self.below)

    def germ(self) -> AffineGerm:
        return germ_at_infinity(self)

    # ----- encoding
    def to_json(self) -> dict:
        return {
            "breaks": [[format_rational(x), format_rational(y)] for x, y in self.breaks],
            "left_slope": format_rational(self.left_slope),
            "right_slope": format_rational(self.right_slope),
        }

    @classmethod
    def from_json(cls, data: dict) -> "PLHomeo":
        return cls.from_breaks(
            [(parse_rational(x), parse_rational(y)) for x, y in data["breaks"]],
            parse_rational(data["left_slope"]),
            parse_rational(data["right_slope"]),
        )

    def __str__(self) -> str:
        if len(self.xs) == 1 and self.left_slope == self.right_slope:
            return f"x ↦ {self.left_slope}·x + {self.ys[0]}"
        pts = ", ".join(f"({x}, {y})" for x, y in self.breaks)
        return f"PL[{self.left_slope} | {pts} | {self.right_slope}]"


IDENTITY = PLHomeo.identity()


def evaluate(f: PiecewiseLinear, x) -> Fraction:
    return f(as_rational(x))


def compose(f: PLHomeo, g: PLHomeo) -> PLHomeo:
    """``f ∘ g`` (apply g first)."""
    return compose_pl(f, g, PLHomeo)


def compose_all(fs: Sequence[PLHomeo]) -> PLHomeo:
    """``fs[0] ∘ fs[1] ∘ ... ∘ fs[-1]``."""
    out = IDENTITY
    for f in reversed(fs):
        out = compose(f, out)
    return out


def invert(f: PLHomeo) -> PLHomeo:
    return PLHomeo(f.ys, f.xs, 1 / f.left_slope, 1 / f.right_slope)


def pointwise_max(f: PLHomeo, g: PLHomeo) -> PLHomeo:
    return _pointwise(f, g, True, PLHomeo)


def pointwise_min(f: PLHomeo, g: PLHomeo) -> PLHomeo:
    return _pointwise(f, g, False, PLHomeo)


def plus_part(f: PLHomeo) -> PLHomeo:
    """``x -> max(f(x), x)``."""
    return pointwise_max(f, IDENTITY)


def minus_part(f: PLHomeo) -> PLHomeo:
    """``x -> min(f(x), x)``."""
    return pointwise_min(f, IDENTITY)


def above_set(f: PLHomeo) -> IntervalSet:
    """Where the graph lies strictly above the diagonal."""
    return f.above


def below_set(f: PLHomeo) -> IntervalSet:
    return f.below


def difference_set(f: PLHomeo, g: PLHomeo) -> IntervalSet:
    """Open set ``{x : f(x) != g(x)}``."""
    if f is g or f == g:
        return IntervalSet.empty()
    return (f - g).support()


def pl_bump(interval: Sequence, height) -> PLHomeo:
    """Tent-shaped map supported on ``interval`` lifting its midpoint by ``height``."""
    lo, hi = (as_rational(e) for e in interval)
    height = as_rational(height)
    if not lo < hi:
        raise InvalidBump(f"empty interval ({lo}, {hi})")
    half = (hi - lo) / 2
    if height == 0:
        raise InvalidBump("zero-height bump is the identity; refusing to build it")
    if abs(height) >= half:
        raise InvalidBump(f"|height| must stay below {half} to keep the map increasing")
    mid = lo + half
    return PLHomeo((lo, mid, hi), (lo, mid + height, hi), ONE, ONE)


def germ_at_infinity(f: PLHomeo) -> AffineGerm:
    a = f.right_slope
    return AffineGerm(a, f.ys[-1] - a * f.xs[-1])
