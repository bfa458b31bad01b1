"""Exact rational helpers: string encoding and a fixed enumeration of Q.

The enumeration interleaves the Calkin-Wilf sequence with its negatives::

    0, 1, -1, 1/2, -1/2, 2, -2, 1/3, -1/3, 3/2, -3/2, ...

Term ``k`` (k >= 1) is ``+r_j`` for odd k and ``-r_j`` for even k, where
``j = ceil(k/2)`` and ``r_j`` is the j-th positive rational in breadth-first
Calkin-Wilf order.  Besides the forward map this module provides the inverse
(``canonical_index``) and ``first_canonical_in``, which finds the smallest
index landing in an open interval without scanning.  That last one is what
keeps stream comparisons cheap.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

Rational = Fraction
Endpoint = Union[Fraction, float]

NEG_INF = -math.inf
POS_INF = math.inf

# Calkin-Wilf depth beyond which an index would need more than this many bits.
MAX_TREE_DEPTH = 1 << 20


class IndexTooLarge(ValueError):
    """The canonical index of a rational is astronomically large."""


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are rejected on purpose: they would silently leak rounding.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def format_rational(q: Fraction) -> str:
    """Lowest-terms ``"p/q"`` string (the denominator is always written)."""
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    return Fraction(text)


def format_endpoint(e: Endpoint) -> str:
    if e == NEG_INF:
        return "-inf"
    if e == POS_INF:
        return "inf"
    return format_rational(e)


def parse_endpoint(text: str) -> Endpoint:
    t = text.strip()
    if t in ("-inf", "-infinity"):
        return NEG_INF
    if t in ("inf", "+inf", "infinity"):
        return POS_INF
    return Fraction(t)


# ---------------------------------------------------------------- Calkin-Wilf

def calkin_wilf(j: int) -> Fraction:
    """The j-th positive rational (1-based) in breadth-first Calkin-Wilf order."""
    if j < 1:
        raise ValueError("Calkin-Wilf positions start at 1")
    a, b = 1, 1
    # bits after the leading one describe the root-to-node path; 0 = left
    for bit in bin(j)[3:]:
        if bit == "0":
            b = a + b
        else:
            a = a + b
    return Fraction(a, b)


def calkin_wilf_position(q: Fraction) -> int:
    """Inverse of :func:`calkin_wilf` for a positive rational."""
    if q <= 0:
        raise ValueError("only positive rationals have a Calkin-Wilf position")
    p, r = q.numerator, q.denominator
    runs = []  # (bit, length), collected from the node up to the root
    depth = 0
    while p != r:
        if p < r:
            k = (r - 1) // p
            r -= k * p
            runs.append((0, k))
        else:
            k = (p - 1) // r
            p -= k * r
            runs.append((1, k))
        depth += k
        if depth > MAX_TREE_DEPTH:
            raise IndexTooLarge(f"{q} sits deeper than {MAX_TREE_DEPTH} in the tree")
    j = 1
    for bit, length in reversed(runs):
        j <<= length
        if bit:
            j |= (1 << length) - 1
    return j


def canonical_rationals(k: int) -> Fraction:
    """Term ``k`` of the fixed enumeration of Q (term 0 is 0)."""
    if k < 0:
        raise ValueError("index must be non-negative")
    if k == 0:
        return Fraction(0)
    r = calkin_wilf((k + 1) // 2)
    return r if k % 2 else -r


def canonical_index(q) -> int:
    """Position of ``q`` in :func:`canonical_rationals`."""
    q = as_rational(q)
    if q == 0:
        return 0
    j = calkin_wilf_position(abs(q))
    return 2 * j - 1 if q > 0 else 2 * j


def iter_canonical(start: int = 0):
    k = start
    while True:
        yield k, canonical_rationals(k)
        k += 1


# ------------------------------------------------------ simplest rationals

def _simplest_positive(lo: Fraction, hi: Endpoint) -> Fraction:
    """Stern-Brocot simplest rational in the open interval (lo, hi), 0 <= lo."""
    fl = math.floor(lo)
    if hi == POS_INF or fl + 1 < hi:
        return Fraction(fl + 1)
    # fl <= lo < hi <= fl + 1: recurse on the reciprocal of the fractional part
    inner_lo = 1 / (hi - fl)
    inner_hi = POS_INF if lo == fl else 1 / (lo - fl)
    return fl + 1 / _simplest_positive(inner_lo, inner_hi)


def simplest_between(lo: Endpoint, hi: Endpoint) -> Fraction:
    """Simplest rational strictly between ``lo`` and ``hi``.

    Simplest means shallowest in the Stern-Brocot tree; such a rational is
    unique, and it is also the one with the smallest canonical index among
    the rationals of the interval sharing its sign.
    """
    if not lo < hi:
        raise ValueError(f"empty interval ({lo}, {hi})")
    if lo < 0 < hi:
        return Fraction(0)
    if lo >= 0:
        return _simplest_positive(Fraction(lo), hi)
    return -_simplest_positive(Fraction(-hi), -lo if lo != NEG_INF else POS_INF)


def first_canonical_in(lo: Endpoint, hi: Endpoint) -> tuple[int, Fraction]:
    """``(k, q)`` with ``q = canonical_rationals(k)`` minimal-k inside (lo, hi)."""
    q = simplest_between(lo, hi)
    return canonical_index(q), q


# ---------------------------------------------------- counting by index
#
# Level d of the Calkin-Wilf tree holds the same rationals as level d of the
# Stern-Brocot tree; the node at Calkin-Wilf path r (d bits, root first) is
# the Stern-Brocot node whose path is r read backwards.  Stern-Brocot levels
# are sorted by value, which turns "how many early terms fall in (a, b)"
# into rank arithmetic plus a bit-reversal count.

def _stern_brocot_runs(q: Fraction) -> list[tuple[int, int]]:
    """Root-to-node path of a positive rational as (direction, length) runs; 1 = right."""
    p, r = q.numerator, q.denominator
    runs = []
    while p != r:
        if p > r:
            k = (p - 1) // r
            p -= k * r
            runs.append((1, k))
        else:
            k = (r - 1) // p
            r -= k * p
            runs.append((0, k))
    return runs


def _level_rank(d: int, x: Endpoint, inclusive: bool) -> int:
    """Number of level-d Stern-Brocot nodes that are < x (or <= x)."""
    if x == POS_INF:
        return 1 << d
    if x <= 0:
        return 0
    count, depth = 0, 0
    for direction, length in _stern_brocot_runs(x):
        room = d - depth
        steps = min(length, room)
        if direction == 1 and steps > 0:
            # every node passed on the way right, with its left subtree, is < x
            count += (1 << room) - (1 << (room - steps))
        if length > room:
            if direction == 1:
                count += 1  # the depth-d node on the path lies left of x
            return count
        depth += length
    if depth == d:
        return count + (1 if inclusive else 0)
    return count + (1 << (d - depth - 1))


def _reversed_below(bits: int, limit: int, bound: int) -> int:
    """#{r < limit : r read backwards in ``bits`` bits is < bound}."""
    if bound <= 0 or limit <= 0:
        return 0
    if bound >= 1 << bits:
        return limit
    # states (low bits of r vs limit, reversed prefix vs bound), both in {-1,0,1}
    states = {(0, 0): 1}
    for i in range(bits):
        lb = (limit >> i) & 1
        hb = (bound >> (bits - 1 - i)) & 1
        nxt: dict[tuple[int, int], int] = {}
        for (cl, ch), n in states.items():
            for b in (0, 1):
                cl2 = cl if b == lb else (1 if b > lb else -1)
                ch2 = ch if ch else (0 if b == hb else (1 if b > hb else -1))
                nxt[cl2, ch2] = nxt.get((cl2, ch2), 0) + n
        states = nxt
    return sum(n for (cl, ch), n in states.items() if cl < 0 and ch < 0)


def _positive_count(J: int, lo: Endpoint, hi: Endpoint) -> int:
    """#{1 <= j < J : calkin_wilf(j) in (lo, hi)} for 0 <= lo < hi."""
    if J <= 1:
        return 0
    D = J.bit_length() - 1
    total = 0
    for d in range(D):
        total += _level_rank(d, hi, False) - _level_rank(d, lo, True)
    rest = J - (1 << D)
    a, b = _level_rank(D, lo, True), _level_rank(D, hi, False)
    if a < b:
        total += _reversed_below(D, rest, b) - _reversed_below(D, rest, a)
    return total


def count_canonical_below(k: int, intervals) -> int:
    """How many of the terms 0..k-1 of the enumeration lie in the open intervals."""
    if k <= 0:
        return 0
    total = 0
    J_pos = k // 2 + 1          # term 2j-1 is +r_j
    J_neg = (k - 1) // 2 + 1    # term 2j is -r_j
    for lo, hi in intervals:
        if lo < 0 < hi:
            total += 1
        if hi > 0:
            total += _positive_count(J_pos, max(lo, Fraction(0)), hi)
        if lo < 0:
            top = POS_INF if lo == NEG_INF else -lo
            total += _positive_count(J_neg, max(-hi, Fraction(0)), top)
    return total
