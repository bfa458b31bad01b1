"""Dynamical realization of finitely generated left-ordered groups.

Elements of a ball are enumerated breadth first.  Each new element gets a
position ``t`` from the insertion rule:

* a new maximum goes one above the current maximum;
* a new minimum goes one below the current minimum;
* anything else goes halfway between its two order-neighbours.

The group acts on these positions by ``s · t(h) = t(s h)``.  Each generator
is then materialised as the PL map interpolating its known orbit pairs, with
slope-1 tails.

Words are tuples of nonzero ints: ``i + 1`` is generator ``i`` and
``-(i + 1)`` its inverse.  A word ``(a, b)`` stands for the product
``a · b``, so acting on the line means applying ``b`` first.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Hashable, Sequence

from .orders import _Ordering
from .pl import IDENTITY, PLHomeo, Sign, compose, compose_all, invert

Word = tuple[int, ...]


class BallTooSmall(ValueError):
    pass


class GroupOracle:
    """A group with solvable word problem and a left order on it.

    ``normal_form`` returns a hashable value that identifies the element a
    word represents, and ``compare`` returns the order sign of ``u`` relative
    to ``v``.
    """

    generator_ids: tuple[str, ...] = ()

    def normal_form(self, word: Word) -> Hashable:
        raise NotImplementedError

    def compare(self, u: Word, v: Word) -> Sign:
        raise NotImplementedError

    @property
    def letters(self) -> list[int]:
        out = []
        for i in range(len(self.generator_ids)):
            out += [i + 1, -(i + 1)]
        return out

    def format_word(self, word: Word) -> str:
        if not word:
            return "1"
        parts = []
        for letter in word:
            name = self.generator_ids[abs(letter) - 1]
            parts.append(name if letter > 0 else f"{name}^-1")
        return "*".join(parts)


class ZdLex(GroupOracle):
    """Free abelian group of rank d, ordered lexicographically (first generator dominant)."""

    def __init__(self, rank: int, names: Sequence[str] | None = None):
        self.rank = rank
        self.generator_ids = tuple(names) if names else tuple("abcdefgh"[:rank])
        if len(self.generator_ids) != rank:
            raise ValueError("need one name per generator")

    def normal_form(self, word: Word) -> tuple[int, ...]:
        v = [0] * self.rank
        for letter in word:
            v[abs(letter) - 1] += 1 if letter > 0 else -1
        return tuple(v)

    def compare(self, u: Word, v: Word) -> Sign:
        for a, b in zip(self.normal_form(u), self.normal_form(v)):
            if a != b:
                return Sign.of(a - b)
        return Sign.ZERO


class PLSubgroup(GroupOracle):
    """Subgroup of PL homeomorphisms generated by given maps, under a given ordering."""

    def __init__(self, generators: Sequence[PLHomeo], ordering: _Ordering,
                 names: Sequence[str] | None = None):
        self.generators = list(generators)
        self.inverses = [invert(g) for g in self.generators]
        self.ordering = ordering
        self.generator_ids = tuple(names) if names else tuple(
            f"s{i}" for i in range(len(self.generators)))
        self._cache: dict[Word, PLHomeo] = {(): IDENTITY}

    def element(self, word: Word) -> PLHomeo:
        h = self._cache.get(word)
        if h is None:
            letter = word[-1]
            step = self.generators[letter - 1] if letter > 0 else self.inverses[-letter - 1]
            h = self._cache[word] = compose(self.element(word[:-1]), step)
        return h

    def normal_form(self, word: Word) -> PLHomeo:
        return self.element(word)

    def compare(self, u: Word, v: Word) -> Sign:
        return self.ordering.compare(self.element(u), self.element(v))


def enumerate_ball(oracle: GroupOracle, radius: int) -> list[Word]:
    """Elements of word length <= radius, identity first, breadth first."""
    if radius < 0:
        raise ValueError("radius must be non-negative")
    seen = {oracle.normal_form(())}
    out: list[Word] = [()]
    frontier: list[Word] = [()]
    for _ in range(radius):
        nxt = []
        for w in frontier:
            for letter in oracle.letters:
                cand = w + (letter,)
                key = oracle.normal_form(cand)
                if key not in seen:
                    seen.add(key)
                    nxt.append(cand)
        out += nxt
        frontier = nxt
    return out


def build_tmap(oracle: GroupOracle, elements: Sequence[Word]) -> dict[Word, Fraction]:
    """Positions on the line for ``elements`` (identity first) by the insertion rule."""
    if not elements:
        return {}
    t = {elements[0]: Fraction(0)}
    ordered = [elements[0]]  # ascending in the group order
    for g in elements[1:]:
        lo, hi = 0, len(ordered)
        while lo < hi:
            mid = (lo + hi) // 2
            s = oracle.compare(g, ordered[mid])
            if s == Sign.ZERO:
                raise ValueError(f"duplicate element {oracle.format_word(g)}")
            if s > 0:
                lo = mid + 1
            else:
                hi = mid
        if lo == len(ordered):
            t[g] = t[ordered[-1]] + 1
        elif lo == 0:
            t[g] = t[ordered[0]] - 1
        else:
            t[g] = (t[ordered[lo - 1]] + t[ordered[lo]]) / 2
        ordered.insert(lo, g)
    return t


@dataclass
class RealizationResult:
    elements: list[Word]
    t: dict[Word, Fraction]
    rho: dict[int, PLHomeo]
    keys: dict[Hashable, Word] = field(default_factory=dict)

    def t_of(self, oracle: GroupOracle, word: Word) -> Fraction | None:
        w = self.keys.get(oracle.normal_form(word))
        return None if w is None else self.t[w]

    def action(self, generator: int, value: Fraction) -> Fraction:
        return self.rho[generator](value)

    def rho_of_word(self, word: Word) -> PLHomeo:
        maps = [self.rho[l] if l > 0 else invert(self.rho[-l]) for l in word]
        return compose_all(maps)


def realize(oracle: GroupOracle, radius: int) -> RealizationResult:
    if radius < 1:
        raise ValueError("radius must be at least 1")
    elements = enumerate_ball(oracle, radius)
    t = build_tmap(oracle, elements)
    keys = {oracle.normal_form(w): w for w in elements}
    rho = {}
    for i in range(len(oracle.generator_ids)):
        pairs = _orbit_pairs(oracle, keys, t, elements, i + 1)
        if len(pairs) < 2:
            raise BallTooSmall(f"generator {oracle.generator_ids[i]} has {len(pairs)} known pair(s)")
        rho[i + 1] = PLHomeo.interpolate(pairs, 1, 1)
    return RealizationResult(elements, t, rho, keys)


def _orbit_pairs(oracle, keys, t, elements, letter):
    pairs = []
    for h in elements:
        sh = keys.get(oracle.normal_form((letter,) + h))
        if sh is not None:
            pairs.append((t[h], t[sh]))
    return pairs


@dataclass
class RecoveryReport:
    elements: int
    order_violations: list = field(default_factory=list)
    sign_violations: list = field(default_factory=list)
    action_violations: list = field(default_factory=list)
    action_pairs_checked: int = 0

    @property
    def ok(self) -> bool:
        return not (self.order_violations or self.sign_violations or self.action_violations)


def check_recovery(result: RealizationResult, oracle: GroupOracle) -> RecoveryReport:
    """Exact checks: t is order preserving, sign(t(g)) is the sign of g, and
    ``rho(s)(t(h)) = t(s h)`` for every in-ball pair (generators and inverses).
    """
    els = result.elements
    t = result.t
    rep = RecoveryReport(len(els))
    identity = ()
    for i, u in enumerate(els):
        if Sign.of(t[u]) != oracle.compare(u, identity):
            rep.sign_violations.append(u)
        for v in els[i + 1:]:
            if Sign.of(t[u] - t[v]) != oracle.compare(u, v):
                rep.order_violations.append((u, v))
    for gen, r in result.rho.items():
        for letter, m in ((gen, r), (-gen, invert(r))):
            for h in els:
                sh = result.keys.get(oracle.normal_form((letter,) + h))
                if sh is None:
                    continue
                rep.action_pairs_checked += 1
                if m(t[h]) != t[sh]:
                    rep.action_violations.append((letter, h))
    return rep
