"""Finite evidence that the ordering classes are strictly nested.

Each check builds concrete orderings and maps and returns a plain dict,
so the results can be printed, serialized or asserted on directly.

* ``standard_vs_staged``: the positives-then-negatives ordering has a stage-2
  point outside the closure of stage 1, and a map decided there.
* ``staged_vs_typical``: two maps with the same germ at +∞ are both positive
  under the eventually-above composite, yet any staged ordering starting at
  the point they move apart gives them opposite signs.
* ``typical_vs_all``: the evaluation-lex composite orders ``x + 1`` and the
  ``2x - 1``-tailed map oppositely although both lie above the diagonal
  everywhere, so it is not typical.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .intervals import IntervalSet
from .orders import (
    CompositeOrdering,
    GermOrdering,
    StagedOrdering,
    StandardOrdering,
    compare_staged,
    relevant_prefix,
    sign_composite,
    typicality_probe,
)
from .pl import IDENTITY, PLHomeo, Sign, pl_bump
from .rationals import format_rational
from .witnesses import same_germ_pair, separating_pair

POSITIVES = IntervalSet.of((0, "inf"))
NEGATIVES = IntervalSet.of(("-inf", 0))


def intro_ordering() -> StagedOrdering:
    """Dense positive stream with sign +, then dense negative stream with sign +."""
    return StagedOrdering.build([
        (POSITIVES, (), {}, Sign.POSITIVE),
        (NEGATIVES, (), {}, Sign.POSITIVE),
    ])


def standard_vs_staged(count: int = 4) -> dict:
    ord = intro_ordering()
    prefix = relevant_prefix(ord, count)
    outside = [p for p in prefix if p.stage == 1 and not POSITIVES.closure_contains(p.point)]
    test = pl_bump((-2, -1), Fraction(-1, 4))
    sign, where = compare_staged(ord, test, IDENTITY)
    return {
        "relevant_prefix": [
            {"point": format_rational(p.point), "stage": p.stage, "index": p.index,
             "sign": p.sign.symbol, "relevant": p.is_relevant}
            for p in prefix
        ],
        "stage2_relevant_outside_closure": [format_rational(p.point) for p in outside
                                            if p.is_relevant],
        "test_function": test.to_json(),
        "test_sign": sign.symbol,
        "decided_at": list(where) if where else None,
        "ok": bool(outside) and all(p.is_relevant for p in outside)
              and where is not None and where[0] == 1,
    }


def _staged_starting_at(x: Fraction, rng: random.Random) -> StagedOrdering:
    lo, hi = x - rng.randint(1, 4), x + rng.randint(1, 4)
    first = IntervalSet.of((lo, hi))
    rest = first.exterior()
    signs = {0: rng.choice((Sign.POSITIVE, Sign.NEGATIVE))}
    return StagedOrdering.build([
        (first, (x,), signs, Sign.POSITIVE),
        (rest, (), {}, rng.choice((Sign.POSITIVE, Sign.NEGATIVE))),
    ])


def staged_vs_typical(xs, stagings: int = 5, seed: int = 0) -> dict:
    rng = random.Random(seed)
    comp = CompositeOrdering(GermOrdering.eventually_above(), StandardOrdering())
    rows = []
    ok = True
    for x in xs:
        x = Fraction(x)
        up, down = same_germ_pair(x)
        s_up, s_down = sign_composite(comp, up), sign_composite(comp, down)
        staged = []
        for _ in range(stagings):
            o = _staged_starting_at(x, rng)
            a, b = o.sign(up), o.sign(down)
            staged.append([a.symbol, b.symbol])
            ok &= a == -b and a != Sign.ZERO
        ok &= s_up == Sign.POSITIVE and s_down == Sign.POSITIVE
        rows.append({"x": format_rational(x), "composite": [s_up.symbol, s_down.symbol],
                     "staged": staged})
    return {"rows": rows, "ok": ok}


def typical_vs_all() -> dict:
    f, g = separating_pair()
    comp = CompositeOrdering(GermOrdering.eval_lex([1, 0]), StandardOrdering())
    sf, sg = sign_composite(comp, f), sign_composite(comp, g)
    full = IntervalSet.full()
    report = typicality_probe(comp.sign, [(f, g)])
    return {
        "f": f.to_json(),
        "g": g.to_json(),
        "sign_f": sf.symbol,
        "sign_g": sg.symbol,
        "above_f_full": f.above == full,
        "above_g_full": g.above == full,
        "mismatches": len(report.mismatches),
        "ok": sf == Sign.POSITIVE and sg == Sign.NEGATIVE and f.above == full
              and g.above == full and f.below.is_empty() and g.below.is_empty()
              and len(report.mismatches) == 1,
    }


def sample_points(count: int, seed: int = 0) -> list[Fraction]:
    rng = random.Random(seed)
    out: list[Fraction] = []
    while len(out) < count:
        x = Fraction(rng.randint(-200, 200), rng.randint(1, 12))
        if x not in out:
            out.append(x)
    return out


def hierarchy_demo(seed: int = 0, samples: int = 20) -> dict:
    sections = {
        "standard_vs_staged": standard_vs_staged(),
        "staged_vs_typical": staged_vs_typical(sample_points(samples, seed), seed=seed),
        "typical_vs_all": typical_vs_all(),
    }
    sections["ok"] = all(s["ok"] for s in sections.values())
    return sections


__all__ = [
    "intro_ordering",
    "standard_vs_staged",
    "staged_vs_typical",
    "typical_vs_all",
    "hierarchy_demo",
    "sample_points",
]
