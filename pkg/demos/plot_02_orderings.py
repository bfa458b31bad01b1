"""
Ordering maps by where they first move
======================================

A standard ordering walks a dense list of rationals and looks at the first
point a map moves.  Staged orderings run several such lists one after the
other, each confined to its own region.
"""

from fractions import Fraction as F

from plorders import (
    IntervalSet,
    PLHomeo,
    Sign,
    StagedOrdering,
    StandardOrdering,
    compare_standard,
    pl_bump,
    relevant_prefix,
)
from plorders.rationals import canonical_rationals

# the default list of points: 0, then the Calkin-Wilf rationals with signs
print("first points:", [str(canonical_rationals(k)) for k in range(9)])

std = StandardOrdering()
down = pl_bump((F(1, 3), F(1, 2)), F(-1, 40))
sign, index = compare_standard(std, down, PLHomeo.identity())
print(f"bump on (1/3, 1/2) moving down: {sign} (decided at point #{index},"
      f" {canonical_rationals(index)})")

# flipping the sign attached to that point flips the answer
flipped = StandardOrdering.build(signs={index: Sign.NEGATIVE})
print("with that point's sign flipped:", flipped.sign(down))

# two stages: first the positive reals, then the negative reals
pos, neg = IntervalSet.of((0, "inf")), IntervalSet.of(("-inf", 0))
two_stage = StagedOrdering.build([(pos, (), {}, Sign.POSITIVE),
                                  (neg, (), {}, Sign.POSITIVE)])
for p in relevant_prefix(two_stage, 3):
    print(f"stage {p.stage} point {p.point}: relevant={p.is_relevant}")

# a map living only on the negative side is decided in the second stage
neg_bump = pl_bump((-2, -1), F(-1, 4))
print("negative-side bump:", two_stage.sign(neg_bump))
