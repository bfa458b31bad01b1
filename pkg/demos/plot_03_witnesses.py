"""
When maps cannot all be positive
================================

Two maps that each go up where the other goes down cannot both be positive
in any ordering that only looks at where maps sit above or below the
diagonal.  We build explicit products g and h that make this concrete.
"""

import random
from fractions import Fraction as F

from plorders import (
    NotJointlyPositivizable,
    StandardOrdering,
    approximate_typical,
    compose,
    construct_anb,
    pl_bump,
)
from plorders.sampling import random_standard

f1 = compose(pl_bump((0, 1), F(1, 4)), pl_bump((1, 2), F(-1, 4)))
f2 = compose(pl_bump((0, 1), F(-1, 4)), pl_bump((1, 2), F(1, 4)))

r = construct_anb([f1, f2])
print("region:", r.region)
print("g is above the diagonal on", r.g.above, "and below on", r.g.below)
print("h is above the diagonal on", r.h.above, "and below on", r.h.below)

# every ordering gives g and h opposite signs
rng = random.Random(0)
for o in [StandardOrdering()] + [random_standard(rng) for _ in range(4)]:
    print("sign(g), sign(h):", o.sign(r.g), o.sign(r.h))

# so asking for an ordering making both inputs positive fails
try:
    approximate_typical([f1, f2])
except NotJointlyPositivizable as exc:
    print("no ordering:", exc)

# while a compatible family gets a finite ordering
ok = approximate_typical([pl_bump((0, 1), F(1, 4)), pl_bump((2, 3), F(-1, 4))])
print("points used:", [str(x) for x in ok.stream.prefix])
