"""
Staged orderings as limits
==========================

A two-stage ordering is the limit of standard orderings that interleave
ever longer prefixes of both stages.  The same examples also separate the
classes of orderings from each other.
"""

from plorders import OrderingSequence, approximating_sequence, limit_prefix, pl_bump
from plorders.hierarchy import hierarchy_demo, intro_ordering
from plorders.limits import relevance_threshold, stabilization_probe

target = intro_ordering()
for n in (1, 2, 3):
    print(f"F_{n} prefix:", [str(x) for x in approximating_sequence(target, n).stream.prefix])

f = pl_bump((-2, -1), "-1/4")
seq = OrderingSequence(lambda n: approximating_sequence(target, n), 16)
(trace,) = stabilization_probe(seq, [f]).traces
print("signs along the sequence:", "".join(s.symbol for s in trace.signs))
print("settles from n =", trace.first_stable_index,
      "; guaranteed from n =", relevance_threshold(target, f))

# the limit's first points are the first stage's points
limit = limit_prefix(OrderingSequence(seq.provider, 40), 5)
print("limit prefix:", [(str(x), s.symbol) for x, s in limit])

# each ordering class is strictly smaller than the next
demo = hierarchy_demo(samples=5)
for name in ("standard_vs_staged", "staged_vs_typical", "typical_vs_all"):
    print(f"{name}: ok={demo[name]['ok']}")
