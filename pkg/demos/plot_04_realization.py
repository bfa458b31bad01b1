"""
Groups acting on the line
=========================

Any countable ordered group acts on the line by order-preserving maps.  On
a finite ball of words we place each element at a rational t and read off
how the generators move these points.
"""

from fractions import Fraction as F

from plorders import PLHomeo, PLSubgroup, StandardOrdering, ZdLex, check_recovery, pl_bump, realize

z = ZdLex(1, ["a"])
res = realize(z, 4)
for w in res.elements:
    print(f"{z.format_word(w):>6} -> t = {res.t[w]}")
print("a acts as", res.rho[1])

# lexicographically ordered Z^2
z2 = ZdLex(2, ["a", "b"])
res2 = realize(z2, 3)
print("Z^2 ball of radius 3:", len(res2.elements), "elements;",
      "recovery ok:", check_recovery(res2, z2).ok)

# a group of PL maps, re-realized through its own ordering
pl = PLSubgroup([PLHomeo.translation(1), pl_bump((0, 1), F(1, 4))], StandardOrdering())
res3 = realize(pl, 2)
report = check_recovery(res3, pl)
print("PL subgroup ball:", len(res3.elements), "elements;",
      report.action_pairs_checked, "action pairs checked; ok:", report.ok)
