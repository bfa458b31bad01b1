"""
Exact piecewise-linear maps
===========================

Build a few increasing PL maps of the line, compose and invert them, and
split a map into the part above the diagonal and the part below it.
Everything is a Fraction, so every equality below is exact.
"""

from fractions import Fraction as F

from plorders import PLHomeo, compose, invert, minus_part, pl_bump, plus_part

# a translation and a bump that lifts (0, 1) by at most 1/4
shift = PLHomeo.translation(1)
bump = pl_bump((0, 1), F(1, 4))
print("shift:", shift)
print("bump: ", bump)

# composition is function composition, applied right to left
f = compose(shift, bump)
print("shift after bump at 1/2:", f(F(1, 2)))

# inverses are exact
assert compose(f, invert(f)).is_identity()

# a map that goes up on (0, 1) and down on (1, 2)
g = compose(pl_bump((0, 1), F(1, 4)), pl_bump((1, 2), F(-1, 4)))
print("above the diagonal:", g.above)
print("below the diagonal:", g.below)

# it factors into its upward and downward parts, in either order
up, down = plus_part(g), minus_part(g)
assert compose(up, down) == g == compose(down, up)
print("upward part:  ", up)
print("downward part:", down)
