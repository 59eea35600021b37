"""Iterated positive difference sets and their stability times.

D+(A) = {x - y : x >= y in A}.  Sets of positive density stabilize after
finitely many iterations; the time is controlled by two classical bounds
that the exact engine lets us compare against reality.
"""

from fractions import Fraction

from linset import EPSet, dplus, stability_time, stability_time_bounds

print("%-16s %-10s %-4s %-14s %-14s" % ("set", "density", "T", "refined bound", "doubling bound"))
for r, g in ((1, 2), (1, 3), (1, 5), (1, 10), (2, 5), (3, 7)):
    a = EPSet(g, 0, -1, 0, 0, (1 << r) - 1)   # {0..r-1} + gN
    t, its = stability_time(a)
    st, rz = stability_time_bounds(Fraction(r, g))
    print("%-16s %-10s %-4d %-14.3f %-14.3f" % (a.to_expr(), Fraction(r, g), t, rz, st))

print()
print("one full run, step by step:")
a = EPSet.half_line(1, 2, 1)
t, its = stability_time(a)
for k, s in enumerate(its):
    print("  D+_%d = %s" % (k, s.to_expr()))
print("  fixed point after T = %d steps" % t)

print()
print("dense sets collapse immediately (density above 1/2):")
a = EPSet(3, 0, -1, 0, 0, 0b011)
print("  A =", a.to_expr(), " D+(A) =", dplus(a).to_expr())
