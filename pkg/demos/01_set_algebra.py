"""Tour of the exact set algebra.

Every value below is an infinite set of integers represented exactly:
a finite window plus a periodic rule on each side.  All arithmetic is
closed over this class, so nothing is ever truncated or sampled.
"""

from linset import EPSet

print("=" * 64)
print("Building blocks")
print("=" * 64)

z = EPSet.integers()
n = EPSet.naturals()
odds_up = EPSet.half_line(1, 2, 1)       # 1, 3, 5, ...
evens = EPSet.residue_class(0, 2)        # ..., -2, 0, 2, ...
finite = EPSet.from_iterable([0, 1, 5])

for s in (z, n, odds_up, evens, finite):
    print("%-18s elements near 0: %s" % (s.to_expr(), s.elements_in(-6, 8)))

print()
print("=" * 64)
print("Exact sums of infinite sets")
print("=" * 64)

# adding an up-set and a down-set saturates into full residue classes
up = EPSet.half_line(0, 2, 0)
down = EPSet.half_line_down(0, 3, 0)
print("(%s) + (%s) = %s" % (up.to_expr(), down.to_expr(), (up + down).to_expr()))

a = EPSet.half_line(1, 3, 1)
print("(%s) + (%s) = %s" % (a.to_expr(), a.to_expr(), (a + a).to_expr()))

# canonical forms make equality decidable: same set, two routes
left = a.dilate(3) + a.negate()
right = EPSet.residue_class(2, 3)
print("3A - A == AP(2,3):", left == right)

print()
print("=" * 64)
print("Measurements")
print("=" * 64)

for s in (a, evens, EPSet(7, 0, -1, 0, 0, 0b0011111)):
    print("%-22s density=%s  max gap=%s" % (s.to_expr(), s.upper_density(), s.max_gap()))
