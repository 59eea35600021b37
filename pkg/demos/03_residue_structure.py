"""Structure of aU + bU on residue sets mod g.

For coprime a, b the image never shrinks, and the equality cases have a
rigid product structure U = V + X + H that the decomposer recovers and
certifies.
"""

from linset import ResidueSet, cardinality_check, decompose_equality_case, gamma_mod, period, residue_orbit

u = ResidueSet(12, [0, 3, 4, 6, 7, 10])
print("U =", u)
print("4U + 3U =", gamma_mod(u, 4, 3))
print("sizes:", cardinality_check(u, 4, 3))
print("period subgroup:", period(u))

print()
cert = decompose_equality_case(u, 4, 3)
print("decomposition certificate:")
print("  a1=%d b1=%d" % (cert.a1, cert.b1))
print("  V =", list(cert.v))
print("  X =", list(cert.x))
print("  H =", cert.subgroup())
print("  reconstructs U:", cert.reconstruct() == u)

print()
print("orbit of U under (4,3):")
orb = residue_orbit(u, 4, 3)
for k, s in enumerate(orb.states):
    print("  k=%d  %s" % (k, s))
print("cycle onset %d, length %d; length divides phi(4)*phi(3): %s"
      % (orb.onset, orb.length, orb.order_divisibility))

print()
print("a failing instance is reported, never silently decomposed:")
bad = decompose_equality_case(ResidueSet(6, [0, 1, 2]), 5, 1)
print(" ", bad)
