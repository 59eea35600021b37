"""Orbits of X -> aX - bX on arithmetic progressions.

Two behaviours bracket the theory.  With gcd(a, b) = 1 and a > b + 1 the
progression {ab*m + 1} cycles through full residue classes and never
stabilizes; with a common factor d the iterates of N drain into d^k * Z
and diverge in scale instead.
"""

from linset import OpSequence, iterate_trace
from linset.constructions import ap_counterexample, scaled_divergence

print("=" * 64)
print("Coprime case: cycling residue classes")
print("=" * 64)

for a, b in ((3, 1), (5, 3), (2, 1)):
    orbit = ap_counterexample(a, b)
    tr = iterate_trace(orbit.start, OpSequence.repeat(a, b, 1, cyclic=True), max_k=12)
    print("\n(a,b)=(%d,%d)  start %s  stable=%s  cycle length %d"
          % (a, b, orbit.start.to_expr(), orbit.stable, orbit.cycle_length))
    for k, it in enumerate(tr.iterates[:6]):
        mark = "" if k == 0 or it == orbit.predicted(k) else "  <- MISMATCH"
        print("  k=%d  %s%s" % (k, it.to_expr(), mark))

print()
print("=" * 64)
print("Common factor case: scale divergence")
print("=" * 64)

rep = scaled_divergence(2, 1, 1, steps=6)
for k, it in enumerate(rep.iterates):
    print("  k=%d  %-14s divisible by 2^k: %s  min |x|>0: %s"
          % (k, it.to_expr(), rep.divisible[k], rep.min_nonzero_abs[k]))
print("all iterates distinct:", rep.all_distinct)
