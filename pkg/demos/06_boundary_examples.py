"""Boundary phenomena: where stability genuinely needs its hypotheses.

Three constructions mark the edges: a one-frequency Bohr truncation whose
first iterates are provably distinct, a sparse interval union whose
difference set has unboundedly growing gaps, and an operation sequence
whose iterates flip forever without ever being eventually periodic.
"""

from fractions import Fraction

from linset import EPSet, apply_linear_op
from linset.constructions import (
    bohr_truncation,
    finite_gamma,
    interval_gap_profile,
    parity_flip_sequence,
    sqrt2_minus_one,
)

print("=" * 64)
print("Bohr truncation: distinct early iterates at desk scale")
print("=" * 64)
n = 10_000
alpha = sqrt2_minus_one(4 * n)
trunc = bohr_truncation(alpha, Fraction(1, 6), n)
s0 = list(trunc.elems)
s1 = finite_gamma(s0, 1, 1)
s2 = finite_gamma(s1, 2, 1)
print("density %.4f (target 1/6 = %.4f)" % (float(trunc.density()), 1 / 6))
print("sizes of A, (1,1)A, (2,1)(1,1)A:", len(s0), len(s1), len(s2))
print("pairwise distinct:", len({tuple(s0), tuple(s1), tuple(s2)}) == 3)

print()
print("=" * 64)
print("Sparse interval union: gaps of 2A - A grow without bound")
print("=" * 64)
xs = [i ** i for i in range(1, 7)]
for i, gap in interval_gap_profile(xs, Fraction(1, 5), 2, 1):
    print("  blocks <= %d: max gap %d" % (i, gap))

print()
print("=" * 64)
print("Parity flips: stable family, never eventually periodic")
print("=" * 64)
bits = [1, 0, 1, 1, 0, 0, 1]
fx = parity_flip_sequence(bits)
cur = EPSet.residue_class(1, 3)
print("bits:", "".join(map(str, bits)), " ops:", fx.seq)
for k, op in enumerate(fx.seq, start=1):
    cur = apply_linear_op(op, cur)
    ok = cur == fx.predictions[k]
    print("  k=%d  %s  (predicted %s)%s"
          % (k, cur.to_expr(), fx.predictions[k].to_expr(), "" if ok else "  MISMATCH"))
