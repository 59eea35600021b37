"""The stabilization verifier.

Iterating any bounded sequence of coprime operations a_j X - b_j X on a
set of positive upper density must end in full periodicity mod some
g <= L^(K+1) from step K on, with at most K + g^3 L^2 distinct iterates.
The verifier traces orbits exactly until they provably close and checks
both halves of that claim.
"""

import json

from linset import verify_stabilization
from linset.cli import parse_ops, parse_set_expression, random_ops

cases = [
    ("AP+(1,3,1)", "cyc[(3,1)]"),
    ("U(AP(0,4),AP(1,4))", "cyc[(2,1)(3,2)]"),
    ("U({0,1,5},AP+(2,7,9))", "cyc[(5,4)(4,3)]"),
    ("AP+(2,5,2)", str(random_ops(12, 5, seed=3))),
]

for set_expr, ops_expr in cases:
    s = parse_set_expression(set_expr)
    seq = parse_ops(ops_expr)
    rep = verify_stabilization(s, seq, bound=5, c=10)
    print("=" * 64)
    print("A   =", set_expr)
    print("ops =", ops_expr if len(ops_expr) < 46 else ops_expr[:43] + "...")
    print(json.dumps(rep.to_json_dict(), sort_keys=True, indent=2))
    print("orbit:")
    for k, it in enumerate(rep.trace.iterates[:8]):
        print("  k=%d  %s" % (k, it.to_expr()))
    if len(rep.trace.iterates) > 8:
        print("  ... (%d recorded iterates)" % len(rep.trace.iterates))
