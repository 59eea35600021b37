"""The iteration engine: exact orbits of composed linear operations,
distinct-iterate counting, full-periodicity onset, and the verifier for
the bounded-coefficient stabilization guarantee."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .epset import EPSet, WindowCapExceeded
from .linops import OpSequence, apply_linear_op


@dataclass
class IterationTrace:
    """Record of an exact orbit.

    ``iterates[0]`` is the input.  ``cycle`` is only claimed when the
    operation sequence is constant over the detected span (repeating sets
    under varying operations are not periodic dynamics).  ``closed`` means
    every future iterate provably equals a recorded one; ``closure`` is
    the (onset, length) of the replayed stretch in that case.
    """

    iterates: list
    distinct_count: int
    cycle: tuple | None
    periodicity_onset: tuple | None
    resource_flag: str | None
    closed: bool
    closure: tuple | None


def iterate_trace(s: EPSet, seq: OpSequence, max_k: int = 256) -> IterationTrace:
    iterates = [s]
    p = len(seq) if seq.cyclic and len(seq) else None
    first_seen = {s: 0}
    seen_states = {(s, 0): 0} if p else None
    cycle = None
    closed = False
    closure = None
    resource = None
    horizon = max_k if seq.cyclic else min(max_k, len(seq))
    k = 0
    while k < horizon:
        try:
            nxt = apply_linear_op(seq.op_at(k), iterates[-1])
        except WindowCapExceeded:
            resource = "window-cap"
            break
        k += 1
        iterates.append(nxt)
        if nxt in first_seen:
            i = first_seen[nxt]
            if cycle is None and seq.constant_from(i):
                cycle = (i, k - i)
                closed = True
                closure = (i, k - i)
                break
        else:
            first_seen[nxt] = k
        if p is not None:
            state = (nxt, k % p)
            if state in seen_states:
                closed = True
                closure = (seen_states[state], k - seen_states[state])
                break
            seen_states[state] = k

    trace = IterationTrace(
        iterates=iterates,
        distinct_count=len(set(iterates)),
        cycle=cycle,
        periodicity_onset=None,
        resource_flag=resource,
        closed=closed,
        closure=closure,
    )
    trace.periodicity_onset = full_periodicity_onset(trace)
    return trace


def t_stability_count(trace: IterationTrace) -> int:
    """Minimal t for which the traced family {X} with its iterates has at
    most t members; a lower bound when the trace is not closed."""
    return trace.distinct_count


def full_periodicity_onset(trace: IterationTrace, g_max: int | None = None):
    """Smallest (k0, g): every recorded iterate from k0 on satisfies
    S + g == S, with g minimal (the lcm of the suffix periods); g is
    required to stay within g_max when one is given."""
    periods = [s.full_period() for s in trace.iterates]
    last_bad = -1
    for i, q in enumerate(periods):
        if q is None:
            last_bad = i
    k0 = last_bad + 1
    if k0 >= len(periods):
        return None
    while k0 < len(periods):
        g = math.lcm(*periods[k0:])
        if g_max is None or g <= g_max:
            return (k0, g)
        k0 += 1
    return None


def _floor_log2(x: Fraction) -> int:
    if x <= 0:
        raise ValueError("log of a nonpositive value")
    p, q = x.numerator, x.denominator
    if p >= q:
        e = 0
        while (q << (e + 1)) <= p:
            e += 1
        return e
    e = -1
    while (p << -e) < q:
        e -= 1
    return e


@dataclass
class StabilizationReport:
    """Outcome of the bounded-coefficient stabilization check.

    PASS means: some modulus g at most L^(K+1) makes every traced iterate
    from step K on fully periodic, and the number of distinct iterates is
    at most K + g^3 L^2.  ``closed`` distinguishes an exact infinite-orbit
    verdict from one over a finite traced horizon.
    """

    beta: Fraction
    K: int
    L: int
    c: int
    g_bound: int
    observed_k0: int | None
    observed_g: int | None
    stable_g: int | None
    distinct_count: int
    bound: int | None
    verdict: str
    resource_flag: str | None
    closed: bool
    trace: IterationTrace

    def to_json_dict(self) -> dict:
        return {
            "schema": 1,
            "beta": str(self.beta),
            "K": self.K,
            "g_bound": str(self.g_bound),
            "observed_k0": self.observed_k0,
            "observed_g": self.observed_g,
            "distinct_count": self.distinct_count,
            "bound": self.bound,
            "verdict": self.verdict,
            "resource_flag": self.resource_flag,
        }


def verify_stabilization(a: EPSet, seq: OpSequence, bound: int | None = None,
                         c: int = 10, max_steps: int = 20000) -> StabilizationReport:
    """Verify periodic stabilization of iterated bounded operations on a
    positive-density set.

    K = floor(c * (log2(beta) + L)) with beta the reciprocal density is
    computed exactly; the orbit is traced until it provably closes (state
    repetition under a cyclic sequence, or a constant-span cycle) or the
    step limit is hit.
    """
    dens = a.upper_density()
    if dens <= 0:
        raise ValueError("the input set must have positive upper density")
    el = max((max(op.a, op.b) for op in seq), default=2)
    L = bound if bound is not None else max(seq.bound, 2)
    if L < 2:
        raise ValueError("the coefficient bound L must be at least 2")
    if el > L:
        raise ValueError("sequence coefficients exceed the declared bound")
    if not seq.all_coprime():
        raise ValueError("every operation must have coprime coefficients")
    if c < 1:
        raise ValueError("the constant c must be a positive integer")

    beta = 1 / dens
    K = c * L + _floor_log2(beta ** c)
    g_bound = L ** (K + 1)

    trace = iterate_trace(a, seq, max_k=max_steps)
    its = trace.iterates
    onset_data = full_periodicity_onset(trace)
    observed_k0, observed_g = onset_data if onset_data else (None, None)

    if trace.resource_flag:
        return StabilizationReport(beta, K, L, c, g_bound, observed_k0,
                                   observed_g, None, trace.distinct_count,
                                   None, "INCONCLUSIVE", trace.resource_flag,
                                   False, trace)

    if trace.closed:
        o, lam = trace.closure
        cycle_sets = set(its[o:o + lam])
        fam = set(its[K:]) | cycle_sets if K < len(its) else cycle_sets
        periods = [f.full_period() for f in fam]
        if any(q is None for q in periods):
            return StabilizationReport(beta, K, L, c, g_bound, observed_k0,
                                       observed_g, None, trace.distinct_count,
                                       None, "FAIL", None, True, trace)
        g_all = math.lcm(*periods)
        bound_t = K + g_all ** 3 * L ** 2
        ok = g_all <= g_bound and trace.distinct_count <= bound_t
        return StabilizationReport(beta, K, L, c, g_bound, observed_k0,
                                   observed_g, g_all, trace.distinct_count,
                                   bound_t, "PASS" if ok else "FAIL",
                                   None, True, trace)

    # no closure: report over the horizon if it is long enough to be
    # meaningful, otherwise inconclusive
    if observed_g is not None and observed_k0 is not None and observed_k0 <= K:
        g_all = observed_g
        bound_t = K + g_all ** 3 * L ** 2
        if len(its) > K + bound_t and g_all <= g_bound \
                and trace.distinct_count <= bound_t:
            return StabilizationReport(beta, K, L, c, g_bound, observed_k0,
                                       observed_g, g_all, trace.distinct_count,
                                       bound_t, "PASS", None, False, trace)
    return StabilizationReport(beta, K, L, c, g_bound, observed_k0,
                               observed_g, None, trace.distinct_count, None,
                               "INCONCLUSIVE", None, False, trace)
