"""Structure of linear operations on residue sets modulo g.

Centerpiece: subsets U of Z/gZ with |aU + bU| = |U| for coprime a, b
decompose as U = V + X + H with V inside a1*G, X inside b1*G and
H = a1*b1*G the period subgroup.  ``decompose_equality_case`` builds that
decomposition constructively and returns a verifiable certificate.

Convention note: the decomposition places V in a1*G and X in b1*G with
a1 | gcd(g, a) and b1 | gcd(g, b); all certificates are checked against
that convention before being returned.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .epset import EPSet


def totient(n: int) -> int:
    out = n
    p = 2
    m = n
    while p * p <= m:
        if m % p == 0:
            out -= out // p
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        out -= out // m
    return out


def multiplicative_order(x: int, n: int) -> int:
    if n == 1:
        return 1
    if math.gcd(x, n) != 1:
        raise ValueError("order undefined: %d not invertible mod %d" % (x, n))
    k, acc = 1, x % n
    while acc != 1:
        acc = acc * x % n
        k += 1
    return k


@dataclass(frozen=True)
class ResidueSet:
    """A subset of Z/gZ."""

    modulus: int
    elems: frozenset

    def __init__(self, modulus, elems):
        if modulus < 1:
            raise ValueError("modulus must be positive")
        elems = frozenset(x % modulus for x in elems)
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "elems", elems)

    def __len__(self):
        return len(self.elems)

    def __contains__(self, x):
        return x % self.modulus in self.elems

    def __iter__(self):
        return iter(sorted(self.elems))

    def mask(self) -> int:
        out = 0
        for x in self.elems:
            out |= 1 << x
        return out

    @classmethod
    def from_mask(cls, modulus: int, mask: int) -> "ResidueSet":
        return cls(modulus, [i for i in range(modulus) if (mask >> i) & 1])

    @classmethod
    def subgroup(cls, modulus: int, d: int) -> "ResidueSet":
        """The subgroup d*G = {0, d, 2d, ...}; d must divide the modulus."""
        if modulus % d:
            raise ValueError("%d does not divide %d" % (d, modulus))
        return cls(modulus, range(0, modulus, d))

    def translate(self, c: int) -> "ResidueSet":
        return ResidueSet(self.modulus, [x + c for x in self.elems])

    def to_expr(self) -> str:
        return "mod %d {%s}" % (self.modulus, ",".join(str(x) for x in self))

    def __str__(self):
        return self.to_expr()


def gamma_mod(u: ResidueSet, a: int, b: int) -> ResidueSet:
    """{a*x + b*y mod g : x, y in U}."""
    g = u.modulus
    au = {a * x % g for x in u.elems}
    out = set()
    for y in u.elems:
        c = b * y % g
        out.update((x + c) % g for x in au)
    return ResidueSet(g, out)


def period_shift(u: ResidueSet) -> int:
    """Smallest positive d (a divisor of g) with U + d = U."""
    if not u.elems:
        raise ValueError("period of the empty residue set is undefined")
    g = u.modulus
    d = 1
    while g % d or u.translate(d) != u:
        d += 1
    return d


def period(u: ResidueSet) -> ResidueSet:
    """The period subgroup P(U): the maximal H with U + H = U."""
    return ResidueSet.subgroup(u.modulus, period_shift(u))


def cardinality_check(u: ResidueSet, a: int, b: int):
    """(|U|, |aU + bU|, |aU+bU| >= |U|); requires gcd(a, b) = 1."""
    if math.gcd(a, b) != 1:
        raise ValueError("coefficients must be coprime")
    image = gamma_mod(u, a, b)
    return len(u), len(image), len(image) >= len(u)


@dataclass(frozen=True)
class DecompositionCertificate:
    """Witness of U = translation + V + X + H with multiplicative sizes."""

    modulus: int
    a: int
    b: int
    translation: int
    a1: int
    b1: int
    v: tuple
    x: tuple
    subgroup_step: int  # H = {0, step, 2*step, ...}

    def subgroup(self) -> ResidueSet:
        return ResidueSet.subgroup(self.modulus, self.subgroup_step)

    def reconstruct(self) -> ResidueSet:
        g = self.modulus
        out = set()
        for v in self.v:
            for x in self.x:
                for h in range(0, g, self.subgroup_step):
                    out.add((self.translation + v + x + h) % g)
        return ResidueSet(g, out)

    def verify(self, u: ResidueSet) -> bool:
        g = self.modulus
        h_size = g // self.subgroup_step
        if self.reconstruct() != u:
            return False
        if len(u) != len(self.v) * len(self.x) * h_size:
            return False
        if math.gcd(g, self.a) % self.a1 or math.gcd(g, self.b) % self.b1:
            return False
        if any(v % self.a1 for v in self.v) or any(x % self.b1 for x in self.x):
            return False
        return self.subgroup_step == self.a1 * self.b1


@dataclass(frozen=True)
class DecompositionFailure:
    hypothesis: str


def _coprime_split(g: int, a: int) -> int:
    """Product of the maximal prime powers of g over primes dividing a."""
    out = 1
    m = g
    p = 2
    while p * p <= m:
        if m % p == 0:
            power = 1
            while m % p == 0:
                m //= p
                power *= p
            if a % p == 0:
                out *= power
        p += 1
    if m > 1 and a % m == 0:
        out *= m
    return out


def decompose_equality_case(u: ResidueSet, a: int, b: int):
    """Decompose an equality instance |aU + bU| = |U|, or report why not.

    Returns a DecompositionCertificate (already verified) or a
    DecompositionFailure naming the violated hypothesis.  U is translated
    so that 0 is a member; the certificate records the translation.
    """
    if math.gcd(a, b) != 1:
        return DecompositionFailure("coefficients not coprime")
    if not u.elems:
        return DecompositionFailure("empty set")
    g = u.modulus
    translation = min(u.elems)
    u0 = u.translate(-translation)
    if math.gcd(g, math.gcd(*u0.elems)) != 1:
        return DecompositionFailure("contained in a proper subgroup")
    if len(gamma_mod(u, a, b)) != len(u):
        return DecompositionFailure("cardinality not preserved")

    step = period_shift(u0)       # H = step*G, |H| = g // step
    g1 = step                     # order of G / H
    u1 = sorted({x % g1 for x in u0.elems})
    a1 = math.gcd(g1, a)
    b1 = math.gcd(g1, b)
    if a1 * b1 != g1:
        return DecompositionFailure("quotient modulus does not split over a and b")

    a_side = _coprime_split(g1, a)
    b_side = g1 // a_side
    # under the verified split the constructive side equals gcd(g1, a)
    if a_side != a1 or b_side != b1:
        return DecompositionFailure("quotient modulus does not split over a and b")

    comps = {}
    for x in u1:
        comps.setdefault(x % b1, []).append(x)
    sizes = {len(xs) for xs in comps.values()}
    if len(sizes) != 1:
        return DecompositionFailure("components have unequal sizes")
    # the component of 0 is the base; every other component must be a
    # translate of it by one of its own elements (unique since the base
    # is aperiodic within its subgroup)
    base = frozenset(comps[0])
    reps = []
    for k in sorted(comps):
        xs = comps[k]
        delta = None
        for cand in xs:
            if frozenset((x - cand) % g1 for x in xs) == base:
                delta = cand
                break
        if delta is None:
            return DecompositionFailure("components are not translates of each other")
        reps.append(delta)

    v = tuple(sorted(reps))
    x_part = tuple(sorted(base))
    if any(val % a1 for val in v):
        return DecompositionFailure("representatives escape the a-side subgroup")
    if any(val % b1 for val in x_part):
        return DecompositionFailure("base component escapes the b-side subgroup")

    cert = DecompositionCertificate(
        modulus=g, a=a, b=b, translation=translation,
        a1=a1, b1=b1, v=v, x=x_part, subgroup_step=g1,
    )
    if not cert.verify(u):
        return DecompositionFailure("reconstruction mismatch")
    return cert


@dataclass
class ResidueOrbit:
    states: list
    onset: int
    length: int
    cardinality_preserved: bool
    order_divisibility: bool | None  # None when the structural hypotheses fail


def residue_orbit(u: ResidueSet, a: int, b: int, max_steps: int | None = None) -> ResidueOrbit:
    """Iterate U -> aU + bU to its cycle (guaranteed within 2^g steps).

    When some cycle member contains 0, generates the full group and
    preserves cardinality, the cycle length must divide phi(a)*phi(b);
    that check's outcome is recorded (None when no member qualifies).
    """
    if math.gcd(a, b) != 1:
        raise ValueError("coefficients must be coprime")
    states = [u]
    seen = {u: 0}
    cur = u
    steps = 0
    while True:
        cur = gamma_mod(cur, a, b)
        steps += 1
        if cur in seen:
            onset = seen[cur]
            length = len(states) - onset
            break
        if max_steps is not None and steps >= max_steps:
            raise RuntimeError("orbit did not close within max_steps")
        seen[cur] = len(states)
        states.append(cur)

    cycle = states[onset:]
    preserved = all(len(s) == len(cycle[0]) for s in cycle) and \
        len(gamma_mod(cycle[0], a, b)) == len(cycle[0])
    divisibility = None
    g = u.modulus
    for s in cycle:
        if not s.elems or 0 not in s.elems:
            continue
        if math.gcd(g, math.gcd(*s.elems)) != 1:
            continue
        if len(gamma_mod(s, a, b)) == len(s):
            divisibility = (totient(a) * totient(b)) % length == 0
            break
    return ResidueOrbit(states, onset, length, preserved, divisibility)


@dataclass
class AbsorptionReport:
    applicable: bool
    failed_hypothesis: str | None
    containment_step: int | None
    holds: bool | None


def nonperiodic_absorption_check(x: ResidueSet, a: int, b: int) -> AbsorptionReport:
    """For 0 in X aperiodic with aX + bX = aX: X sits in (g/gcd(g,b))*G."""
    if math.gcd(a, b) != 1:
        raise ValueError("coefficients must be coprime")
    g = x.modulus
    if 0 not in x.elems:
        return AbsorptionReport(False, "0 not a member", None, None)
    if period_shift(x) != g:
        return AbsorptionReport(False, "set is periodic", None, None)
    ax = ResidueSet(g, [a * t % g for t in x.elems])
    if gamma_mod(x, a, b) != ax:
        return AbsorptionReport(False, "aX + bX differs from aX", None, None)
    step = g // math.gcd(g, b)
    holds = all(t % step == 0 for t in x.elems)
    return AbsorptionReport(True, None, step, holds)


@dataclass
class DifferencePeriodicityReport:
    modulus: int
    semi_periodic_inputs: bool
    fully_periodic: bool
    difference: EPSet


def difference_fully_periodic_check(a_set: EPSet, g: int, b_set: EPSet,
                                    g2: int) -> DifferencePeriodicityReport:
    """A semi-periodic mod g minus B semi-periodic mod g2 is fully periodic
    modulo gcd(g, g2); verified by exact computation."""
    ok_a = a_set.translate(g).subset_of(a_set)
    ok_b = b_set.translate(g2).subset_of(b_set)
    if not (ok_a and ok_b):
        raise ValueError("inputs must be semi-periodic for the stated moduli")
    d = math.gcd(g, g2)
    diff = a_set.minkowski(b_set.negate())
    fully = diff == diff.translate(d)
    return DifferencePeriodicityReport(d, True, fully, diff)


# ---------------------------------------------------------------------------
# Vectorized sweeps over subsets of Z/gZ.  Subsets are uint32/uint64 masks;
# the image masks of U -> aU + bU are computed with g**2 elementwise passes,
# which keeps exhaustive runs over all 2^g subsets tractable.

def _image_masks(masks: np.ndarray, g: int, a: int, b: int) -> np.ndarray:
    dt = masks.dtype
    au = np.zeros_like(masks)
    bu = np.zeros_like(masks)
    one = np.array(1, dtype=dt)
    for x in range(g):
        sel = (masks >> np.array(x, dtype=dt)) & one
        au |= sel << np.array(a * x % g, dtype=dt)
        bu |= sel << np.array(b * x % g, dtype=dt)
    out = np.zeros_like(masks)
    full = np.array((1 << g) - 1, dtype=dt)
    zero = np.array(0, dtype=dt)
    for y in range(g):
        sel = ((bu >> np.array(y, dtype=dt)) & one).astype(bool)
        if y == 0:
            rot = au
        else:
            rot = ((au << np.array(y, dtype=dt)) |
                   (au >> np.array(g - y, dtype=dt))) & full
        out |= np.where(sel, rot, zero)
    return out


def _popcounts(masks: np.ndarray) -> np.ndarray:
    return np.bitwise_count(masks)


def cardinality_sweep(g: int, a: int, b: int, masks: np.ndarray | None = None):
    """Check |aU + bU| >= |U| over many subsets at once.

    With ``masks=None`` sweeps all 2^g subsets.  Returns (all_hold,
    equality_masks): equality_masks lists the subsets (as ints) where
    |aU + bU| == |U| with U nonempty.
    """
    dt = np.uint32 if g <= 16 else np.uint64
    if masks is None:
        masks = np.arange(1 << g, dtype=dt)
    else:
        masks = masks.astype(dt)
    images = _image_masks(masks, g, a, b)
    pc_u = _popcounts(masks)
    pc_im = _popcounts(images)
    all_hold = bool(np.all(pc_im >= pc_u))
    eq = masks[(pc_im == pc_u) & (pc_u > 0)]
    return all_hold, [int(m) for m in eq]
