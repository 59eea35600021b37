"""Exact algebra of eventually periodic two-sided integer sets.

An EPSet stores a finite explicit window together with one periodic
membership rule for everything below the window and one for everything
above it.  This class of sets is closed under negation, translation,
dilation, union, Minkowski sum and nonnegative restriction, so iterated
maps X -> aX - bX can be computed exactly on infinite sets.

All values are canonical (minimal period, tightest window), hence
equality of EPSet values is equality of the sets they denote.
"""

from __future__ import annotations

import math
import os
from fractions import Fraction

DEFAULT_WINDOW_CAP = 1 << 20

_window_cap = int(os.environ.get("LINSET_WINDOW_CAP", DEFAULT_WINDOW_CAP))


class WindowCapExceeded(Exception):
    """An operation needed a larger explicit window than the configured cap.

    Raised instead of degrading to an approximation; orbits of sets that
    never settle into periodic tails grow geometrically and hit this.
    """

    def __init__(self, requested, cap):
        super().__init__(
            "operation needs a window of %d positions, cap is %d" % (requested, cap)
        )
        self.requested = requested
        self.cap = cap


def window_cap() -> int:
    return _window_cap


def set_window_cap(cap: int) -> None:
    global _window_cap
    if cap <= 0:
        raise ValueError("window cap must be positive")
    _window_cap = cap


# ---------------------------------------------------------------------------
# bitmask helpers (windows and residue sets are plain ints, bit i <-> value i)

def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _rotate(mask: int, shift: int, width: int) -> int:
    # bit r of the result equals bit (r - shift) mod width of the input
    shift %= width
    if shift == 0:
        return mask
    full = (1 << width) - 1
    return ((mask << shift) | (mask >> (width - shift))) & full


def _reflect(mask: int, width: int) -> int:
    # bit r of the result equals bit (-r) mod width of the input
    out = mask & 1
    for r in _bits(mask >> 1):
        out |= 1 << (width - 1 - r)
    return out


def _reverse(mask: int, width: int) -> int:
    # plain bit reversal over a fixed width
    out = 0
    for i in _bits(mask):
        out |= 1 << (width - 1 - i)
    return out


def _periodic_fill(classes: int, m: int, start: int, length: int) -> int:
    """Bits i in [0, length) set iff (start + i) mod m is a set residue."""
    if length <= 0 or classes == 0:
        return 0
    block = _rotate(classes, (-start) % m, m)
    filled = block
    have = m
    while have < length:
        filled |= filled << have
        have *= 2
    return filled & ((1 << length) - 1)


def _divisors(n: int) -> list:
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i * i != n:
                large.append(n // i)
        i += 1
    return small + large[::-1]


# ---------------------------------------------------------------------------


class EPSet:
    """An eventually periodic two-sided set of integers.

    Membership is total:

        x in S  iff  x < lo      and bit (x mod period) of neg_tail,
                 or  lo <= x <= hi and bit (x - lo) of window,
                 or  x > hi      and bit (x mod period) of pos_tail.

    ``window`` is a bitmask over [lo, hi]; ``neg_tail``/``pos_tail`` are
    residue bitmasks mod ``period``.  The constructor accepts any valid
    representation and canonicalizes it: the period is minimized, the
    window is trimmed so its end bits disagree with the adjacent tail
    rule, and fully periodic sets are normalized to an empty window at
    lo=0.  Values are immutable; do not mutate fields after creation.
    """

    __slots__ = ("period", "lo", "hi", "window", "neg_tail", "pos_tail", "_hash")

    def __init__(self, period, lo, hi, window, neg_tail, pos_tail):
        if period < 1:
            raise ValueError("period must be a positive integer")
        if lo > hi + 1:
            raise ValueError("window bounds must satisfy lo <= hi + 1")
        width = hi - lo + 1
        cap = _window_cap
        if width > cap or period > cap:
            raise WindowCapExceeded(max(width, period), cap)
        if window < 0 or (window >> width):
            raise ValueError("window bits outside [lo, hi]")
        full = (1 << period) - 1
        if neg_tail < 0 or pos_tail < 0 or (neg_tail & ~full) or (pos_tail & ~full):
            raise ValueError("tail residues outside [0, period)")

        # minimal modulus representing both tails
        d = period
        for div in _divisors(period):
            if div == period:
                break
            if (_rotate(neg_tail, div, period) == neg_tail
                    and _rotate(pos_tail, div, period) == pos_tail):
                d = div
                break
        sub = (1 << d) - 1
        neg = neg_tail & sub
        pos = pos_tail & sub

        neg_fill = _periodic_fill(neg, d, lo, width)
        pos_fill = _periodic_fill(pos, d, lo, width)
        bad_neg = window ^ neg_fill
        bad_pos = window ^ pos_fill

        if bad_neg == 0 and neg == pos:
            # fully periodic (covers the empty set and all of Z)
            self.period, self.lo, self.hi = d, 0, -1
            self.window, self.neg_tail, self.pos_tail = 0, neg, pos
            self._hash = None
            return

        diff = neg ^ pos
        if bad_neg:
            new_lo = lo + ((bad_neg & -bad_neg).bit_length() - 1)
        else:
            # window matches the lower rule; first point past hi where rules split
            i = 0
            while not (diff >> ((hi + 1 + i) % d)) & 1:
                i += 1
            new_lo = hi + 1 + i
        if bad_pos:
            new_hi = lo + bad_pos.bit_length() - 1
        else:
            i = 1
            while not (diff >> ((lo - i) % d)) & 1:
                i += 1
            new_hi = lo - i
        new_hi = max(new_hi, new_lo - 1)

        # rebuild window bits on [new_lo, new_hi]; the range sits in [lo, hi + d]
        new_window = 0
        ov_hi = min(new_hi, hi)
        if new_lo <= ov_hi:
            new_window = (window >> (new_lo - lo)) & ((1 << (ov_hi - new_lo + 1)) - 1)
        if new_hi > hi:
            start = max(new_lo, hi + 1)
            new_window |= _periodic_fill(pos, d, start, new_hi - start + 1) << (start - new_lo)

        self.period, self.lo, self.hi = d, new_lo, new_hi
        self.window, self.neg_tail, self.pos_tail = new_window, neg, pos
        self._hash = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def empty(cls) -> "EPSet":
        return cls(1, 0, -1, 0, 0, 0)

    @classmethod
    def integers(cls) -> "EPSet":
        return cls(1, 0, -1, 0, 1, 1)

    @classmethod
    def naturals(cls) -> "EPSet":
        """The nonnegative integers."""
        return cls(1, 0, -1, 0, 0, 1)

    @classmethod
    def from_iterable(cls, xs) -> "EPSet":
        xs = sorted(set(xs))
        if not xs:
            return cls.empty()
        lo, hi = xs[0], xs[-1]
        mask = 0
        for x in xs:
            mask |= 1 << (x - lo)
        return cls(1, lo, hi, mask, 0, 0)

    @classmethod
    def residue_class(cls, r: int, g: int) -> "EPSet":
        """The full two-sided progression r + gZ."""
        if g < 1:
            raise ValueError("modulus must be positive")
        bit = 1 << (r % g)
        return cls(g, 0, -1, 0, bit, bit)

    @classmethod
    def half_line(cls, r: int, g: int, start: int) -> "EPSet":
        """{x : x = r mod g, x >= start}."""
        if g < 1:
            raise ValueError("modulus must be positive")
        return cls(g, start, start - 1, 0, 0, 1 << (r % g))

    @classmethod
    def half_line_down(cls, r: int, g: int, end: int) -> "EPSet":
        """{x : x = r mod g, x <= end}."""
        if g < 1:
            raise ValueError("modulus must be positive")
        return cls(g, end + 1, end, 0, 1 << (r % g), 0)

    # -- basic queries -------------------------------------------------------

    def __contains__(self, x: int) -> bool:
        if x < self.lo:
            return bool((self.neg_tail >> (x % self.period)) & 1)
        if x > self.hi:
            return bool((self.pos_tail >> (x % self.period)) & 1)
        return bool((self.window >> (x - self.lo)) & 1)

    def _key(self):
        return (self.period, self.lo, self.window, self.neg_tail, self.pos_tail)

    def __eq__(self, other):
        if not isinstance(other, EPSet):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._key())
        return self._hash

    def __repr__(self):
        return "EPSet(%s)" % self.to_expr()

    def is_empty(self) -> bool:
        return not (self.window or self.neg_tail or self.pos_tail)

    def is_fully_periodic(self) -> bool:
        """True iff S + period == S (canonical forms make this structural)."""
        return self.lo > self.hi and self.neg_tail == self.pos_tail

    def full_period(self):
        """Minimal g with S + g == S, or None if the set is not fully periodic."""
        return self.period if self.is_fully_periodic() else None

    def min_element(self):
        """Smallest element; None when empty or unbounded below."""
        if self.neg_tail:
            return None
        if self.window:
            return self.lo + ((self.window & -self.window).bit_length() - 1)
        if self.pos_tail:
            x = self.hi + 1
            while (x - self.hi) <= self.period:
                if (self.pos_tail >> (x % self.period)) & 1:
                    return x
                x += 1
        return None

    def max_element(self):
        """Largest element; None when empty or unbounded above."""
        if self.pos_tail:
            return None
        if self.window:
            return self.lo + self.window.bit_length() - 1
        if self.neg_tail:
            x = self.lo - 1
            while (self.lo - x) <= self.period:
                if (self.neg_tail >> (x % self.period)) & 1:
                    return x
                x -= 1
        return None

    def membership_mask(self, a: int, b: int) -> int:
        """Membership bits over [a, b] (bit i <-> a + i)."""
        if b < a:
            return 0
        res = 0
        g = self.period
        if a < self.lo:
            res = _periodic_fill(self.neg_tail, g, a, min(self.lo - a, b - a + 1))
        ov_lo, ov_hi = max(a, self.lo), min(b, self.hi)
        if ov_lo <= ov_hi:
            part = (self.window >> (ov_lo - self.lo)) & ((1 << (ov_hi - ov_lo + 1)) - 1)
            res |= part << (ov_lo - a)
        if b > self.hi:
            start = max(a, self.hi + 1)
            res |= _periodic_fill(self.pos_tail, g, start, b - start + 1) << (start - a)
        return res

    def elements_in(self, a: int, b: int) -> list:
        """Sorted list of the elements within [a, b]."""
        return [a + i for i in _bits(self.membership_mask(a, b))]

    # -- set operations ------------------------------------------------------

    def negate(self) -> "EPSet":
        width = self.hi - self.lo + 1
        g = self.period
        return EPSet(
            g,
            -self.hi,
            -self.lo,
            _reverse(self.window, width) if width > 0 else 0,
            _reflect(self.pos_tail, g),
            _reflect(self.neg_tail, g),
        )

    def __neg__(self):
        return self.negate()

    def translate(self, c: int) -> "EPSet":
        g = self.period
        return EPSet(
            g,
            self.lo + c,
            self.hi + c,
            self.window,
            _rotate(self.neg_tail, c % g, g),
            _rotate(self.pos_tail, c % g, g),
        )

    def dilate(self, n: int) -> "EPSet":
        """{n * x : x in S}.  n == 0 is rejected, not collapsed to {0}."""
        if n == 0:
            raise ValueError("dilation by 0 is not defined for this algebra")
        if n < 0:
            return self.negate().dilate(-n)
        if n == 1:
            return self
        g = self.period
        width = self.hi - self.lo + 1
        if width > 0 and (width - 1) * n + 1 > _window_cap:
            raise WindowCapExceeded((width - 1) * n + 1, _window_cap)
        new_window = 0
        for i in _bits(self.window):
            new_window |= 1 << (n * i)
        new_neg = 0
        for r in _bits(self.neg_tail):
            new_neg |= 1 << (n * r)
        new_pos = 0
        for r in _bits(self.pos_tail):
            new_pos |= 1 << (n * r)
        if width > 0:
            lo, hi = n * self.lo, n * self.hi
        else:
            lo, hi = n * self.lo, n * self.lo - 1
        return EPSet(n * g, lo, hi, new_window, new_neg, new_pos)

    def union(self, other: "EPSet") -> "EPSet":
        if self.is_empty():
            return other
        if other.is_empty():
            return self
        g = math.lcm(self.period, other.period)
        lo = min(self.lo, other.lo)
        hi = max(self.hi, other.hi)
        if hi - lo + 1 > _window_cap or g > _window_cap:
            raise WindowCapExceeded(max(hi - lo + 1, g), _window_cap)
        window = self.membership_mask(lo, hi) | other.membership_mask(lo, hi)
        neg = _periodic_fill(self.neg_tail, self.period, 0, g) | \
            _periodic_fill(other.neg_tail, other.period, 0, g)
        pos = _periodic_fill(self.pos_tail, self.period, 0, g) | \
            _periodic_fill(other.pos_tail, other.period, 0, g)
        return EPSet(g, lo, hi, window, neg, pos)

    def __or__(self, other):
        return self.union(other)

    def subset_of(self, other: "EPSet") -> bool:
        return self.union(other) == other

    def restrict_nonnegative(self) -> "EPSet":
        """S intersected with the nonnegative integers."""
        if self.is_empty():
            return self
        hi = max(self.hi, -1)
        window = self.membership_mask(0, hi) if hi >= 0 else 0
        return EPSet(self.period, 0, hi, window, 0, self.pos_tail)

    def minkowski(self, other: "EPSet") -> "EPSet":
        """Exact sumset {x + y : x in S, y in T}."""
        if self.is_empty() or other.is_empty():
            return EPSet.empty()

        def win(s):
            return (s.lo, s.window) if s.window else None

        def up(s):
            return (s.period, s.pos_tail, s.hi) if s.pos_tail else None

        def down(s):
            return (s.period, s.neg_tail, s.lo) if s.neg_tail else None

        finites, ups, downs, fulls = [], [], [], []

        if win(self) and win(other):
            finites.append(_sum_windows(win(self), win(other)))
        for w, u in ((win(self), up(other)), (win(other), up(self))):
            if w and u:
                ups.append(_sum_window_up(w, u))
        for w, dn in ((win(self), down(other)), (win(other), down(self))):
            if w and dn:
                downs.append(_sum_window_down(w, dn))
        if up(self) and up(other):
            ups.append(_sum_up_up(up(self), up(other)))
        if down(self) and down(other):
            downs.append(_sum_down_down(down(self), down(other)))
        for u, dn in ((up(self), down(other)), (up(other), down(self))):
            if u and dn:
                fulls.append(_sum_cross(u, dn))

        return _combine_pieces(math.lcm(self.period, other.period),
                               finites, ups, downs, fulls)

    def __add__(self, other):
        if isinstance(other, EPSet):
            return self.minkowski(other)
        return NotImplemented

    def __sub__(self, other):
        if isinstance(other, EPSet):
            return self.minkowski(other.negate())
        return NotImplemented

    # -- measurements ---------------------------------------------------------

    def upper_density(self) -> Fraction:
        """Density of the positive side; exact, the limit exists for EPSets."""
        return Fraction(self.pos_tail.bit_count(), self.period)

    def max_gap(self, within=None):
        """Sup of gaps between consecutive elements.

        With ``within=(a, b)`` only elements inside [a, b] are considered.
        Without it the whole set is scanned exactly; returns ``math.inf``
        when the set is bounded above (no next element beyond some point).
        """
        if within is not None:
            a, b = within
            elems = self.elements_in(a, b)
            if len(elems) < 2:
                return 0
            return max(y - x for x, y in zip(elems, elems[1:]))
        if self.is_empty():
            raise ValueError("max_gap of the empty set is undefined")
        if not self.pos_tail:
            return math.inf
        g = self.period
        candidates = [_circular_max_gap(self.pos_tail, g)]
        if self.neg_tail:
            candidates.append(_circular_max_gap(self.neg_tail, g))
            a = self.lo - 3 * g
        else:
            a = self.min_element()
        b = self.hi + 3 * g
        elems = self.elements_in(a, b)
        if len(elems) >= 2:
            candidates.append(max(y - x for x, y in zip(elems, elems[1:])))
        return max(candidates)

    # -- textual form ----------------------------------------------------------

    def to_expr(self) -> str:
        """Canonical expression in the set grammar; round-trips through parsing."""
        if self.is_empty():
            return "{}"
        if self == EPSet.integers():
            return "Z"
        if self == EPSet.naturals():
            return "N"
        g = self.period
        if self.is_fully_periodic():
            parts = ["AP(%d,%d)" % (r, g) for r in _bits(self.pos_tail)]
            return parts[0] if len(parts) == 1 else "U(%s)" % ",".join(parts)
        parts = []
        for r in _bits(self.neg_tail):
            last = self.lo - 1 - ((self.lo - 1 - r) % g)
            parts.append("AP-(%d,%d,%d)" % (last, g, last))
        if self.window:
            elems = ",".join(str(self.lo + i) for i in _bits(self.window))
            parts.append("{%s}" % elems)
        for r in _bits(self.pos_tail):
            first = self.hi + 1 + ((r - self.hi - 1) % g)
            parts.append("AP+(%d,%d,%d)" % (first, g, first))
        return parts[0] if len(parts) == 1 else "U(%s)" % ",".join(parts)


def _circular_max_gap(mask: int, g: int) -> int:
    rs = list(_bits(mask))
    if len(rs) == 1:
        return g
    gaps = [b - a for a, b in zip(rs, rs[1:])]
    gaps.append(rs[0] + g - rs[-1])
    return max(gaps)


# ---------------------------------------------------------------------------
# Minkowski sum pieces.
#
# The sum is assembled from pairwise sums of the three parts of each operand
# (window, upward tail, downward tail).  Each pairwise sum is either finite,
# one-sided periodic beyond an explicitly computed saturation bound, or (for
# opposite tails) a union of full residue classes.  The saturation bound for
# same-direction tails is onset1 + onset2 + m1*m2, a crude but safe coverage
# bound; canonicalization removes the slack afterwards.

def _sum_windows(w1, w2):
    lo1, m1 = w1
    lo2, m2 = w2
    if m1.bit_count() > m2.bit_count():
        lo1, m1, lo2, m2 = lo2, m2, lo1, m1
    width = m1.bit_length() + m2.bit_length() - 1
    if width > _window_cap:
        raise WindowCapExceeded(width, _window_cap)
    out = 0
    full = (1 << width) - 1
    for i in _bits(m1):
        out |= m2 << i
        if out == full:
            break
    return (lo1 + lo2, out)


def _fold_mod(classes: int, m: int, d: int) -> int:
    if d == m:
        return classes
    out = 0
    for r in _bits(classes):
        out |= 1 << (r % d)
    return out


def _class_sum(c1: int, c2: int, d: int) -> int:
    out = 0
    for y in _bits(c2):
        out |= _rotate(c1, y, d)
    return out


def _sum_window_up(w, u):
    """(window) + (upward tail) as an up piece (m, classes, expl_lo, sat_hi, bits)."""
    wlo, wmask = w
    m, classes, h = u
    wmin = wlo + ((wmask & -wmask).bit_length() - 1)
    wmax = wlo + wmask.bit_length() - 1
    expl_lo = h + 1 + wmin
    sat_hi = h + wmax
    span = wmax - wmin
    emask = 0
    if span > 0:
        if span > _window_cap:
            raise WindowCapExceeded(span, _window_cap)
        tail_bits = _periodic_fill(classes, m, h + 1, span)
        full = (1 << span) - 1
        for i in _bits(wmask):
            v = wlo + i
            keep = wmax - v
            if keep > 0:
                emask |= (tail_bits & ((1 << keep) - 1)) << (v - wmin)
            if emask == full:
                break
    shifted = 0
    for s in {(wlo + i) % m for i in _bits(wmask)}:
        shifted |= _rotate(classes, s, m)
    return (m, shifted, expl_lo, sat_hi, emask)


def _sum_up_up(u1, u2):
    m1, c1, h1 = u1
    m2, c2, h2 = u2
    d = math.gcd(m1, m2)
    # beyond first elements plus the Frobenius bound of m1/d, m2/d (scaled
    # by d), every class value r1 + r2 mod d is reachable
    frob = (m1 // d - 1) * (m2 // d - 1) * d
    expl_lo = h1 + h2 + 2
    span = m1 + m2 + frob - 1
    sat_hi = expl_lo + span - 1
    if span > _window_cap:
        raise WindowCapExceeded(span, _window_cap)
    t1 = _periodic_fill(c1, m1, h1 + 1, span)
    t2 = _periodic_fill(c2, m2, h2 + 1, span)
    if t1.bit_count() > t2.bit_count():
        t1, t2 = t2, t1
    emask = 0
    full = (1 << span) - 1
    for j in _bits(t1):
        emask |= (t2 & (full >> j)) << j
        if emask == full:
            break
    q = _class_sum(_fold_mod(c1, m1, d), _fold_mod(c2, m2, d), d)
    return (d, q, expl_lo, sat_hi, emask)


def _reflect_up_piece(piece):
    m, q, expl_lo, sat_hi, emask = piece
    width = sat_hi - expl_lo + 1
    return (m, _reflect(q, m), -sat_hi, -expl_lo, _reverse(emask, width) if width > 0 else 0)


def _sum_window_down(w, dn):
    wlo, wmask = w
    m, classes, lo_bound = dn
    width = wmask.bit_length()
    rw = (-(wlo + width - 1), _reverse(wmask, width))
    ru = (m, _reflect(classes, m), -lo_bound)
    return _reflect_up_piece(_sum_window_up(rw, ru))


def _sum_down_down(d1, d2):
    m1, c1, lo1 = d1
    m2, c2, lo2 = d2
    u1 = (m1, _reflect(c1, m1), -lo1)
    u2 = (m2, _reflect(c2, m2), -lo2)
    return _reflect_up_piece(_sum_up_up(u1, u2))


def _sum_cross(u, dn):
    m1, c1, _h = u
    m2, c2, _l = dn
    d = math.gcd(m1, m2)
    return (d, _class_sum(_fold_mod(c1, m1, d), _fold_mod(c2, m2, d), d))


def _combine_pieces(g, finites, ups, downs, fulls):
    if not (finites or ups or downs):
        neg = pos = 0
        for m, q in fulls:
            pat = _periodic_fill(q, m, 0, g)
            neg |= pat
            pos |= pat
        return EPSet(g, 0, -1, 0, neg, pos)

    los, his = [], []
    for flo, fmask in finites:
        los.append(flo + ((fmask & -fmask).bit_length() - 1))
        his.append(flo + fmask.bit_length() - 1)
    for m, q, expl_lo, sat_hi, emask in ups:
        los.append(expl_lo)
        his.append(sat_hi)
    for m, q, sat_lo, expl_hi, emask in downs:
        los.append(sat_lo)
        his.append(expl_hi)
    lo, hi = min(los), max(his)
    width = hi - lo + 1
    if width > _window_cap or g > _window_cap:
        raise WindowCapExceeded(max(width, g), _window_cap)

    window = 0
    for flo, fmask in finites:
        window |= fmask << (flo - lo)
    pos = neg = 0
    for m, q, expl_lo, sat_hi, emask in ups:
        window |= emask << (expl_lo - lo)
        if sat_hi < hi:
            window |= _periodic_fill(q, m, sat_hi + 1, hi - sat_hi) << (sat_hi + 1 - lo)
        pos |= _periodic_fill(q, m, 0, g)
    for m, q, sat_lo, expl_hi, emask in downs:
        window |= emask << (sat_lo - lo)
        if sat_lo > lo:
            window |= _periodic_fill(q, m, lo, sat_lo - lo)
        neg |= _periodic_fill(q, m, 0, g)
    for m, q in fulls:
        window |= _periodic_fill(q, m, lo, width)
        pat = _periodic_fill(q, m, 0, g)
        neg |= pat
        pos |= pat
    return EPSet(g, lo, hi, window, neg, pos)
