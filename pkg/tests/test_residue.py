"""Tests for residue-set structure: images, periods, decomposition, orbits."""

import math
import random
from itertools import combinations

import numpy as np
import pytest

from linset.epset import EPSet
from linset.residue import (
    DecompositionCertificate,
    DecompositionFailure,
    ResidueSet,
    cardinality_check,
    cardinality_sweep,
    decompose_equality_case,
    difference_fully_periodic_check,
    gamma_mod,
    multiplicative_order,
    nonperiodic_absorption_check,
    period,
    period_shift,
    residue_orbit,
    totient,
)

U12 = ResidueSet(12, [0, 3, 4, 6, 7, 10])


def brute_gamma(u, a, b):
    g = u.modulus
    return ResidueSet(g, {(a * x + b * y) % g for x in u.elems for y in u.elems})


def test_gamma_mod_examples():
    got = gamma_mod(U12, 4, 3)
    assert got == brute_gamma(U12, 4, 3)
    assert got == ResidueSet(12, [0, 1, 4, 6, 9, 10])
    h = ResidueSet.subgroup(12, 3)
    assert gamma_mod(h, 5, 7) == h
    assert gamma_mod(ResidueSet(6, [0]), 5, 1) == ResidueSet(6, [0])


def test_period_examples():
    assert period(ResidueSet(12, [0, 3, 6, 9])) == ResidueSet(12, [0, 3, 6, 9])
    assert period(U12) == ResidueSet(12, [0])
    assert period(ResidueSet(6, [0, 1])) == ResidueSet(6, [0])
    with pytest.raises(ValueError):
        period(ResidueSet(6, []))


def test_cardinality_check_examples():
    assert cardinality_check(U12, 4, 3) == (6, 6, True)
    assert cardinality_check(ResidueSet(6, [0, 2, 4]), 5, 1) == (3, 3, True)
    with pytest.raises(ValueError):
        cardinality_check(ResidueSet(4, [0, 2]), 2, 2)


def test_decompose_worked_example():
    cert = decompose_equality_case(U12, 4, 3)
    assert isinstance(cert, DecompositionCertificate)
    assert (cert.a1, cert.b1) == (4, 3)
    assert cert.v == (0, 4)
    assert cert.x == (0, 3, 6)
    assert cert.subgroup() == ResidueSet(12, [0])
    assert cert.verify(U12)


def test_decompose_matches_bruteforce_search():
    # enumerate every (a1, b1, V, X) over the divisor lattice for the worked
    # example; the certificate's choice must be among the solutions, and at
    # its (a1, b1) level the split is unique
    from itertools import combinations

    g, a, b = 12, 4, 3
    u = set(U12.elems)
    cert = decompose_equality_case(U12, a, b)
    solutions = []
    for a1 in (1, 2, 4):
        if math.gcd(g, a) % a1:
            continue
        for b1 in (1, 3):
            if math.gcd(g, b) % b1:
                continue
            h = set(range(0, g, a1 * b1))
            va = list(range(0, g, a1))
            xb = list(range(0, g, b1))
            for vs in range(1, len(va) + 1):
                for v in combinations(va, vs):
                    if len(u) % (vs * len(h)):
                        continue
                    xs = len(u) // (vs * len(h))
                    if xs > len(xb):
                        continue
                    for x in combinations(xb, xs):
                        got = {(vv + xx + hh) % g for vv in v for xx in x for hh in h}
                        if got == u and len(u) == vs * xs * len(h):
                            solutions.append((a1, b1, v, x))
    key = (cert.a1, cert.b1, cert.v, cert.x)
    assert key in solutions
    same_level = [s for s in solutions if s[:2] == (cert.a1, cert.b1)]
    assert same_level == [key]


def test_decompose_failure_reports():
    r = decompose_equality_case(ResidueSet(6, [0, 1, 2]), 5, 1)
    assert isinstance(r, DecompositionFailure)
    assert r.hypothesis == "cardinality not preserved"
    r = decompose_equality_case(ResidueSet(8, [0, 2, 4, 6]), 3, 1)
    assert isinstance(r, DecompositionFailure)
    assert r.hypothesis == "contained in a proper subgroup"
    r = decompose_equality_case(ResidueSet(4, [0, 2]), 2, 2)
    assert r.hypothesis == "coefficients not coprime"


def test_decompose_full_group():
    g = 10
    cert = decompose_equality_case(ResidueSet(g, range(g)), 3, 1)
    assert isinstance(cert, DecompositionCertificate)
    assert (cert.a1, cert.b1) == (1, 1)
    assert cert.v == (0,) and cert.x == (0,)
    assert len(cert.subgroup()) == g


def test_orbit_examples():
    orb = residue_orbit(ResidueSet(3, [1]), 2, 1)
    # {1} -> {0} -> {0}: fixed point
    assert orb.states[1] == ResidueSet(3, [0])
    assert orb.length == 1

    h = ResidueSet.subgroup(12, 4)
    orb = residue_orbit(h, 5, 7)
    assert (orb.onset, orb.length) == (0, 1)

    orb = residue_orbit(U12, 4, 3)
    assert totient(4) * totient(3) % orb.length == 0
    assert orb.order_divisibility is True


def test_orbit_singleton_cycles_are_not_misjudged():
    # {1} mod 5 under 2U+U cycles with length 4; the structural hypotheses
    # fail (proper subgroup after translation), so no divisibility claim.
    orb = residue_orbit(ResidueSet(5, [1]), 2, 1)
    assert orb.length == 4
    assert orb.order_divisibility is None


def test_absorption_examples():
    g = 6
    ok = 0
    for a in (1, 5):
        for size in range(1, 7):
            for elems in combinations(range(g), size):
                if 0 not in elems:
                    continue
                x = ResidueSet(g, elems)
                rep = nonperiodic_absorption_check(x, a, 2)
                if rep.applicable:
                    ok += 1
                    assert rep.holds
                    assert all(t % 3 == 0 for t in x.elems)
    assert ok > 0
    # periodic input is reported, not checked
    rep = nonperiodic_absorption_check(ResidueSet(6, [0, 3]), 5, 2)
    assert not rep.applicable and rep.failed_hypothesis == "set is periodic"
    rep = nonperiodic_absorption_check(ResidueSet(6, [0]), 5, 2)
    assert rep.applicable and rep.holds


def test_difference_periodicity_examples():
    n = EPSet.naturals()
    rep = difference_fully_periodic_check(n, 1, n, 1)
    assert rep.fully_periodic and rep.difference == EPSet.integers()
    s = EPSet.half_line(0, 4, 0)
    t = EPSet.half_line(0, 6, 0)
    rep = difference_fully_periodic_check(s, 4, t, 6)
    assert rep.modulus == 2 and rep.fully_periodic
    s2 = EPSet.half_line(2, 4, 2)
    rep = difference_fully_periodic_check(s2, 4, t, 6)
    assert rep.fully_periodic and rep.difference.period <= 2
    with pytest.raises(ValueError):
        difference_fully_periodic_check(EPSet.from_iterable([0, 1]), 3, n, 1)


def test_sweep_agrees_with_bruteforce_small():
    rng = random.Random(3)
    for g in (2, 3, 4, 5, 6, 8):
        for a, b in ((1, 1), (2, 1), (3, 2), (5, 1)):
            hold, eq = cardinality_sweep(g, a, b)
            assert hold
            eq = set(eq)
            for _ in range(200):
                mask = rng.getrandbits(g)
                u = ResidueSet.from_mask(g, mask)
                if not u.elems:
                    continue
                im = brute_gamma(u, a, b)
                assert (len(im) == len(u)) == (mask in eq)


def test_sweep_period_preservation_and_decomposition():
    for g in (6, 8, 12):
        for a, b in ((1, 1), (2, 1), (3, 1), (4, 3), (5, 2)):
            if math.gcd(a, b) != 1:
                continue
            hold, eq = cardinality_sweep(g, a, b)
            assert hold
            for mask in eq:
                u = ResidueSet.from_mask(g, mask)
                im = gamma_mod(u, a, b)
                assert period_shift(im) == period_shift(u)
                t = min(u.elems)
                shifted = u.translate(-t)
                if math.gcd(g, math.gcd(*shifted.elems)) == 1:
                    cert = decompose_equality_case(u, a, b)
                    assert isinstance(cert, DecompositionCertificate), (g, a, b, mask, cert)
                    assert cert.verify(u)
                    # the image respects the same split: (a+b)t + aV + bX + H
                    image = {((a + b) * cert.translation + a * v + b * x + h) % g
                             for v in cert.v for x in cert.x
                             for h in range(0, g, cert.subgroup_step)}
                    assert ResidueSet(g, image) == gamma_mod(u, a, b), (g, a, b, mask)


def test_orbit_iterate_count_bound():
    # cardinality-preserving orbits stay within (g*L)^2 distinct iterates
    rng = random.Random(11)
    for _ in range(150):
        g = rng.randint(2, 10)
        a, b = 1, 1
        while math.gcd(a, b) != 1 or max(a, b) < 2:
            a, b = rng.randint(1, 5), rng.randint(1, 5)
        mask = rng.getrandbits(g) or 1
        u = ResidueSet.from_mask(g, mask)
        orb = residue_orbit(u, a, b)
        if orb.cardinality_preserved and orb.onset == 0:
            assert len(orb.states) <= (g * max(a, b)) ** 2


def test_multiplicative_order():
    assert multiplicative_order(2, 15) == 4
    assert multiplicative_order(1, 7) == 1
    with pytest.raises(ValueError):
        multiplicative_order(3, 6)
