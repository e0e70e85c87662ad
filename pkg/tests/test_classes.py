import itertools
import random

import pytest

from minfam.classes import (
    class_sets,
    effective_roots,
    enumerate_conic,
    enumerate_exceptional,
    enumerate_roots,
    irreducible_exceptional,
    is_effective_korthogonal,
    naive_class_sets,
    t2_families,
)
from minfam.errors import InvalidPair, LatticeMismatch
from minfam.families import DelPezzoPair
from minfam.lattice import intersect, lattice
from minfam.subsystems import RootSubsystem, enumerate_labels, parse_label, permute_subsystem

from conftest import DEG1_LABEL, DEG2_LABEL, DEG4_LABEL, pair_of

COUNTS = {0: (0, 0, 0), 1: (0, 1, 1), 2: (2, 3, 2), 3: (8, 6, 3), 4: (20, 10, 5),
          5: (40, 16, 10), 6: (72, 27, 27), 7: (126, 56, 126), 8: (240, 240, 2160)}


@pytest.mark.parametrize("r", range(9))
def test_counts_match_oracle(r):
    lat = lattice("B", r)
    main, naive = class_sets(lat), naive_class_sets(lat)
    assert main == naive
    assert (len(main.roots), len(main.exceptional), len(main.conic)) == COUNTS[r]


@pytest.mark.parametrize("r", range(3))
def test_ruled_against_oracle(r):
    lat = lattice("P", r)
    assert class_sets(lat) == naive_class_sets(lat)


def test_small_examples():
    assert enumerate_roots(lattice("B", 0)) == ()
    L1 = lattice("B", 1)
    assert enumerate_exceptional(L1) == (L1.Q(1),)
    P0 = lattice("P", 0)
    assert set(enumerate_conic(P0)) == {P0.H, P0.F}
    assert enumerate_roots(lattice("P", 2)) == (lattice("P", 2).cls(-1, 2), lattice("P", 2).cls(1, -2))


def test_degree_four_conics():
    L = lattice("B", 5)
    expect = {L.H - L.Q(i) for i in range(1, 6)}
    for omit in range(1, 6):
        expect.add(2 * L.H - sum((L.Q(j) for j in range(1, 6) if j != omit), L.zero()))
    assert set(enumerate_conic(L)) == expect


def test_canonical_order():
    for r in range(9):
        lat = lattice("B", r)
        for cs in class_sets(lat).__dict__.values():
            assert [c.coeffs for c in cs] == sorted(c.coeffs for c in cs)


def test_is_effective_korthogonal():
    p2 = pair_of(7, DEG2_LABEL)
    L = p2.lattice
    assert not is_effective_korthogonal(-L.K - 2 * L.Q(7), p2.sub)
    with pytest.raises(InvalidPair):
        is_effective_korthogonal(L.Q(7), p2.sub)
    assert is_effective_korthogonal(L.zero(), p2.sub)
    p4 = pair_of(5, DEG4_LABEL)
    a, b = p4.sub.simples
    assert is_effective_korthogonal(a + b, p4.sub)
    assert not is_effective_korthogonal(a - b, p4.sub)
    with pytest.raises(LatticeMismatch):
        is_effective_korthogonal(lattice("B", 4).zero(), p4.sub)


def test_effective_roots_examples(deg4, deg1):
    assert set(effective_roots(deg4.sub)) == set(deg4.sub.simples)
    assert effective_roots(RootSubsystem(lattice("B", 5), ())) == ()
    assert len(effective_roots(deg1.sub)) == 56


def test_effective_roots_bruteforce(deg1):
    # all roots, filtered by explicit nonnegative decomposition
    brute = tuple(c for c in enumerate_roots(deg1.lattice) if is_effective_korthogonal(c, deg1.sub))
    assert brute == effective_roots(deg1.sub)


def test_irreducible_exceptional_examples(deg1, deg2):
    L8, L7 = deg1.lattice, deg2.lattice
    assert set(irreducible_exceptional(deg1)) == {L8.Q(8), L8.H - L8.Q(1) - L8.Q(2)}
    assert set(irreducible_exceptional(deg2)) == {L7.Q(7), L7.H - L7.Q(1) - L7.Q(2)}
    for r in (5, 8):
        p = pair_of(r)
        assert irreducible_exceptional(p) == enumerate_exceptional(p.lattice)


def test_irreducible_against_all_positive_roots(deg1):
    # filtering against every positive root agrees with filtering against the simples
    pos = effective_roots(deg1.sub)
    all_pos = tuple(e for e in enumerate_exceptional(deg1.lattice) if all(intersect(e, f) >= 0 for f in pos))
    assert all_pos == irreducible_exceptional(deg1)


def test_t2_examples(deg4):
    L = deg4.lattice
    H, Q = L.H, L.Q
    expect = {H - Q(1), H - Q(2), H - Q(3), H - Q(4),
              2 * H - Q(1) - Q(2) - Q(4) - Q(5), 2 * H - Q(1) - Q(3) - Q(4) - Q(5),
              2 * H - Q(2) - Q(3) - Q(4) - Q(5)}
    assert set(t2_families(deg4)) == expect
    assert len(t2_families(pair_of(5))) == 10
    P2 = lattice("P", 2)
    assert t2_families(DelPezzoPair(P2)) == (P2.F,)
    P0 = lattice("P", 0)
    assert set(t2_families(DelPezzoPair(P0))) == {P0.H, P0.F}


@pytest.mark.parametrize("r", [3, 4, 5])
def test_t2_monotone_under_extension(r):
    lat = lattice("B", r)
    for sub in enumerate_labels(lat):
        big = set(t2_families(DelPezzoPair(lat, 1, sub)))
        for drop in range(len(sub.simples)):
            smaller = RootSubsystem(lat, sub.simples[:drop] + sub.simples[drop + 1:])
            assert big <= set(t2_families(DelPezzoPair(lat, 1, smaller)))


@pytest.mark.parametrize("r,label", [(5, DEG4_LABEL), (7, DEG2_LABEL), (8, DEG1_LABEL)])
def test_counts_permutation_equivariant(r, label):
    rng = random.Random(r)
    lat = lattice("B", r)
    base = pair_of(r, label)
    for _ in range(5):
        sigma = list(range(1, r + 1))
        rng.shuffle(sigma)
        moved = DelPezzoPair(lat, 1, permute_subsystem(base.sub, sigma))
        assert len(t2_families(moved)) == len(t2_families(base))
        assert len(irreducible_exceptional(moved)) == len(irreducible_exceptional(base))
        assert len(effective_roots(moved.sub)) == len(effective_roots(base.sub))
