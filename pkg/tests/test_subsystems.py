import random

import pytest
from hypothesis import given, settings, strategies as st

from minfam.classes import enumerate_roots
from minfam.errors import InvariantViolation, ParseError
from minfam.families import DelPezzoPair
from minfam.lattice import lattice
from minfam.subsystems import (
    DynkinType,
    RootSubsystem,
    count_labels,
    dynkin_type,
    enumerate_labels,
    fingerprint,
    forced_subsystem,
    format_label,
    label_pool,
    parse_label,
    permute_subsystem,
    positive_root_closure,
)

from conftest import pair_of, random_label


def _positive_count(dt: DynkinType) -> int:
    n_pos = {"A": lambda n: n * (n + 1) // 2, "D": lambda n: n * (n - 1), "E": lambda n: {6: 36, 7: 63, 8: 120}[n]}
    return sum(n_pos[letter](n) for letter, n in dt.components)


def test_parse_examples():
    L5 = lattice("B", 5)
    assert parse_label("12", 5).simples == (L5.Q(1) - L5.Q(2),)
    assert parse_label("1123", L5).simples == (L5.H - L5.Q(1) - L5.Q(2) - L5.Q(3),)
    L8 = lattice("B", 8)
    expect = L8.cls(3, -2, -1, -1, -1, -1, -1, -1, -1)
    assert parse_label("31", 8).simples == (expect,)
    assert parse_label("301", 8).simples == (expect,)
    assert parse_label("", 4).simples == ()
    L7 = lattice("B", 7)
    assert parse_label("278", 7).simples == (L7.cls(2, -1, -1, -1, -1, -1, -1, 0),)


def test_parse_separators_and_literals():
    a = parse_label("1123,45", 5)
    assert parse_label("1123 45", 5) == a
    assert parse_label("v:1,-1,-1,-1,0,0 45", 5) == a
    P2 = lattice("P", 2)
    assert parse_label("v:1,-2", P2) == forced_subsystem(P2)


@pytest.mark.parametrize("text,rank,col", [
    ("1x", 5, 0), ("12,77", 5, 3), ("12,16", 5, 3), ("11", 5, 0), ("301", 7, 0),
    ("12,13", 5, 0), ("v:1,2", 5, 0), ("v:1,0,0,0,0,0", 5, 0), ("12 12", 5, 0),
])
def test_parse_errors(text, rank, col):
    with pytest.raises(ParseError) as ei:
        parse_label(text, rank)
    assert ei.value.column == col


def test_rank8_short_forms_round_trip():
    L8 = lattice("B", 8)
    sub = RootSubsystem(L8, (L8.Q(3) - L8.Q(1), L8.Q(5) - L8.Q(6)))
    text = format_label(sub)
    assert "v:" in text
    assert parse_label(text, L8) == sub


@pytest.mark.parametrize("r", [3, 4, 5])
def test_round_trip_all_labels(r):
    lat = lattice("B", r)
    for sub in enumerate_labels(lat):
        assert parse_label(format_label(sub), lat) == sub


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 8), st.data())
def test_round_trip_random_roots(r, data):
    lat = lattice("B", r)
    c = data.draw(st.sampled_from(enumerate_roots(lat)))
    sub = RootSubsystem(lat, (c,))
    assert parse_label(format_label(sub), lat) == sub


def test_dynkin_examples(deg4, deg2, deg1):
    assert str(dynkin_type(deg4.sub)) == "2A1"
    assert str(dynkin_type(deg2.sub)) == "A7"
    assert str(dynkin_type(deg1.sub)) == "D8"
    assert str(dynkin_type(RootSubsystem(lattice("B", 3), ()))) == "A0"
    L8 = lattice("B", 8)
    e8 = parse_label("1123,12,23,34,45,56,67,78", L8)
    assert str(dynkin_type(e8)) == "E8"
    assert str(DynkinType.parse("A1+D6")) == "D6+A1"
    assert DynkinType.parse("2A1").rank == 2


def test_dynkin_rejects_bad_products():
    L = lattice("B", 3)
    sub = RootSubsystem(L, (L.Q(1) - L.Q(2),), _validated=True)
    bad = RootSubsystem(L, (L.Q(1) - L.Q(2), L.Q(2) - L.Q(1)), _validated=True)
    assert str(dynkin_type(sub)) == "A1"
    with pytest.raises(InvariantViolation):
        dynkin_type(bad)


@pytest.mark.parametrize("r", [4, 5, 6])
def test_positive_roots_per_type(r):
    lat = lattice("B", r)
    for sub in enumerate_labels(lat):
        pos = sub.positive_roots()
        assert len(pos) == _positive_count(dynkin_type(sub))
        assert pos == positive_root_closure(sub)


def test_positive_roots_rank8_samples():
    lat = lattice("B", 8)
    rng = random.Random(8)
    for _ in range(200):
        sub = random_label(lat, rng)
        pos = sub.positive_roots()
        assert pos == positive_root_closure(sub)
        assert len(pos) == _positive_count(dynkin_type(sub))


def test_fingerprints(deg4):
    fp = fingerprint(deg4)
    assert fp[:3] == (5, "2A1", 2) and fp[4] == 7
    assert fingerprint(pair_of(6)) == (6, "A0", 0, 27, 27)
    L5 = deg4.lattice
    moved = DelPezzoPair(L5, 1, permute_subsystem(deg4.sub, [5, 3, 4, 1, 2]))
    assert fingerprint(moved) == fp


def test_label_counts():
    assert [count_labels(lattice("B", r)) for r in range(2, 7)] == [2, 10, 52, 428, 5079]
    assert count_labels(lattice("P", 1)) == 1
    assert len(enumerate_labels(lattice("B", 5))) == 428


def test_label_pool_in_half_space():
    for r in range(2, 9):
        lat = lattice("B", r)
        pool = set(label_pool(lat))
        roots = enumerate_roots(lat)
        assert len(pool) * 2 == len(roots)
        assert all((-c in pool) != (c in pool) for c in roots)


def test_forced_subsystems():
    P2 = lattice("P", 2)
    assert forced_subsystem(P2).simples == (P2.H - 2 * P2.F,)
    assert forced_subsystem(lattice("P", 0)).simples == ()
