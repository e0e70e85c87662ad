"""Per-pair classification of minimal families.

Which family types occur depends only on the degree ``D^2`` and ``q``:

=========  ==========  ==========================
degree     q           types
=========  ==========  ==========================
9          1, 1/3, 2/3 T1 (infinitely many)
8          1/2         T0
3..8       1           T2
2          1           T2, T3
1          1           T2, T4, T5 (T5 not counted)
=========  ==========  ==========================
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
import random
from typing import NamedTuple

from .branching import t3_count
from .classes import irreducible_exceptional, t2_families
from .contraction import contract
from .errors import InvalidPair
from .pairs import ALLOWED_Q, DelPezzoPair, parse_q
from .subsystems import DynkinType, dynkin_type

__all__ = [
    "DelPezzoPair",
    "ALLOWED_Q",
    "parse_q",
    "INFINITE",
    "EXTERNAL",
    "FamilyReport",
    "blowdown",
    "t4_count",
    "family_report",
    "minimal_family_count",
    "MinimalFamilyCount",
]


class _Infinite:
    """Marker for infinitely many minimal families; deliberately not an int."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "INFINITE"

    def __str__(self):
        return "infinite"

    def __reduce__(self):
        return (_Infinite, ())


INFINITE = _Infinite()
EXTERNAL = "external"


@dataclass(frozen=True)
class FamilyReport:
    degree: int
    q: Fraction
    dynkin: DynkinType
    t0: int | None = None
    t1: object = None
    t2: int | None = None
    t3: int | None = None
    t3_rational: int | None = None
    t4: int | None = None
    t4_rational: int | None = None
    t5: str | None = None
    t0_classes: tuple = ()
    t2_classes: tuple = ()
    notes: tuple = field(default_factory=tuple)

    def counts(self) -> dict:
        return {
            "t0": self.t0,
            "t1": self.t1,
            "t2": self.t2,
            "t3": self.t3,
            "t3r": self.t3_rational,
            "t4": self.t4,
            "t4r": self.t4_rational,
        }


def _check_anticanonical(pair, degree):
    if pair.q != Fraction(1) or pair.lattice.degree != degree:
        raise InvalidPair(f"expected an anticanonical pair of degree {degree}, got {pair}")


def blowdown(pair: DelPezzoPair, e, rng: random.Random | None = None) -> DelPezzoPair:
    """Contract an irreducible exceptional class of a degree-1 pair."""
    _check_anticanonical(pair, 1)
    if e not in irreducible_exceptional(pair):
        raise InvalidPair(f"{e} is not an irreducible exceptional class of {pair}")
    con = contract(pair.lattice, pair.sub, e, rng)
    return DelPezzoPair(con.target, Fraction(1), con.sub)


def t4_count(pair: DelPezzoPair, order=None, rng: random.Random | None = None) -> tuple:
    """Sum of :func:`t3_count` over the blowdowns of all irreducible exceptionals.

    ``order`` optionally permutes the processing order of the exceptionals
    and ``rng`` randomizes the reflection sequences; neither changes the
    result.
    """
    _check_anticanonical(pair, 1)
    exc = list(irreducible_exceptional(pair))
    if order is not None:
        exc = [exc[i] for i in order]
    total = rational = 0
    for e in exc:
        con = contract(pair.lattice, pair.sub, e, rng)
        n, nr = t3_count(DelPezzoPair(con.target, Fraction(1), con.sub))
        total += n
        rational += nr
    return (total, rational)


def family_report(pair: DelPezzoPair) -> FamilyReport:
    # rows are keyed by K^2, not D^2
    deg = pair.lattice.degree
    q = pair.q
    dt = dynkin_type(pair.sub)
    base = dict(degree=deg, q=q, dynkin=dt)
    if deg == 9:
        return FamilyReport(**base, t1=INFINITE, notes=("lines of the plane under a uple embedding",))
    if q == Fraction(1, 2):
        g = t2_families(pair)
        return FamilyReport(**base, t0=len(g), t0_classes=g, notes=("lines on a quadric surface",))
    g = t2_families(pair)
    if 3 <= deg <= 8:
        return FamilyReport(**base, t2=len(g), t2_classes=g)
    if deg == 2:
        n, nr = t3_count(pair)
        return FamilyReport(**base, t2=len(g), t3=n, t3_rational=nr, t2_classes=g)
    if deg == 1:
        n, nr = t4_count(pair)
        return FamilyReport(
            **base, t2=len(g), t4=n, t4_rational=nr, t5=EXTERNAL, t2_classes=g,
            notes=("T5 families are not counted",),
        )
    raise InvalidPair(f"no family table row for degree {deg}, q = {q}")


class MinimalFamilyCount(NamedTuple):
    value: object  # int or INFINITE
    lower_bound: bool
    note: str


def minimal_family_count(pair_or_report) -> MinimalFamilyCount:
    """Total number of minimal families; a lower bound at degree 1 (T5 excluded)."""
    rep = pair_or_report if isinstance(pair_or_report, FamilyReport) else family_report(pair_or_report)
    if rep.t1 is INFINITE:
        return MinimalFamilyCount(INFINITE, False, "")
    total = sum(v for k, v in rep.counts().items() if k in ("t0", "t2", "t3", "t4") and v is not None)
    if rep.t5 is not None:
        return MinimalFamilyCount(total, True, "excludes T5")
    return MinimalFamilyCount(total, False, "")
