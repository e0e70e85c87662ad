"""Del Pezzo pairs: a lattice, a multiplier ``q`` and a simple system."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidPair
from .lattice import DivisorClass, PicardLattice
from .subsystems import RootSubsystem, forced_subsystem

__all__ = ["DelPezzoPair", "ALLOWED_Q", "parse_q"]

ALLOWED_Q = (Fraction(1), Fraction(1, 2), Fraction(1, 3), Fraction(2, 3))


def parse_q(value) -> Fraction:
    try:
        q = Fraction(value)
    except (ValueError, ZeroDivisionError, TypeError):
        raise InvalidPair(f"cannot read multiplier {value!r}") from None
    if q not in ALLOWED_Q:
        raise InvalidPair(f"q must be one of 1, 1/2, 1/3, 2/3; got {q}")
    return q


def scaled_anticanonical(lat: PicardLattice, q: Fraction) -> DivisorClass | None:
    """``-qK`` if it is integral, else ``None``."""
    out = []
    for c in lat.anticanonical.coeffs:
        x = q * c
        if x.denominator != 1:
            return None
        out.append(int(x))
    return DivisorClass(tuple(out), lat)


@dataclass(frozen=True)
class DelPezzoPair:
    """``(X, D)`` with ``D = -qK`` on a weak del Pezzo surface described by ``sub``.

    On ``P(r)`` bases the effective roots are forced (``H - 2F`` on ``P(2)``),
    so an empty ``sub`` is replaced by the forced one.
    """

    lattice: PicardLattice
    q: Fraction = Fraction(1)
    sub: RootSubsystem | None = None

    def __post_init__(self):
        q = parse_q(self.q)
        object.__setattr__(self, "q", q)
        lat = self.lattice
        sub = self.sub
        if sub is None or (lat.is_ruled and not sub.simples):
            sub = forced_subsystem(lat)
        object.__setattr__(self, "sub", sub)
        if sub.lattice != lat:
            raise InvalidPair(f"subsystem lives in {sub.lattice}, pair in {lat}")
        if lat.is_ruled and sub != forced_subsystem(lat):
            raise InvalidPair(f"the effective roots of {lat} are fixed: {list(map(str, forced_subsystem(lat).simples))}")
        k2 = lat.degree
        if q == Fraction(1, 2) and k2 != 8:
            raise InvalidPair(f"q = 1/2 needs K^2 = 8, but {lat} has K^2 = {k2}")
        if q in (Fraction(1, 3), Fraction(2, 3)) and k2 != 9:
            raise InvalidPair(f"q = {q} needs K^2 = 9, but {lat} has K^2 = {k2}")
        if scaled_anticanonical(lat, q) is None:
            raise InvalidPair(f"-{q}K is not integral on {lat}")

    @property
    def D(self) -> DivisorClass:
        return scaled_anticanonical(self.lattice, self.q)

    @property
    def degree(self) -> int:
        """``D^2 = q^2 K^2``."""
        return int(self.q * self.q * self.lattice.degree)

    def __str__(self):
        return f"({self.lattice}, q={self.q}, label={self.sub or 'A0'})"
