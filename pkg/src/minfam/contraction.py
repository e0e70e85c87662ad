"""Contracting one exceptional curve, on the level of lattices.

For ``B(r)`` with ``r >= 3`` (and ``Q``-type curves on ``B(1)``, ``B(2)``) an
isometry fixing ``K`` is built from reflections that carries the curve to
``Qr``; the pushforward then forgets the last coordinate. The remaining
cases change the basis kind:

* ``H - Q1 - Q2`` on ``B(2)`` contracts to ``P(0)``, or to ``P(2)`` when
  ``Q1 - Q2`` is effective;
* ``H - F`` on ``P(1)`` contracts to ``B(0)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
import random
from itertools import combinations

import numpy as np

from .errors import InvalidPair, InvariantViolation
from .lattice import DivisorClass, PicardLattice, lattice, reflect
from .subsystems import RootSubsystem

__all__ = ["Contraction", "contract", "reduction_roots", "indecomposables"]


def _root(lat: PicardLattice, h: int, minus: dict) -> DivisorClass:
    v = [0] * lat.rank
    v[0] = h
    for i, x in minus.items():
        v[i] = -x
    return DivisorClass(tuple(v), lat)


def reduction_roots(e: DivisorClass, rng: random.Random | None = None) -> list:
    """Roots whose successive reflections carry ``e`` to ``Qr`` on ``B(r)``.

    Greedy: while the ``H``-coefficient is positive reflect in
    ``H - Qa - Qb - Qc`` for a triple with ``e.(H - Qa - Qb - Qc) < 0``
    (the three most negative coordinates, or a random such triple when
    ``rng`` is given), then swap the remaining ``Qi`` with ``Qr``.
    """
    lat = e.lattice
    r = lat.r
    seq = []
    cur = e
    while cur.coeffs[0] != 0:
        if r < 3 or cur.coeffs[0] < 0:
            raise InvalidPair(f"{e} cannot be moved to a Q-class in {lat}")
        c = cur.coeffs[1:]
        if rng is None:
            order = sorted(range(r), key=lambda i: (c[i], i))
            triple = order[:3]
        else:
            good = [t for t in combinations(range(r), 3) if cur.coeffs[0] + sum(c[i] for i in t) < 0]
            if not good:
                raise InvariantViolation(f"no reducing triple for {cur}")
            triple = rng.choice(good)
        R = _root(lat, 1, {i + 1: 1 for i in triple})
        if cur.dot(R) >= 0:
            raise InvariantViolation(f"greedy reduction stalled at {cur}")
        seq.append(R)
        cur = reflect(cur, R)
    nz = [i for i, x in enumerate(cur.coeffs) if x]
    if len(nz) != 1 or cur.coeffs[nz[0]] != 1:
        raise InvariantViolation(f"reduction of {e} ended at {cur}, not a Q-class")
    i = nz[0]
    if i != r:
        R = _root(lat, 0, {i: -1, r: 1})
        seq.append(R)
    if rng is not None:
        # Fisher-Yates shuffle of Q1..Q(r-1) by transpositions; Qr stays put
        for a in range(r - 1, 1, -1):
            b = rng.randint(1, a)
            if b != a:
                seq.append(_root(lat, 0, {a: -1, b: 1}))
    return seq


def indecomposables(roots) -> tuple:
    """Members of a positive-root set that are not a sum of two members."""
    s = set(roots)
    out = []
    for a in roots:
        if not any((a - b) in s for b in roots if b != a):
            out.append(a)
    return tuple(sorted(out))


@dataclass(frozen=True, eq=False)
class Contraction:
    """Result of contracting ``e``: the new lattice and subsystem plus pushforward data."""

    source: PicardLattice
    target: PicardLattice
    sub: RootSubsystem
    e: DivisorClass
    reflections: tuple = ()
    # for basis changes: target coordinates are products with these classes
    probes: tuple = ()
    # P(2): second coordinate is C.probe[1] - 2 * C.probe[0]
    shift: int = 0

    def push(self, c: DivisorClass) -> DivisorClass:
        if c.lattice != self.source:
            raise InvalidPair(f"{c} does not live in {self.source}")
        if self.probes:
            vals = [c.dot(p) for p in self.probes]
            if self.shift:
                vals[1] -= self.shift * vals[0]
            return DivisorClass(tuple(vals), self.target)
        v = self.matrix @ np.array(c.coeffs, dtype=np.int64)
        return DivisorClass(tuple(int(x) for x in v[:-1]), self.target)

    @cached_property
    def matrix(self) -> np.ndarray:
        """Composite of the reflections, acting on coordinate columns."""
        return reflection_matrix(self.source, self.reflections)


def reflection_matrix(lat: PicardLattice, roots) -> np.ndarray:
    g = lat.gram
    m = np.eye(lat.rank, dtype=np.int64)
    for R in roots:
        r = np.array(R.coeffs, dtype=np.int64)
        # v -> v + (v.R) R
        m = m + np.outer(r, (g @ r) @ m)
    return m


def contract(lat: PicardLattice, sub: RootSubsystem, e: DivisorClass, rng: random.Random | None = None) -> Contraction:
    """Contract the exceptional class ``e`` on the surface ``(lat, sub)``.

    The effective roots afterwards are the pushforwards of the positive roots
    orthogonal to ``e``; the new simples are their indecomposables.
    """
    if not e.is_exceptional():
        raise InvalidPair(f"{e} is not an exceptional class")
    if any(e.dot(s) < 0 for s in sub.simples):
        raise InvalidPair(f"{e} is not irreducible on this surface")
    positive = [p for p in sub.positive_roots() if p.dot(e) == 0]

    if lat.is_ruled:
        if lat.r != 1 or e.coeffs != (1, -1):
            raise InvalidPair(f"{e} cannot be contracted on {lat}")
        target = lattice("B", 0)
        con = Contraction(lat, target, RootSubsystem(target, ()), e, probes=(lat.H,))
        _check(con, positive)
        return con

    if lat.r == 2 and e.coeffs == (1, -1, -1):
        hp, fp = lat.cls(1, -1, 0), lat.cls(1, 0, -1)
        if positive:
            (root,) = positive
            # the effective root is +-(H' - F'); choose F with H' - F' = root up to sign
            if root == hp - fp:
                f2 = fp
            elif root == fp - hp:
                f2 = hp
            else:
                raise InvariantViolation(f"unexpected root {root} on the contraction to a quadric")
            target = lattice("P", 2)
            con = Contraction(lat, target, RootSubsystem(target, (target.cls(1, -2),)), e,
                              probes=(f2, hp + fp), shift=2)
        else:
            target = lattice("P", 0)
            con = Contraction(lat, target, RootSubsystem(target, ()), e, probes=(fp, hp))
        _check(con, positive)
        return con

    seq = tuple(reduction_roots(e, rng))
    target = lattice("B", lat.r - 1)
    m = reflection_matrix(lat, seq)
    if positive:
        img = np.array([p.coeffs for p in positive], dtype=np.int64) @ m.T
        if np.any(img[:, -1]):
            raise InvariantViolation("a root orthogonal to the contracted curve has a nonzero last coordinate")
        pushed = [DivisorClass(tuple(map(int, v)), target) for v in img[:, :-1].tolist()]
    else:
        pushed = []
    # indecomposables of a positive system form its simple system
    new_sub = RootSubsystem(target, indecomposables(pushed), _validated=True)
    con = Contraction(lat, target, new_sub, e, reflections=seq)
    con.__dict__["matrix"] = m
    _check(con, positive)
    return con


def _check(con: Contraction, positive):
    img = con.push(con.e)
    if not img.is_zero():
        raise InvariantViolation(f"pushforward of the contracted class is {img}, not 0")
    K = con.push(con.source.canonical)
    if K != con.target.canonical:
        raise InvariantViolation(f"pushforward of K is {K}, expected {con.target.canonical}")
    pushed = sorted(con.push(p) for p in positive)
    if pushed != sorted(con.sub.positive_roots()):
        raise InvariantViolation("transported positive roots do not form the new positive system")
