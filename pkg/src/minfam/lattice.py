"""Integer Picard lattices of del Pezzo pairs.

Two families of bases are supported:

* ``B(r)`` with basis ``H, Q1, ..., Qr``, ``H^2 = 1``, ``Qi.Qj = -delta_ij``,
  ``H.Qi = 0`` and canonical class ``K = -3H + Q1 + ... + Qr``;
* ``P(r)`` with basis ``H, F``, ``F^2 = 0``, ``H.F = 1``, ``H^2 = r`` and
  ``K = -2H + (r - 2)F``.

A :class:`DivisorClass` stores plain basis coordinates, so ``2H - Q1 - Q2`` in
``B(3)`` is ``(2, -1, -1, 0)`` and ``H + F`` in ``P(0)`` is ``(1, 1)``.
Everything is exact integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, total_ordering
import math
import re

import numpy as np

from .errors import InvalidRoot, InvariantViolation, LatticeMismatch, ParseError

__all__ = [
    "BasisKind",
    "PicardLattice",
    "DivisorClass",
    "intersect",
    "arithmetic_genus",
    "plane_curve_genus",
    "h0_of_nD",
    "reflect",
    "lattice",
]


@dataclass(frozen=True, order=True)
class BasisKind:
    """``DelPezzo(r)`` (letter ``"B"``) or ``Ruled(r)`` (letter ``"P"``)."""

    letter: str
    r: int

    def __post_init__(self):
        if self.letter == "B":
            if not 0 <= self.r <= 8:
                raise ValueError(f"B(r) needs 0 <= r <= 8, got r={self.r}")
        elif self.letter == "P":
            if self.r not in (0, 1, 2):
                raise ValueError(f"P(r) needs r in {{0, 1, 2}}, got r={self.r}")
        else:
            raise ValueError(f"unknown basis letter {self.letter!r}")

    @classmethod
    def DelPezzo(cls, r: int) -> "BasisKind":
        return cls("B", r)

    @classmethod
    def Ruled(cls, r: int) -> "BasisKind":
        return cls("P", r)

    @property
    def is_del_pezzo(self) -> bool:
        return self.letter == "B"

    @property
    def is_ruled(self) -> bool:
        return self.letter == "P"

    @property
    def rank(self) -> int:
        return self.r + 1 if self.letter == "B" else 2

    def __str__(self):
        return f"{self.letter}({self.r})"


_BASIS_RE = re.compile(r"^\s*([BbPp])\s*\(?\s*(\d+)\s*\)?\s*$")


@dataclass(frozen=True)
class PicardLattice:
    """Enhanced Picard group in one of the standard bases."""

    kind: BasisKind

    @classmethod
    def parse(cls, text: str) -> "PicardLattice":
        """Parse ``"B5"``, ``"B(5)"``, ``"P2"`` or ``"P(2)"``."""
        m = _BASIS_RE.match(text)
        if not m:
            raise ParseError(f"cannot parse basis {text!r} (expected e.g. B5 or P(2))", text, 0)
        try:
            return lattice(m.group(1).upper(), int(m.group(2)))
        except ValueError as exc:
            raise ParseError(str(exc), text, 0) from None

    @property
    def rank(self) -> int:
        return self.kind.rank

    @property
    def r(self) -> int:
        return self.kind.r

    @property
    def is_del_pezzo(self) -> bool:
        return self.kind.is_del_pezzo

    @property
    def is_ruled(self) -> bool:
        return self.kind.is_ruled

    @cached_property
    def gram(self) -> np.ndarray:
        n = self.rank
        if self.is_del_pezzo:
            g = -np.eye(n, dtype=np.int64)
            g[0, 0] = 1
        else:
            g = np.array([[self.r, 1], [1, 0]], dtype=np.int64)
        g.setflags(write=False)
        return g

    @cached_property
    def canonical(self) -> "DivisorClass":
        if self.is_del_pezzo:
            return DivisorClass((-3,) + (1,) * self.r, self)
        return DivisorClass((-2, self.r - 2), self)

    @property
    def K(self) -> "DivisorClass":
        return self.canonical

    @property
    def anticanonical(self) -> "DivisorClass":
        return -self.canonical

    @cached_property
    def anticanonical_array(self) -> np.ndarray:
        return np.array(self.anticanonical.coeffs, dtype=np.int64)

    @property
    def degree(self) -> int:
        """``K^2``."""
        return self.canonical.square()

    def cls(self, *coeffs: int) -> "DivisorClass":
        if len(coeffs) == 1 and not isinstance(coeffs[0], (int, np.integer)):
            coeffs = tuple(coeffs[0])
        return DivisorClass(tuple(int(c) for c in coeffs), self)

    def zero(self) -> "DivisorClass":
        return DivisorClass((0,) * self.rank, self)

    @property
    def H(self) -> "DivisorClass":
        return DivisorClass((1,) + (0,) * (self.rank - 1), self)

    @property
    def F(self) -> "DivisorClass":
        if not self.is_ruled:
            raise AttributeError("F only exists in a P(r) basis")
        return DivisorClass((0, 1), self)

    def Q(self, i: int) -> "DivisorClass":
        if not self.is_del_pezzo or not 1 <= i <= self.r:
            raise IndexError(f"Q{i} does not exist in {self}")
        c = [0] * self.rank
        c[i] = 1
        return DivisorClass(tuple(c), self)

    def parse_class(self, text: str) -> "DivisorClass":
        """Parse a vector literal ``"a,b1,b2,..."`` of basis coordinates.

        Missing trailing coordinates are zero, so ``"6,"`` in ``B(0)`` is 6H
        and ``"1"`` in ``B(3)`` is H.
        """
        parts = [p.strip() for p in text.strip().strip("()[]").split(",")]
        if parts and parts[-1] == "":
            parts.pop()
        if not parts or len(parts) > self.rank:
            raise ParseError(f"expected 1..{self.rank} integers for a class of {self}, got {text!r}", text, 0)
        values = []
        pos = 0
        for p in parts:
            col = text.find(p, pos) if p else pos
            try:
                values.append(int(p))
            except ValueError:
                raise ParseError(f"not an integer: {p!r}", text, max(col, 0)) from None
            pos = col + len(p)
        values.extend([0] * (self.rank - len(values)))
        return DivisorClass(tuple(values), self)

    def __str__(self):
        return str(self.kind)


def lattice(letter: str, r: int) -> PicardLattice:
    """Shorthand: ``lattice("B", 5)`` is ``B(5)``."""
    return PicardLattice(BasisKind(letter, r))


@total_ordering
@dataclass(frozen=True)
class DivisorClass:
    """An integer class in a fixed :class:`PicardLattice`.

    Ordering is lexicographic on the coordinate vector (only meaningful
    within one lattice); it is the canonical order of every emitted set.
    """

    coeffs: tuple
    lattice: PicardLattice

    def __post_init__(self):
        if len(self.coeffs) != self.lattice.rank:
            raise LatticeMismatch(
                f"{self.lattice} has rank {self.lattice.rank}, got {len(self.coeffs)} coefficients"
            )

    def _check(self, other: "DivisorClass"):
        if not isinstance(other, DivisorClass):
            return NotImplemented
        if other.lattice != self.lattice:
            raise LatticeMismatch(f"classes live in {self.lattice} and {other.lattice}")
        return None

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return DivisorClass(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), self.lattice)

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return DivisorClass(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)), self.lattice)

    def __neg__(self):
        return DivisorClass(tuple(-a for a in self.coeffs), self.lattice)

    def __mul__(self, n):
        if not isinstance(n, (int, np.integer)):
            return NotImplemented
        return DivisorClass(tuple(int(n) * a for a in self.coeffs), self.lattice)

    __rmul__ = __mul__

    def __lt__(self, other):
        if not isinstance(other, DivisorClass):
            return NotImplemented
        return (self.lattice.kind, self.coeffs) < (other.lattice.kind, other.coeffs)

    def dot(self, other: "DivisorClass") -> int:
        return intersect(self, other)

    def square(self) -> int:
        return intersect(self, self)

    def anticanonical_degree(self) -> int:
        """``-K.C``."""
        return -intersect(self, self.lattice.canonical)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_root(self) -> bool:
        return self.square() == -2 and self.anticanonical_degree() == 0

    def is_exceptional(self) -> bool:
        return self.square() == -1 and self.anticanonical_degree() == 1

    def is_conic(self) -> bool:
        return self.square() == 0 and self.anticanonical_degree() == 2

    @property
    def h(self) -> int:
        return self.coeffs[0]

    def as_array(self) -> np.ndarray:
        return np.array(self.coeffs, dtype=np.int64)

    def __str__(self):
        names = ["H"] + ([f"Q{i}" for i in range(1, self.lattice.r + 1)] if self.lattice.is_del_pezzo else ["F"])
        out = ""
        for c, name in zip(self.coeffs, names):
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = "" if abs(c) == 1 else str(abs(c))
            out += f"{sign}{mag}{name}"
        if not out:
            return "0"
        return out[1:] if out[0] == "+" else out

    def __repr__(self):
        return f"DivisorClass({str(self)!r} in {self.lattice})"


def intersect(a: DivisorClass, b: DivisorClass) -> int:
    """Intersection product; ``a0*b0 - sum(ai*bi)`` in ``B(r)``."""
    if a.lattice != b.lattice:
        raise LatticeMismatch(f"cannot intersect classes of {a.lattice} and {b.lattice}")
    x, y = a.coeffs, b.coeffs
    if a.lattice.is_del_pezzo:
        return x[0] * y[0] - sum(p * q for p, q in zip(x[1:], y[1:]))
    r = a.lattice.r
    return r * x[0] * y[0] + x[0] * y[1] + x[1] * y[0]


def arithmetic_genus(c: DivisorClass) -> int:
    """``(C^2 + C.K)/2 + 1``."""
    num = c.square() + intersect(c, c.lattice.canonical)
    if num % 2:
        raise InvariantViolation(f"C^2 + C.K is odd for {c}; the lattice pairing is broken")
    return num // 2 + 1


def plane_curve_genus(d: int) -> int:
    """Arithmetic genus of a plane curve of degree ``d``."""
    if d < 1:
        raise ValueError("degree must be positive")
    return (d - 1) * (d - 2) // 2


def h0_of_nD(n: int, dsq: int) -> int:
    """Riemann-Roch on a del Pezzo pair: ``n(n+1)/2 * D^2 + 1``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if not 1 <= dsq <= 9:
        raise ValueError(f"D^2 of a del Pezzo pair lies in [1, 9], got {dsq}")
    return n * (n + 1) // 2 * dsq + 1


def reflect(c: DivisorClass, root: DivisorClass) -> DivisorClass:
    """Reflection ``C + (C.R) R`` in a root ``R`` (``R^2 = -2``, ``R.K = 0``)."""
    if root.lattice != c.lattice:
        raise LatticeMismatch(f"root lives in {root.lattice}, class in {c.lattice}")
    if not root.is_root():
        raise InvalidRoot(f"{root} is not a root (R^2={root.square()}, -K.R={root.anticanonical_degree()})")
    m = intersect(c, root)
    return DivisorClass(tuple(a + m * b for a, b in zip(c.coeffs, root.coeffs)), c.lattice)


# -- exact linear algebra on small integer matrices ---------------------------

def exact_rank(rows) -> int:
    """Rank over Q by fraction-free (Bareiss) elimination."""
    m = [[int(x) for x in row] for row in rows]
    if not m:
        return 0
    rank, prev, ncols = 0, 1, len(m[0])
    for col in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][col]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        p = m[rank][col]
        for i in range(rank + 1, len(m)):
            a = m[i][col]
            m[i] = [(p * x - a * y) // prev for x, y in zip(m[i], m[rank])]
        prev = p
        rank += 1
    return rank


def integer_adjugate(mat) -> tuple[np.ndarray, int]:
    """Return ``(adj, det)`` with ``adj @ mat = det * I``, all in exact integers.

    Fraction-free Gauss-Jordan elimination on ``[mat | I]``; every division
    is exact.
    """
    n = len(mat)
    a = [[int(x) for x in row] + [int(i == j) for j in range(n)] for i, row in enumerate(mat)]
    prev, sign = 1, 1
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k]), None)
        if piv is None:
            raise InvariantViolation("singular Gram matrix")
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        p = a[k][k]
        for i in range(n):
            if i != k:
                f = a[i][k]
                a[i] = [(p * x - f * y) // prev for x, y in zip(a[i], a[k])]
        prev = p
    det = sign * prev
    adj = np.array([row[n:] for row in a], dtype=np.int64) * sign
    m = np.array(mat, dtype=np.int64)
    if not np.array_equal(adj @ m, det * np.eye(n, dtype=np.int64)):
        raise InvariantViolation("adjugate check failed")
    return adj, det


def gcd_of(values) -> int:
    g = 0
    for v in values:
        g = math.gcd(g, int(v))
    return g
