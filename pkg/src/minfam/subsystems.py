"""Simple systems of effective roots (C1 labels) and their Dynkin types.

Label grammar (``B(r)`` bases), tokens separated by commas or whitespace:

``ij``      ``Qi - Qj``
``1abc``    ``H - Qa - Qb - Qc``
``2ab``     ``2H`` minus the six ``Q``'s whose indices in 1..8 are not ``a, b``
``30i``     ``3H - 2Qi`` minus the remaining ``Q``'s (rank 8); ``31`` and
            ``32`` are accepted as short forms at rank 8
``v:...``   vector literal: ``v:`` followed by exactly rank+1 integers
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
import re

import numpy as np

from . import kernels
from .classes import class_array, enumerate_roots, irreducible_exceptional, products, t2_families
from .errors import InvalidRoot, InvalidSubsystem, InvariantViolation, LatticeMismatch, ParseError
from .lattice import DivisorClass, PicardLattice, exact_rank, integer_adjugate, lattice

__all__ = [
    "RootSubsystem",
    "DynkinType",
    "parse_label",
    "format_label",
    "dynkin_type",
    "fingerprint",
    "label_pool",
    "enumerate_labels",
    "count_labels",
    "positive_root_closure",
    "permute_class",
    "permute_subsystem",
    "forced_subsystem",
]


def _as_lattice(rank_or_lattice) -> PicardLattice:
    if isinstance(rank_or_lattice, PicardLattice):
        return rank_or_lattice
    return lattice("B", int(rank_or_lattice))


@dataclass(frozen=True)
class RootSubsystem:
    """A validated simple system; ``simples`` are kept in canonical order."""

    lattice: PicardLattice
    simples: tuple = ()
    _validated: bool = field(default=False, repr=False, compare=False)

    def __post_init__(self):
        simples = tuple(sorted(self.simples))
        object.__setattr__(self, "simples", simples)
        for s in simples:
            if s.lattice != self.lattice:
                raise LatticeMismatch(f"simple {s} lives in {s.lattice}, not {self.lattice}")
            if not s.is_root():
                raise InvalidRoot(f"{s} is not a root (C^2={s.square()}, -K.C={s.anticanonical_degree()})")
        if len(set(simples)) != len(simples):
            raise InvalidSubsystem("duplicate simple roots")
        if not self._validated:
            for i, a in enumerate(simples):
                for b in simples[i + 1:]:
                    if a.dot(b) not in (0, 1):
                        raise InvalidSubsystem(f"{a} and {b} have product {a.dot(b)}, expected 0 or 1")
            if exact_rank([s.coeffs for s in simples]) != len(simples):
                raise InvalidSubsystem("simple roots are linearly dependent")

    @property
    def rank(self) -> int:
        return self.lattice.r

    def __len__(self):
        return len(self.simples)

    def __iter__(self):
        return iter(self.simples)

    @cached_property
    def simple_array(self) -> np.ndarray:
        arr = np.array([s.coeffs for s in self.simples], dtype=np.int64).reshape(-1, self.lattice.rank)
        arr.setflags(write=False)
        return arr

    @cached_property
    def _solver(self):
        if not self.simples:
            return None
        gs = products(self.lattice, self.simple_array, self.simple_array)
        return integer_adjugate(gs.tolist())

    def decompose(self, c: DivisorClass):
        """Coordinates of ``c`` over the simples, or ``None`` if ``c`` is outside their integer span."""
        if c.lattice != self.lattice:
            raise LatticeMismatch(f"class lives in {c.lattice}, subsystem in {self.lattice}")
        if not self.simples:
            return () if c.is_zero() else None
        adj, det = self._solver
        rhs = products(self.lattice, c.as_array(), self.simple_array)[0]
        num = adj @ rhs
        if np.any(num % det):
            return None
        x = num // det
        if not np.array_equal(x @ self.simple_array, c.as_array()):
            return None
        return tuple(int(v) for v in x)

    def in_nonnegative_span(self, arr) -> np.ndarray:
        """Row mask: which rows of ``arr`` are nonnegative integer combinations of the simples."""
        arr = np.asarray(arr, dtype=np.int64).reshape(-1, self.lattice.rank)
        if not self.simples:
            return ~np.any(arr, axis=1)
        adj, det = self._solver
        num = products(self.lattice, arr, self.simple_array) @ adj.T
        ok = np.all(num % det == 0, axis=1)
        x = num // det
        ok &= np.all(x >= 0, axis=1)
        ok &= np.all(x @ self.simple_array == arr, axis=1)
        return ok

    @cached_property
    def _positive(self) -> tuple:
        if not self.simples:
            return ()
        roots = class_array(self.lattice, "roots")
        ok = self.in_nonnegative_span(roots)
        return tuple(DivisorClass(tuple(int(v) for v in row), self.lattice) for row in roots[ok])

    def positive_roots(self) -> tuple:
        """Roots that are nonnegative integer combinations of the simples."""
        return self._positive

    def is_subset_of(self, other: "RootSubsystem") -> bool:
        return set(self.simples) <= set(other.simples)

    def __str__(self):
        return format_label(self)


def forced_subsystem(lat: PicardLattice) -> RootSubsystem:
    """The effective roots every pair on ``lat`` must carry: ``{H - 2F}`` on ``P(2)``."""
    if lat.is_ruled and lat.r == 2:
        return RootSubsystem(lat, (lat.cls(1, -2),))
    return RootSubsystem(lat, ())


# -- parsing / formatting ----------------------------------------------------

_TOKEN = re.compile(r"[^\s,]+")


def _token_class(tok: str, lat: PicardLattice, col: int, text: str) -> DivisorClass:
    r = lat.r
    if not tok.isdigit():
        raise ParseError(f"malformed label token {tok!r}", text, col)
    idx = [int(ch) for ch in tok]
    coeffs = [0] * lat.rank

    def check(indices):
        for j in indices:
            if not 1 <= j <= r:
                raise ParseError(f"index {j} out of range 1..{r} in token {tok!r}", text, col)

    if len(tok) == 2 and r == 8 and idx[0] == 3 and idx[1] in (1, 2):
        idx = [3, 0, idx[1]]
        tok = "30" + tok[1]
    if len(tok) == 2:
        i, j = idx
        check((i, j))
        if i == j:
            raise ParseError(f"token {tok!r} is the zero class", text, col)
        coeffs[i], coeffs[j] = 1, -1
    elif len(tok) == 4 and idx[0] == 1:
        check(idx[1:])
        coeffs[0] = 1
        for j in idx[1:]:
            coeffs[j] -= 1
    elif len(tok) == 3 and idx[0] == 2:
        omitted = set(idx[1:])
        if not omitted <= set(range(1, 9)) or len(omitted) != 2:
            raise ParseError(f"token {tok!r} must omit two distinct indices in 1..8", text, col)
        used = sorted(set(range(1, 9)) - omitted)
        check(used)
        coeffs[0] = 2
        for j in used:
            coeffs[j] = -1
    elif len(tok) == 3 and idx[0] == 3 and idx[1] == 0:
        if r != 8:
            raise ParseError(f"token {tok!r} needs rank 8", text, col)
        check(idx[2:])
        coeffs = [3] + [-1] * 8
        coeffs[idx[2]] = -2
    else:
        raise ParseError(f"malformed label token {tok!r}", text, col)
    return DivisorClass(tuple(coeffs), lat)


def parse_label(text: str, rank) -> RootSubsystem:
    """Parse a label such as ``"1123,45"`` (``rank`` is ``r`` or a lattice)."""
    lat = _as_lattice(rank)
    simples = []
    matches = list(_TOKEN.finditer(text))
    pos = 0
    while pos < len(matches):
        m = matches[pos]
        tok, col = m.group(), m.start()
        if tok.lower().startswith("v:"):
            first = tok[2:]
            nums = ([(first, col + 2)] if first else [])
            pos += 1
            while len(nums) < lat.rank and pos < len(matches):
                nums.append((matches[pos].group(), matches[pos].start()))
                pos += 1
            if len(nums) != lat.rank:
                raise ParseError(f"vector literal needs {lat.rank} integers for {lat}", text, col)
            vals = []
            for s, c in nums:
                try:
                    vals.append(int(s))
                except ValueError:
                    raise ParseError(f"not an integer: {s!r}", text, c) from None
            cls = DivisorClass(tuple(vals), lat)
        else:
            if lat.is_ruled:
                raise ParseError("labels on P(r) bases must be vector literals", text, col)
            cls = _token_class(tok, lat, col, text)
            pos += 1
        if not cls.is_root():
            raise ParseError(f"{cls} is not a root", text, col)
        simples.append(cls)
    try:
        return RootSubsystem(lat, tuple(simples))
    except (InvalidSubsystem, InvalidRoot) as exc:
        raise ParseError(str(exc), text, 0) from None


def _format_root(c: DivisorClass) -> str:
    lat = c.lattice
    v = c.coeffs
    if lat.is_del_pezzo:
        r = lat.r
        q = v[1:]
        if v[0] == 0:
            i = q.index(1) + 1
            j = q.index(-1) + 1
            if not (r == 8 and i == 3 and j in (1, 2)):
                return f"{i}{j}"
        elif v[0] == 1:
            return "1" + "".join(str(i + 1) for i, x in enumerate(q) if x == -1)
        elif v[0] == 2 and all(x in (0, -1) for x in q):
            omitted = sorted(set(range(1, 9)) - {i + 1 for i, x in enumerate(q) if x == -1})
            return "2" + "".join(map(str, omitted))
        elif v[0] == 3 and r == 8 and sorted(q) == [-2] + [-1] * 7:
            return "30" + str(q.index(-2) + 1)
    return "v:" + ",".join(map(str, v))


def format_label(sub: RootSubsystem) -> str:
    """Inverse of :func:`parse_label`; tokens are joined by commas."""
    return ",".join(_format_root(s) for s in sub.simples)


# -- Dynkin types --------------------------------------------------------------

@dataclass(frozen=True)
class DynkinType:
    """Multiset of ADE components, stored sorted descending by ``(letter, n)``."""

    components: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(sorted(self.components, reverse=True)))

    @classmethod
    def parse(cls, text: str) -> "DynkinType":
        if text.strip() == "A0":
            return cls(())
        comps = []
        for part in text.split("+"):
            m = re.fullmatch(r"\s*(\d*)([ADE])(\d+)\s*", part)
            if not m:
                raise ParseError(f"bad Dynkin component {part!r}", text, text.find(part))
            comps.extend([(m.group(2), int(m.group(3)))] * int(m.group(1) or 1))
        return cls(tuple(comps))

    def __str__(self):
        if not self.components:
            return "A0"
        counts = Counter(self.components)
        parts = []
        for comp in sorted(counts, reverse=True):
            mult = counts[comp]
            parts.append(f"{mult if mult > 1 else ''}{comp[0]}{comp[1]}")
        return "+".join(parts)

    @property
    def rank(self) -> int:
        return sum(n for _, n in self.components)


def _classify_component(nodes, adj) -> tuple:
    n = len(nodes)
    edges = sum(len(adj[v]) for v in nodes) // 2
    if edges != n - 1:
        raise InvariantViolation("simple system graph has a cycle")
    branch = [v for v in nodes if len(adj[v]) >= 3]
    if not branch:
        return ("A", n)
    if len(branch) > 1 or len(adj[branch[0]]) > 3:
        raise InvariantViolation("simple system graph is not of ADE shape")
    center = branch[0]
    arms = []
    for start in adj[center]:
        length, prev, cur = 1, center, start
        while True:
            nxt = [w for w in adj[cur] if w != prev]
            if not nxt:
                break
            if len(nxt) > 1:
                raise InvariantViolation("simple system graph is not of ADE shape")
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    arms.sort()
    if arms[0] == 1 and arms[1] == 1:
        return ("D", n)
    if arms[0] == 1 and arms[1] == 2 and arms[2] in (2, 3, 4):
        return ("E", n)
    raise InvariantViolation(f"simple system graph has arms {arms}, not of ADE shape")


def dynkin_type(sub: RootSubsystem) -> DynkinType:
    simples = sub.simples
    n = len(simples)
    adj = {i: [] for i in range(n)}
    for i in range(n):
        for j in range(i + 1, n):
            p = simples[i].dot(simples[j])
            if p == 1:
                adj[i].append(j)
                adj[j].append(i)
            elif p != 0:
                raise InvariantViolation(f"simples {simples[i]}, {simples[j]} have product {p}")
    seen, comps = set(), []
    for v in range(n):
        if v in seen:
            continue
        stack, comp = [v], []
        seen.add(v)
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        comps.append(_classify_component(comp, adj))
    return DynkinType(tuple(comps))


def fingerprint(pair) -> tuple:
    """``(rank, Dynkin string, #effective roots, #irreducible exceptional, #T2 classes)``."""
    return (
        pair.lattice.r,
        str(dynkin_type(pair.sub)),
        len(pair.sub.positive_roots()),
        len(irreducible_exceptional(pair)),
        len(t2_families(pair)),
    )


def positive_root_closure(sub: RootSubsystem) -> tuple:
    """Positive roots by closure: add a simple ``a`` to ``b`` whenever ``a.b = 1``.

    Independent of the decomposition-based :meth:`RootSubsystem.positive_roots`;
    the product-1 step is the reflection ``b -> b + (b.a) a``.
    """
    found = set(sub.simples)
    frontier = list(sub.simples)
    while frontier:
        nxt = []
        for b in frontier:
            for a in sub.simples:
                if b.dot(a) == 1:
                    c = b + a
                    if c not in found:
                        found.add(c)
                        nxt.append(c)
        frontier = nxt
    return tuple(sorted(found))


# -- permutations of Q1..Qr -----------------------------------------------------

def permute_class(c: DivisorClass, sigma) -> DivisorClass:
    """Apply ``Qi -> Q_sigma(i)``; ``sigma`` is a sequence with ``sigma[i-1]`` in 1..r."""
    if not c.lattice.is_del_pezzo:
        return c
    v = [0] * c.lattice.rank
    v[0] = c.coeffs[0]
    for i, x in enumerate(c.coeffs[1:], start=1):
        v[sigma[i - 1]] = x
    return DivisorClass(tuple(v), c.lattice)


def permute_subsystem(sub: RootSubsystem, sigma) -> RootSubsystem:
    return RootSubsystem(sub.lattice, tuple(permute_class(s, sigma) for s in sub.simples), _validated=True)


# -- label enumeration ---------------------------------------------------------

@lru_cache(maxsize=None)
def label_pool(lat: PicardLattice) -> tuple:
    """Positive roots for a generic linear functional: ``h > 0`` or ``Qi - Qj`` with ``i < j``.

    Every simple system is equivalent under a permutation of the ``Qi``
    (together with a Weyl reflection) to one drawn from this pool; the pool
    lies in an open half-space, so any pairwise product-0/1 subset of it is
    linearly independent.
    """
    out = []
    for c in enumerate_roots(lat):
        if c.coeffs[0] > 0:
            out.append(c)
        elif c.coeffs[0] == 0 and lat.is_del_pezzo:
            nz = [x for x in c.coeffs[1:] if x]
            if nz[0] == 1:
                out.append(c)
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def _pool_compat(lat: PicardLattice) -> np.ndarray:
    pool = label_pool(lat)
    arr = np.array([c.coeffs for c in pool], dtype=np.int64).reshape(-1, lat.rank)
    m = products(lat, arr, arr)
    compat = ((m == 0) | (m == 1)).astype(np.uint8)
    compat.setflags(write=False)
    return compat


def count_labels(lat: PicardLattice) -> int:
    """Number of simple systems drawn from :func:`label_pool`, the empty one included."""
    lat = _as_lattice(lat)
    if not lat.is_del_pezzo:
        return 1
    return int(kernels.count_simple_systems(_pool_compat(lat)))


def enumerate_labels(lat, max_size: int = -1) -> list:
    """All simple systems drawn from :func:`label_pool`, in lexicographic order."""
    lat = _as_lattice(lat)
    if not lat.is_del_pezzo:
        return [forced_subsystem(lat)]
    pool = label_pool(lat)
    return [
        RootSubsystem(lat, tuple(pool[i] for i in idx), _validated=True)
        for idx in kernels.collect_simple_systems(_pool_compat(lat), max_size)
    ]
