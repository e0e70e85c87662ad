"""Root, exceptional and conic classes, and the effectivity filters on them.

All emitted collections are tuples in canonical (ascending lexicographic)
order of coefficient vectors.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

import numpy as np

from . import kernels
from .errors import InvalidPair, InvariantViolation, LatticeMismatch
from .lattice import DivisorClass, PicardLattice

__all__ = [
    "ClassSets",
    "class_sets",
    "enumerate_roots",
    "enumerate_exceptional",
    "enumerate_conic",
    "enumerate_classes",
    "naive_class_sets",
    "is_effective_korthogonal",
    "effective_roots",
    "irreducible_exceptional",
    "irreducible_exceptional_array",
    "t2_families",
    "products",
]

# (C^2, -K.C) of each class set
ROOT, EXCEPTIONAL, CONIC = (-2, 0), (-1, 1), (0, 2)


@dataclass(frozen=True)
class ClassSets:
    roots: tuple
    exceptional: tuple
    conic: tuple


def _ruled_solutions(r: int, s: int, k: int) -> list:
    # C = aH + bF has -K.C = (r+2)a + 2b = k and C^2 = 2a^2 - ka ... = s,
    # so 2a^2 - k a + s = 0 and b = (k - (r+2)a) / 2.
    out = []
    disc = k * k - 8 * s
    if disc < 0:
        return out
    root = int(round(disc ** 0.5))
    while root * root > disc:
        root -= 1
    while (root + 1) ** 2 <= disc:
        root += 1
    if root * root != disc:
        return out
    for num in {k - root, k + root}:
        if num % 4:
            continue
        a = num // 4
        twice_b = k - (r + 2) * a
        if twice_b % 2 == 0:
            out.append((a, twice_b // 2))
    return sorted(out)


@lru_cache(maxsize=None)
def _coords(kind, s: int, k: int) -> tuple:
    if kind.is_ruled:
        vecs = _ruled_solutions(kind.r, s, k)
    else:
        vecs = kernels.short_vectors(kind.r, s, k)
    return tuple(tuple(int(x) for x in v) for v in vecs)


def enumerate_classes(lat: PicardLattice, s: int, k: int) -> tuple:
    """Every class with ``C^2 = s`` and ``-K.C = k`` (``k > 0`` or ``s < 0``)."""
    if k * k < s * lat.degree:
        return ()
    out = tuple(DivisorClass(v, lat) for v in _coords(lat.kind, s, k))
    for c in out:
        if c.square() != s or c.anticanonical_degree() != k:
            raise InvariantViolation(f"enumerator returned {c} outside the target set")
    return out


def enumerate_roots(lat: PicardLattice) -> tuple:
    return enumerate_classes(lat, *ROOT)


def enumerate_exceptional(lat: PicardLattice) -> tuple:
    return enumerate_classes(lat, *EXCEPTIONAL)


def enumerate_conic(lat: PicardLattice) -> tuple:
    return enumerate_classes(lat, *CONIC)


def class_sets(lat: PicardLattice) -> ClassSets:
    return ClassSets(enumerate_roots(lat), enumerate_exceptional(lat), enumerate_conic(lat))


@lru_cache(maxsize=None)
def class_array(lat: PicardLattice, which: str) -> np.ndarray:
    """The class set ``which`` as an int64 matrix, one class per row."""
    target = {"roots": ROOT, "exceptional": EXCEPTIONAL, "conic": CONIC}[which]
    arr = np.array(_coords(lat.kind, *target), dtype=np.int64).reshape(-1, lat.rank)
    arr.setflags(write=False)
    return arr


def products(lat: PicardLattice, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Matrix of intersection products between the rows of ``a`` and ``b``."""
    a = np.asarray(a, dtype=np.int64).reshape(-1, lat.rank)
    b = np.asarray(b, dtype=np.int64).reshape(-1, lat.rank)
    return a @ lat.gram @ b.T


# -- independent oracle ------------------------------------------------------

def naive_class_sets(lat: PicardLattice, h_bound: int = 15, c_bound: int = 8) -> ClassSets:
    """Exhaustive search over the box ``|h| <= h_bound``, ``|c_i| <= c_bound``.

    Shares no code with the main enumerator: the box is split into two halves
    joined on ``(sum, sum of squares)``, and every candidate is re-checked
    with the Gram matrix.
    """
    targets = {ROOT: [], EXCEPTIONAL: [], CONIC: []}
    if lat.is_ruled:
        for a, b in product(range(-h_bound, h_bound + 1), range(-c_bound * 4, c_bound * 4 + 1)):
            v = np.array([a, b], dtype=np.int64)
            key = (int(v @ lat.gram @ v), int(lat.anticanonical_array @ lat.gram @ v))
            if key in targets:
                targets[key].append((a, b))
    else:
        r = lat.r
        left_n = r // 2
        rng = range(-c_bound, c_bound + 1)

        def halves(n):
            groups = defaultdict(list)
            for t in product(rng, repeat=n):
                groups[(sum(t), sum(x * x for x in t))].append(t)
            return groups

        left, right = halves(left_n), halves(r - left_n)
        for h in range(-h_bound, h_bound + 1):
            for (s, k), bucket in targets.items():
                need_sum, need_sq = k - 3 * h, h * h - s
                if need_sq < 0:
                    continue
                for (ls, lq), lefts in left.items():
                    rights = right.get((need_sum - ls, need_sq - lq))
                    if rights:
                        bucket.extend((h,) + a + b for a in lefts for b in rights)
    sets = []
    mK = lat.anticanonical_array
    for key in (ROOT, EXCEPTIONAL, CONIC):
        rows = sorted(set(targets[key]))
        arr = np.array(rows, dtype=np.int64).reshape(-1, lat.rank)
        if len(rows):
            sq = np.einsum("ij,jk,ik->i", arr, lat.gram, arr)
            deg = arr @ lat.gram @ mK
            if not (np.all(sq == key[0]) and np.all(deg == key[1])):
                raise InvariantViolation("oracle produced a class outside its target")
        sets.append(tuple(DivisorClass(tuple(int(x) for x in v), lat) for v in rows))
    return ClassSets(*sets)


# -- effectivity -------------------------------------------------------------

def is_effective_korthogonal(c: DivisorClass, sub) -> bool:
    """True iff ``c`` is a nonnegative integer combination of ``sub``'s simples."""
    if c.lattice != sub.lattice:
        raise LatticeMismatch(f"class lives in {c.lattice}, subsystem in {sub.lattice}")
    if c.anticanonical_degree() != 0:
        raise InvalidPair(f"{c} is not K-orthogonal (-K.C = {c.anticanonical_degree()})")
    coeffs = sub.decompose(c)
    return coeffs is not None and all(x >= 0 for x in coeffs)


def effective_roots(sub, lat: PicardLattice | None = None) -> tuple:
    """Positive roots of ``sub``: roots in the nonnegative span of its simples."""
    if lat is not None and lat != sub.lattice:
        raise LatticeMismatch(f"subsystem lives in {sub.lattice}, not {lat}")
    return sub.positive_roots()


def _nonneg_against(lat, arr: np.ndarray, simples: np.ndarray) -> np.ndarray:
    if len(arr) == 0 or len(simples) == 0:
        return np.ones(len(arr), dtype=bool)
    return np.all(products(lat, arr, simples) >= 0, axis=1)


def irreducible_exceptional_array(lat: PicardLattice, sub) -> np.ndarray:
    """Rows of :func:`irreducible_exceptional` as an int64 matrix."""
    arr = class_array(lat, "exceptional")
    return arr[_nonneg_against(lat, arr, sub.simple_array)]


def irreducible_exceptional(pair) -> tuple:
    """Exceptional classes meeting every effective root nonnegatively.

    Positive roots are nonnegative combinations of the simples, so testing
    against the simples is enough.
    """
    lat = pair.lattice
    return _to_classes(lat, irreducible_exceptional_array(lat, pair.sub))


def t2_families(pair) -> tuple:
    """Conic classes meeting every effective root nonnegatively."""
    lat, sub = pair.lattice, pair.sub
    arr = class_array(lat, "conic")
    return _to_classes(lat, arr[_nonneg_against(lat, arr, sub.simple_array)])


def _to_classes(lat, arr) -> tuple:
    return tuple(DivisorClass(tuple(map(int, v)), lat) for v in arr.tolist())
