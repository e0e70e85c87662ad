"""Component structure of the quartic branch curve of a degree-2 pair.

The double cover ``X -> P^2`` given by ``-K`` is branched along a quartic
``B``. Its singular points correspond to the Dynkin components of the
effective roots, a line component corresponds to an irreducible exceptional
``E`` with ``-K - 2E`` effective, and the genus balance

    3 - delta_total = sum(p_g(B_i)) - N + 1

fixes how the remaining degree splits.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .classes import irreducible_exceptional_array
from .errors import InvalidPair, InvariantViolation, NotRealizable
from .lattice import plane_curve_genus
from .subsystems import dynkin_type

__all__ = [
    "BranchDecomposition",
    "delta_invariant",
    "milnor_number",
    "branch_count",
    "line_components",
    "branch_decomposition",
    "t3_count",
]


def milnor_number(component) -> int:
    return component[1]


def branch_count(component) -> int:
    letter, n = component
    if letter == "A":
        return 1 if n % 2 == 0 else 2
    if letter == "D":
        return 3 if n % 2 == 0 else 2
    if letter == "E":
        return {6: 1, 7: 2, 8: 1}[n]
    raise ValueError(f"unknown Dynkin letter {letter!r}")


def delta_invariant(component) -> int:
    """delta of the plane curve singularity of type ``(letter, n)``.

    >>> delta_invariant(("A", 7)), delta_invariant(("D", 4)), delta_invariant(("E", 8))
    (4, 3, 4)
    """
    letter, n = component
    if letter == "A":
        return (n + 1) // 2
    if letter == "D":
        return n // 2 + 1
    if letter == "E":
        return {6: 3, 7: 4, 8: 4}[n]
    raise ValueError(f"unknown Dynkin letter {letter!r}")


@dataclass(frozen=True)
class BranchDecomposition:
    components: tuple  # (degree, geometric genus), sorted descending
    delta_total: int
    line_count: int

    def __post_init__(self):
        comps = tuple(sorted(self.components, reverse=True))
        object.__setattr__(self, "components", comps)
        if sum(d for d, _ in comps) != 4:
            raise InvariantViolation(f"branch components {comps} do not have total degree 4")
        for d, g in comps:
            if not 0 <= g <= plane_curve_genus(d):
                raise InvariantViolation(f"component of degree {d} cannot have genus {g}")
        if plane_curve_genus(4) - self.delta_total != sum(g for _, g in comps) - len(comps) + 1:
            raise InvariantViolation(f"genus balance fails for {comps} with delta {self.delta_total}")


def _check_degree_two(pair):
    if pair.q != Fraction(1) or pair.lattice.degree != 2:
        raise InvalidPair(f"branch curves need an anticanonical degree-2 pair, got {pair}")


def line_components(pair) -> int:
    """Number of irreducible exceptional ``E`` with ``-K - 2E`` effective."""
    _check_degree_two(pair)
    exc = irreducible_exceptional_array(pair.lattice, pair.sub)
    if not len(exc):
        return 0
    # -K.(-K - 2E) = 0, so effectivity is decided by the simple roots
    arr = pair.lattice.anticanonical_array - 2 * exc
    return int(np.count_nonzero(pair.sub.in_nonnegative_span(arr)))


def _candidates(lines: int, delta: int) -> list:
    """Component lists compatible with ``lines`` line components and the genus balance."""
    out = []
    rest = 4 - lines
    if rest == 4:
        splits = [(4,), (2, 2)]
    elif rest == 3:
        splits = [(3,)]
    elif rest == 2:
        splits = [(2,)]
    elif rest == 0:
        splits = [()]
    else:
        splits = []
    for split in splits:
        n = len(split) + lines
        # conics and lines are rational; any genus sits on the component of degree >= 3
        genus = plane_curve_genus(4) - delta + n - 1
        big = [d for d in split if d >= 3]
        if big:
            if 0 <= genus <= plane_curve_genus(big[0]):
                out.append(tuple((d, genus if d >= 3 else 0) for d in split) + ((1, 0),) * lines)
        elif genus == 0:
            out.append(tuple((d, 0) for d in split) + ((1, 0),) * lines)
    return out


def branch_decomposition(pair) -> BranchDecomposition:
    _check_degree_two(pair)
    dt = dynkin_type(pair.sub)
    delta = sum(delta_invariant(c) for c in dt.components)
    lines = line_components(pair)
    cands = _candidates(lines, delta)
    if not cands:
        raise NotRealizable(
            f"label {pair.sub} ({dt}) is not realizable as a degree-2 del Pezzo pair: "
            f"{lines} line component(s) and delta {delta} admit no quartic branch curve"
        )
    if len(cands) > 1:
        raise InvariantViolation(
            f"ambiguous branch curve for {pair.sub}: {cands}; the one-line-per-exceptional "
            "correspondence needs revisiting"
        )
    return BranchDecomposition(cands[0], delta, lines)


def t3_count(pair) -> tuple:
    """``(number of nonlinear branch components, number of those of genus 0)``."""
    bd = branch_decomposition(pair)
    big = [c for c in bd.components if c[0] >= 2]
    if bd.line_count <= 2 and not big:
        raise InvariantViolation("a quartic with at most two lines has a nonlinear component")
    return (len(big), sum(1 for _, g in big if g == 0))
