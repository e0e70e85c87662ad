"""Polarized rational surfaces and adjoint chains.

A polarized surface is ``(lat, sub, d)``: a weak del Pezzo surface (or
``P(r)``) together with a nef class ``d``. The negative curves of such a
surface are its simple effective roots and irreducible exceptional classes;
with a few extra generators on small lattices they span the effective cone,
so nefness and the nef threshold reduce to finitely many products.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .classes import irreducible_exceptional, t2_families
from .contraction import Contraction, contract
from .errors import AlreadyMinimal, InvalidPair, InvariantViolation, NotConical, NotMinimal, NotPolarized, TheoremCheckFailed
from .families import INFINITE, family_report, minimal_family_count
from .lattice import DivisorClass, PicardLattice
from .pairs import ALLOWED_Q, DelPezzoPair, scaled_anticanonical
from .subsystems import RootSubsystem, forced_subsystem

__all__ = [
    "PolarizedSurface",
    "MinimalKind",
    "AdjointStep",
    "AdjointChain",
    "ConicalRow",
    "CONICAL_ROWS",
    "is_nef",
    "nef_threshold",
    "is_minimal",
    "is_non_minimal",
    "adjoint_step",
    "adjoint_chain",
    "classify_minimal",
    "minimal_family_degree",
    "conical_classify",
    "pmz_certificate",
    "curve_generators",
    "fiber_classes",
]


@dataclass(frozen=True, eq=False)
class _Surface:
    lattice: PicardLattice
    sub: RootSubsystem


def curve_generators(lat: PicardLattice, sub: RootSubsystem) -> tuple:
    """Classes spanning the effective cone (all effective, all irreducible)."""
    gens = list(sub.simples) + list(irreducible_exceptional(_Surface(lat, sub)))
    if lat.is_del_pezzo and lat.r == 0:
        gens.append(lat.H)
    elif lat.is_del_pezzo and lat.r == 1:
        gens.append(lat.cls(1, -1))
    elif lat.is_ruled:
        gens.append(lat.F)
        if lat.r == 0:
            gens.append(lat.H)
    return tuple(sorted(set(gens)))


def fiber_classes(lat: PicardLattice) -> tuple:
    """Fiber classes of the rulings ``X -> P^1`` that are geometrically ruled."""
    if lat.is_ruled:
        return (lat.F, lat.H) if lat.r == 0 else (lat.F,)
    if lat.r == 1:
        return (lat.cls(1, -1),)
    return ()


@dataclass(frozen=True)
class PolarizedSurface:
    lattice: PicardLattice
    sub: RootSubsystem
    d: DivisorClass

    def __post_init__(self):
        lat = self.lattice
        sub = self.sub
        if sub is None or (lat.is_ruled and not sub.simples):
            object.__setattr__(self, "sub", forced_subsystem(lat))
        elif lat.is_ruled and sub != forced_subsystem(lat):
            raise InvalidPair(f"the effective roots of {lat} are fixed")
        if self.sub.lattice != lat or self.d.lattice != lat:
            raise InvalidPair("surface, subsystem and class must share a lattice")
        bad = [c for c in curve_generators(lat, self.sub) if self.d.dot(c) < 0]
        if bad:
            raise NotPolarized(f"{self.d} is not nef: product {self.d.dot(bad[0])} with {bad[0]}")

    @classmethod
    def of_pair(cls, pair: DelPezzoPair) -> "PolarizedSurface":
        return cls(pair.lattice, pair.sub, pair.D)

    @property
    def K(self) -> DivisorClass:
        return self.lattice.canonical

    def __str__(self):
        return f"({self.lattice}, {self.d})"


def is_nef(s) -> bool:
    """``d.C >= 0`` for every curve generator; accepts a surface or ``(lat, sub, d)``."""
    lat, sub, d = (s.lattice, s.sub, s.d) if isinstance(s, PolarizedSurface) else s
    if lat.is_ruled and not sub.simples:
        sub = forced_subsystem(lat)
    return all(d.dot(c) >= 0 for c in curve_generators(lat, sub))


def nef_threshold(s: PolarizedSurface) -> Fraction:
    """``max{t : d + tK nef}`` as an exact fraction."""
    ratios = [
        Fraction(s.d.dot(c), c.anticanonical_degree())
        for c in curve_generators(s.lattice, s.sub)
        if c.anticanonical_degree() > 0
    ]
    if not ratios:
        raise InvariantViolation(f"nef threshold of {s} is unbounded")
    return min(ratios)


def is_efficient(s: PolarizedSurface) -> bool:
    return all(s.d.dot(e) > 0 for e in irreducible_exceptional(s))


def is_big(s: PolarizedSurface) -> bool:
    # nef classes are big iff d^2 > 0
    return s.d.square() > 0


def is_minimal(s: PolarizedSurface) -> bool:
    t = nef_threshold(s)
    return is_efficient(s) and ((t == 1 and s.d == -s.K) or t < 1)


def is_non_minimal(s: PolarizedSurface) -> bool:
    t = nef_threshold(s)
    return is_big(s) and is_efficient(s) and (t > 1 or (t == 1 and s.d != -s.K))


@dataclass(frozen=True)
class MinimalKind:
    """``kind`` is ``"DP"`` (with ``q``) or ``"GR"`` (with the fiber class and ``a``)."""

    kind: str
    q: Fraction | None = None
    fiber: DivisorClass | None = None
    a: int | None = None
    half_canonical: bool = False

    def __str__(self):
        if self.kind == "DP":
            return f"DelPezzoPair(q={self.q})"
        return f"GeometricallyRuled(fiber={self.fiber})"


@dataclass(frozen=True)
class AdjointStep:
    surface: PolarizedSurface
    contracted: tuple


@dataclass(frozen=True)
class AdjointChain:
    steps: tuple  # AdjointStep per adjoint relation; the terminal surface is last
    terminal: PolarizedSurface
    kind: MinimalKind

    @property
    def length(self) -> int:
        return len(self.steps)

    def surfaces(self) -> tuple:
        return tuple(st.surface for st in self.steps) + (self.terminal,)


def adjoint_step(s: PolarizedSurface) -> tuple:
    """One adjoint relation: returns ``(new surface, contracted classes)``."""
    if not is_non_minimal(s):
        if is_minimal(s):
            raise AlreadyMinimal(f"{s} is already minimal")
        raise NotPolarized(f"{s} is neither minimal nor non-minimal (d must be big, nef and efficient)")
    adj = s.d + s.K
    to_contract = [e for e in irreducible_exceptional(s) if adj.dot(e) == 0]
    for i, a in enumerate(to_contract):
        for b in to_contract[i + 1:]:
            if a.dot(b) != 0:
                raise InvariantViolation(f"contracted curves {a} and {b} meet")
    lat, sub, cur = s.lattice, s.sub, adj
    pending = list(to_contract)
    while pending:
        e = pending.pop(0)
        con: Contraction = contract(lat, sub, e)
        pending = [con.push(x) for x in pending]
        cur = con.push(cur)
        lat, sub = con.target, con.sub
    nxt = PolarizedSurface(lat, sub, cur)
    if not cur.anticanonical_degree() < s.d.anticanonical_degree():
        raise InvariantViolation("adjoint step did not decrease -K.d")
    return nxt, tuple(to_contract)


def adjoint_chain(s: PolarizedSurface, max_steps: int = 64) -> AdjointChain:
    steps = []
    cur = s
    while not is_minimal(cur):
        if len(steps) >= max_steps:
            raise InvariantViolation("adjoint chain did not terminate")
        nxt, contracted = adjoint_step(cur)
        steps.append(AdjointStep(cur, contracted))
        cur = nxt
    return AdjointChain(tuple(steps), cur, classify_minimal(cur))


def classify_minimal(s: PolarizedSurface) -> MinimalKind:
    if not is_minimal(s):
        raise NotMinimal(f"{s} is not a minimal polarized surface")
    for q in ALLOWED_Q:
        if scaled_anticanonical(s.lattice, q) == s.d:
            return MinimalKind("DP", q=q)
    for f in fiber_classes(s.lattice):
        for cls, half in ((s.d, False), (2 * s.d + s.K, True)):
            a = _multiple_of(cls, f)
            if a is not None and a > 0:
                return MinimalKind("GR", fiber=f, a=a, half_canonical=half)
    raise NotMinimal(f"{s} is neither a del Pezzo pair nor geometrically ruled")


def _multiple_of(c: DivisorClass, f: DivisorClass):
    i = next(j for j, x in enumerate(f.coeffs) if x)
    if c.coeffs[i] % f.coeffs[i]:
        return None
    a = c.coeffs[i] // f.coeffs[i]
    return a if a * f == c else None


def _terminal_degree(term: PolarizedSurface, kind: MinimalKind) -> int:
    if kind.kind == "GR":
        return 0
    lat = term.lattice
    if lat.is_del_pezzo and lat.r == 0:
        return term.d.dot(lat.H)
    pair = DelPezzoPair(lat, kind.q, term.sub)
    classes = t2_families(pair)
    if classes:
        return min(term.d.dot(g) for g in classes)
    # degree 1, 2 pairs without conic pencils: the T3/T4/T5 families have DF = 2
    return 2


def minimal_family_degree(chain: AdjointChain) -> int:
    v = _terminal_degree(chain.terminal, chain.kind)
    surfaces = chain.surfaces()
    for before, after in reversed(list(zip(surfaces, surfaces[1:]))):
        plane = lambda x: x.lattice.is_del_pezzo and x.lattice.r == 0  # noqa: E731
        v += 3 if plane(before) and plane(after) else 2
    return v


# -- conical surfaces ----------------------------------------------------------

@dataclass(frozen=True)
class ConicalRow:
    row: int
    t: Fraction
    dsq: str
    kind: str
    dim: int
    description: str


CONICAL_ROWS = (
    ConicalRow(1, Fraction(1, 3), "1", "DP", 5, "conics in the projective plane"),
    ConicalRow(2, Fraction(2, 3), "4", "DP", 2, "minimal families on Veronese surface"),
    ConicalRow(3, Fraction(1, 2), "2", "DP", 3, "hyperplane sections of quadric surface"),
    ConicalRow(4, Fraction(1), "[3,8]", "DP", 1, "minimal families"),
    ConicalRow(5, Fraction(1, 2), "3", "GR", 2, "Y is ruled by lines"),
    ConicalRow(6, Fraction(1, 2), "4", "GR", 1, "Y is ruled by lines"),
    ConicalRow(7, Fraction(1), ">2", "NM", 1, "unique minimal family defined by ruling"),
)


@dataclass(frozen=True)
class ConicalResult:
    row: ConicalRow
    t: Fraction
    dsq: int
    conic_class: DivisorClass
    dim: int


def _conic_dimension(t: DivisorClass) -> int:
    # Riemann-Roch on a rational surface: h^0(T) - 1 = (T^2 - K.T) / 2
    num = t.square() + t.anticanonical_degree()
    return num // 2


def conical_classify(s: PolarizedSurface) -> ConicalResult:
    """Match ``(t(D), D^2, type)`` against the rows of the conical-surface table.

    The dimension of the conic family is computed from a witness conic class
    and must agree with the table.
    """
    t = nef_threshold(s)
    dsq = s.d.square()
    lat = s.lattice
    match = None
    witness = None
    if is_minimal(s):
        kind = classify_minimal(s)
        if kind.kind == "DP":
            if kind.q == Fraction(1, 3) and dsq == 1:
                match, witness = 1, 2 * s.d
            elif kind.q == Fraction(2, 3) and dsq == 4:
                match, witness = 2, lat.H
            elif kind.q == Fraction(1, 2) and dsq == 2:
                match, witness = 3, s.d
            elif kind.q == 1 and 3 <= dsq <= 8:
                g = t2_families(DelPezzoPair(lat, kind.q, s.sub))
                if g:
                    match, witness = 4, g[0]
        elif kind.kind == "GR" and t == Fraction(1, 2) and dsq in (3, 4):
            match, witness = (5 if dsq == 3 else 6), lat.H
    elif is_non_minimal(s) and t == 1 and dsq > 2:
        nxt, _ = adjoint_step(s)
        if nxt.d.square() == 0:
            # the adjoint class pulls back to d + K, the class of the ruling
            match, witness = 7, s.d + s.K
    if match is None:
        raise NotConical(f"{s} is not a conical surface (t = {t}, D^2 = {dsq})")
    row = CONICAL_ROWS[match - 1]
    if s.d.dot(witness) != 2:
        raise InvariantViolation(f"witness {witness} is not a conic for {s}")
    dim = _conic_dimension(witness)
    if row.t != t or dim != row.dim:
        raise InvariantViolation(f"row {row.row} expects t={row.t}, dim={row.dim}; computed t={t}, dim={dim}")
    return ConicalResult(row, t, dsq, witness, dim)


# -- parametrization certificates ----------------------------------------------

@dataclass(frozen=True)
class PmzCertificate:
    """Either two families with product one and the bidegree ``v``, or a status string."""

    status: str  # "pair", "single family" or "none"
    f1: DivisorClass | None = None
    f2: DivisorClass | None = None
    v: int | None = None


def pmz_certificate(pair: DelPezzoPair) -> PmzCertificate:
    """Two fibration families meeting once, giving a map from ``P^1 x P^1``.

    ``v`` is the larger of their degrees ``D.f``. If the pair has at least
    two minimal families but no such couple turns up, the theorem check fails.
    """
    rep = family_report(pair)
    D = pair.D
    if rep.t1 is INFINITE:
        H = pair.lattice.H
        return PmzCertificate("pair", H, H, D.dot(H))
    classes = rep.t0_classes if rep.t0 is not None else rep.t2_classes
    n_families = minimal_family_count(rep).value
    for i, f1 in enumerate(classes):
        for f2 in classes[i + 1:]:
            if f1.dot(f2) == 1:
                return PmzCertificate("pair", f1, f2, max(D.dot(f1), D.dot(f2)))
    if n_families == 1:
        return PmzCertificate("single family")
    if len(classes) >= 2:
        raise TheoremCheckFailed(
            f"{pair} has {len(classes)} fibration families but no two of them meet once"
        )
    return PmzCertificate("none")
