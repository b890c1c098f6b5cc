"""Dual ideals, quasipoints and the Stone topology of a finite lattice.

In a finite lattice every dual ideal is the principal filter of its
minimum, so ideals are keyed by a generator element; the set-of-subsets
view survives only in the brute-force oracle used to cross-check the
enumeration on small lattices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .errors import LatticeError
from .lattice import FiniteOML

BRUTE_FORCE_LIMIT = 12


@dataclass(frozen=True, eq=False)
class DualIdeal:
    """Upward-closed, meet-closed subset not containing bottom; stored via
    its minimum element (every filter in a finite lattice is principal)."""

    lattice: FiniteOML
    generator: int

    def __post_init__(self):
        if self.generator == self.lattice.bottom:
            raise LatticeError("a dual ideal cannot contain bottom")
        self.lattice._check(self.generator)

    def __eq__(self, other):
        # a quasipoint equals the plain ideal with the same generator
        if not isinstance(other, DualIdeal):
            return NotImplemented
        return self.lattice is other.lattice and self.generator == other.generator

    def __hash__(self):
        return hash((id(self.lattice), self.generator))

    def members(self) -> np.ndarray:
        return self.lattice.upset(self.generator)

    def member_set(self) -> frozenset[int]:
        return frozenset(int(x) for x in self.members())

    def __contains__(self, a: int) -> bool:
        return bool(self.lattice.leq[self.generator, a])

    def issubset(self, other: "DualIdeal") -> bool:
        # H_a <= H_b as sets iff b <= a
        return bool(self.lattice.leq[other.generator, self.generator])

    def __repr__(self) -> str:
        return f"H({self.lattice.names[self.generator]})"


class Quasipoint(DualIdeal):
    """A maximal dual ideal; in a finite lattice, the filter of an atom."""

    def __post_init__(self):
        super().__post_init__()
        if not self.lattice.is_atom(self.generator):
            raise LatticeError(
                f"{self.lattice.names[self.generator]!r} is not an atom; "
                "its filter is not maximal"
            )


def principal_filter(L: FiniteOML, a: int) -> DualIdeal:
    """H_a = {b : b >= a}; rejects a = bottom."""
    return DualIdeal(L, L._check(a))


def is_dual_ideal(L: FiniteOML, subset) -> bool:
    """Check the three filter clauses directly on an element subset."""
    S = {L._check(a) for a in subset}
    if not S or L.bottom in S:
        return False
    for a in S:
        for b in S:
            if L.meet_table[a, b] not in S:
                return False
        if any(int(b) not in S for b in L.upset(a)):
            return False
    return True


def brute_force_dual_ideals(L: FiniteOML) -> list[frozenset[int]]:
    """Oracle: scan all subsets of the nonzero elements (small lattices only)."""
    nz = [int(a) for a in L.nonzero()]
    if L.n > BRUTE_FORCE_LIMIT:
        raise LatticeError(f"brute force limited to {BRUTE_FORCE_LIMIT} elements")
    found = []
    for r in range(1, len(nz) + 1):
        for combo in combinations(nz, r):
            if is_dual_ideal(L, combo):
                found.append(frozenset(combo))
    return found


def enumerate_dual_ideals(L: FiniteOML) -> list[DualIdeal]:
    """All dual ideals, canonically ordered by generator index.

    For lattices of at most 12 elements the principal enumeration is
    cross-checked against the brute-force subset scan.
    """
    ideals = [DualIdeal(L, int(a)) for a in L.nonzero()]
    if L.n <= BRUTE_FORCE_LIMIT:
        oracle = set(brute_force_dual_ideals(L))
        ours = {i.member_set() for i in ideals}
        if oracle != ours:
            raise LatticeError("principal enumeration disagrees with subset scan")
    return ideals


def quasipoints(L: FiniteOML) -> list[Quasipoint]:
    """Maximal dual ideals = principal filters of atoms, cross-checked by a
    maximality scan when the brute-force oracle is affordable."""
    points = [Quasipoint(L, a) for a in L.atoms()]
    if L.n <= BRUTE_FORCE_LIMIT:
        all_ideals = brute_force_dual_ideals(L)
        maximal = {
            s for s in all_ideals
            if not any(s < t for t in all_ideals)
        }
        if maximal != {p.member_set() for p in points}:
            raise LatticeError("atom filters disagree with the maximality scan")
    return points


def quasipoints_containing(L: FiniteOML, a: int) -> list[Quasipoint]:
    """Basis set of the Stone topology: quasipoints whose filter contains a."""
    a = L._check(a)
    return [Quasipoint(L, t) for t in L.atoms() if L.leq[t, a]]


def ideals_containing(L: FiniteOML, a: int) -> list[DualIdeal]:
    """Basis set on the full dual-ideal space: {J : a in J}."""
    a = L._check(a)
    if a == L.bottom:
        return []
    return [DualIdeal(L, int(p)) for p in L.nonzero() if L.leq[p, a]]


# ---------------------------------------------------------------------------
# structural reports


@dataclass
class BasisReport:
    """Exhaustive check of the four basis-set identities."""

    passed: bool
    failures: list[tuple[str, int, int]] = field(default_factory=list)
    strict_union_pairs: list[tuple[int, int]] = field(default_factory=list)


def verify_basis_identities(L: FiniteOML) -> BasisReport:
    """Check, over all element pairs: monotonicity of a -> D_a, the meet
    intersection law, the join inclusion (recording where it is strict), and
    the bottom/top degeneracies."""
    rep = BasisReport(passed=True)

    def dset(a: int) -> frozenset[int]:
        if a == L.bottom:
            return frozenset()
        return frozenset(int(p) for p in L.nonzero() if L.leq[p, a])

    cache = {a: dset(a) for a in range(L.n)}
    if cache[L.bottom] != frozenset():
        rep.failures.append(("bottom-empty", L.bottom, L.bottom))
    if cache[L.top] != frozenset(int(p) for p in L.nonzero()):
        rep.failures.append(("top-full", L.top, L.top))
    for a in range(L.n):
        for b in range(L.n):
            if L.leq[a, b] and not cache[a] <= cache[b]:
                rep.failures.append(("monotone", a, b))
            if cache[L.meet_table[a, b]] != cache[a] & cache[b]:
                rep.failures.append(("meet-intersection", a, b))
            union = cache[a] | cache[b]
            joined = cache[L.join_table[a, b]]
            if not union <= joined:
                rep.failures.append(("join-inclusion", a, b))
            elif union < joined:
                rep.strict_union_pairs.append((a, b))
    rep.passed = not rep.failures
    return rep


@dataclass
class FilterIntersectionReport:
    """Per-element verdict that H_P equals the intersection of all
    quasipoints containing P."""

    passed: bool
    mismatches: list[int] = field(default_factory=list)


def verify_principal_intersection(L: FiniteOML) -> FilterIntersectionReport:
    points = quasipoints(L)
    rep = FilterIntersectionReport(passed=True)
    for p in L.nonzero():
        through = [q.member_set() for q in points if int(p) in q]
        inter = frozenset.intersection(*through) if through else frozenset()
        if inter != principal_filter(L, int(p)).member_set():
            rep.mismatches.append(int(p))
    rep.passed = not rep.mismatches
    return rep


# ---------------------------------------------------------------------------
# topology on the space of dual ideals


def ideal_closure(L: FiniteOML, ideals: list[DualIdeal]) -> list[DualIdeal]:
    """Topological closure of a set of dual ideals under the basis {D_a}.

    H_p lies in the closure iff every basis neighbourhood D_a of H_p meets
    the set, i.e. iff every a >= p dominates some generator in the set.
    """
    if not ideals:
        return []
    gens = sorted({i.generator for i in ideals})
    covered = np.logical_or.reduce(L.leq[gens], axis=0)  # covered[a]: some q <= a
    out = []
    for p in L.nonzero():
        if covered[L.upset(int(p))].all():
            out.append(DualIdeal(L, int(p)))
    return out


def basis_closure(L: FiniteOML, p: int) -> list[DualIdeal]:
    """Fast path for the closure of a basis set D_p: J is in the closure iff
    every member of J meets p."""
    p = L._check(p)
    if p == L.bottom:
        return []
    out = []
    for g in L.nonzero():
        ups = L.upset(int(g))
        if (L.meet_table[p, ups] != L.bottom).all():
            out.append(DualIdeal(L, int(g)))
    return out


def stone_density(L: FiniteOML) -> bool:
    """Every nonempty basis set D_a contains a quasipoint (atomicity)."""
    atoms = list(L.atoms())
    for a in L.nonzero():
        if not any(L.leq[t, a] for t in atoms):
            return False
    return True


def complement_covers(L: FiniteOML, a: int) -> bool:
    """Whether Q_a and Q_{a'} together exhaust the Stone spectrum."""
    a = L._check(a)
    ca = int(L.ortho[a])
    return all(L.leq[t, a] or L.leq[t, ca] for t in L.atoms())
