"""Finite bounded lattices with an orthocomplementation.

Elements are integer indices into a fixed boolean order matrix ``leq``
(``leq[i, j]`` means i <= j).  Meets and joins are precomputed into n x n
tables at construction; construction fails fast if the order is not a
partial order or some pair lacks a unique bound.  The orthocomplement is
stored as a permutation but its axioms (involution, order reversal,
complement laws, orthomodularity) are *verdicts* reported by
:func:`verify_structure`, not construction requirements -- non-orthomodular
examples such as the benzene hexagon must be representable.

A lattice is immutable after construction and safe to share between
threads; all operations are pure.  Indices are never mixed between
different lattices: every operation goes through the owning instance.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .errors import LatticeError

MAX_SUBLATTICE = 4096


def _as_bool_matrix(leq) -> np.ndarray:
    m = np.array(leq, dtype=bool)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise LatticeError(f"order matrix must be square, got shape {m.shape}")
    return m


def check_partial_order(leq: np.ndarray) -> tuple[str, tuple[int, ...]] | None:
    """Return (problem, witness) if leq is not a partial order, else None."""
    n = leq.shape[0]
    diag = np.diagonal(leq)
    if not diag.all():
        i = int(np.argmin(diag))
        return "not reflexive", (i,)
    sym = leq & leq.T & ~np.eye(n, dtype=bool)
    if sym.any():
        i, j = np.unravel_index(int(np.argmax(sym)), sym.shape)
        return "not antisymmetric", (int(i), int(j))
    closed = (leq.astype(np.int64) @ leq.astype(np.int64)) > 0
    gap = closed & ~leq
    if gap.any():
        i, j = np.unravel_index(int(np.argmax(gap)), gap.shape)
        return "not transitive", (int(i), int(j))
    return None


def _find_bounds(leq: np.ndarray) -> tuple[int, int]:
    bottoms = np.flatnonzero(leq.all(axis=1))
    tops = np.flatnonzero(leq.all(axis=0))
    if bottoms.size != 1:
        raise LatticeError(f"bottom element not unique (candidates {bottoms.tolist()})")
    if tops.size != 1:
        raise LatticeError(f"top element not unique (candidates {tops.tolist()})")
    return int(bottoms[0]), int(tops[0])


class FiniteOML:
    """A finite bounded lattice carrying an orthocomplement permutation.

    Parameters
    ----------
    names:
        One display label per element; must be unique.
    leq:
        Boolean order matrix, ``leq[i, j]`` iff element i <= element j.
        Must already be reflexively and transitively closed.
    ortho:
        Permutation array, ``ortho[a]`` is the orthocomplement a'.
    tables:
        Optional precomputed ``(meet, join)`` tables for constructions whose
        bounds are known analytically (e.g. subset lattices). They are
        trusted; pass None to have them computed and checked.
    """

    __slots__ = ("n", "names", "leq", "ortho", "bottom", "top", "meet_table",
                 "join_table", "_atoms", "_name_index")

    def __init__(
        self,
        names: Sequence[str],
        leq,
        ortho,
        *,
        tables: tuple[np.ndarray, np.ndarray] | None = None,
    ):
        leq = _as_bool_matrix(leq)
        n = leq.shape[0]
        names = [str(s) for s in names]
        if len(names) != n:
            raise LatticeError(f"{n} elements but {len(names)} names")
        if len(set(names)) != n:
            raise LatticeError("element names must be unique")
        ortho = np.asarray(ortho, dtype=np.int64)
        if ortho.shape != (n,) or sorted(ortho.tolist()) != list(range(n)):
            raise LatticeError("ortho must be a permutation of the element indices")
        problem = check_partial_order(leq)
        if problem is not None:
            what, wit = problem
            raise LatticeError(f"order is {what}, witness {wit}")
        bottom, top = _find_bounds(leq)
        if bottom == top:
            raise LatticeError("lattice needs distinct bottom and top")
        if tables is None:
            meet, join, status, a, b = _kernels.bound_tables(leq)
            if status == _kernels.STATUS_NO_MEET:
                raise LatticeError(f"pair ({names[a]}, {names[b]}) has no unique meet")
            if status == _kernels.STATUS_NO_JOIN:
                raise LatticeError(f"pair ({names[a]}, {names[b]}) has no unique join")
        else:
            meet, join = (np.asarray(t, dtype=np.int64) for t in tables)
        self.n = n
        self.names = tuple(names)
        self.leq = leq
        self.ortho = ortho
        self.bottom = bottom
        self.top = top
        self.meet_table = meet
        self.join_table = join
        self._atoms: tuple[int, ...] | None = None
        self._name_index = {s: i for i, s in enumerate(names)}
        for arr in (self.leq, self.ortho, self.meet_table, self.join_table):
            arr.setflags(write=False)

    # -- basic queries ----------------------------------------------------

    def _check(self, a: int) -> int:
        a = int(a)
        if not 0 <= a < self.n:
            raise IndexError(f"element index {a} out of range [0, {self.n})")
        return a

    def le(self, a: int, b: int) -> bool:
        return bool(self.leq[self._check(a), self._check(b)])

    def meet(self, a: int, b: int) -> int:
        return int(self.meet_table[self._check(a), self._check(b)])

    def join(self, a: int, b: int) -> int:
        return int(self.join_table[self._check(a), self._check(b)])

    def big_meet(self, elements: Iterable[int]) -> int:
        out = self.top  # empty infimum
        for a in elements:
            out = int(self.meet_table[out, self._check(a)])
        return out

    def big_join(self, elements: Iterable[int]) -> int:
        out = self.bottom  # empty supremum
        for a in elements:
            out = int(self.join_table[out, self._check(a)])
        return out

    def complement(self, a: int) -> int:
        return int(self.ortho[self._check(a)])

    def atoms(self) -> tuple[int, ...]:
        """Elements covering bottom."""
        if self._atoms is None:
            down = self.leq.sum(axis=0)
            self._atoms = tuple(
                int(a) for a in np.flatnonzero(down == 2) if a != self.bottom
            )
        return self._atoms

    def is_atom(self, a: int) -> bool:
        return a in set(self.atoms())

    def downset(self, a: int) -> np.ndarray:
        """Indices of {b : b <= a}."""
        return np.flatnonzero(self.leq[:, self._check(a)])

    def upset(self, a: int) -> np.ndarray:
        """Indices of {b : b >= a}."""
        return np.flatnonzero(self.leq[self._check(a)])

    def name(self, a: int) -> str:
        return self.names[self._check(a)]

    def index(self, name: str) -> int:
        try:
            return self._name_index[name]
        except KeyError:
            raise KeyError(f"no element named {name!r}") from None

    def nonzero(self) -> np.ndarray:
        return np.array([i for i in range(self.n) if i != self.bottom], dtype=np.int64)

    def cover_pairs(self) -> list[tuple[int, int]]:
        """Pairs (i, j) with j covering i."""
        lt = self.leq & ~np.eye(self.n, dtype=bool)
        between = (lt.astype(np.int64) @ lt.astype(np.int64)) > 0
        cov = lt & ~between
        return [(int(i), int(j)) for i, j in zip(*np.nonzero(cov))]

    def __repr__(self) -> str:
        return f"FiniteOML({self.n} elements, bottom={self.names[self.bottom]!r}, top={self.names[self.top]!r})"


# ---------------------------------------------------------------------------
# structural verification


@dataclass
class StructureReport:
    """Boolean verdicts plus a witness tuple (element indices) per failure.

    ``order_problem`` is set instead of the verdicts when the raw relation is
    not even a partial order; dependent verdicts are then None.
    """

    is_lattice: bool | None = None
    is_ortho_complemented: bool | None = None
    is_orthomodular: bool | None = None
    is_distributive: bool | None = None
    is_boolean: bool | None = None
    is_atomistic: bool | None = None
    order_problem: str | None = None
    witnesses: dict[str, tuple[int, ...]] = field(default_factory=dict)

    @property
    def is_orthomodular_lattice(self) -> bool:
        return bool(self.is_lattice and self.is_ortho_complemented and self.is_orthomodular)

    def to_dict(self) -> dict:
        return {
            "is_lattice": self.is_lattice,
            "is_ortho_complemented": self.is_ortho_complemented,
            "is_orthomodular": self.is_orthomodular,
            "is_distributive": self.is_distributive,
            "is_boolean": self.is_boolean,
            "is_atomistic": self.is_atomistic,
            "order_problem": self.order_problem,
            "witnesses": {k: list(v) for k, v in self.witnesses.items()},
        }


def _ortho_complement_verdict(L: FiniteOML) -> tuple[bool, tuple[int, ...] | None]:
    o = L.ortho
    inv = o[o] != np.arange(L.n)
    if inv.any():
        return False, (int(np.argmax(inv)),)
    rev = L.leq[np.ix_(o, o)]  # rev[a, b] = a' <= b'
    bad = L.leq & ~rev.T  # a <= b but not b' <= a'
    if bad.any():
        a, b = np.unravel_index(int(np.argmax(bad)), bad.shape)
        return False, (int(a), int(b))
    idx = np.arange(L.n)
    bad_meet = L.meet_table[idx, o] != L.bottom
    if bad_meet.any():
        return False, (int(np.argmax(bad_meet)),)
    bad_join = L.join_table[idx, o] != L.top
    if bad_join.any():
        return False, (int(np.argmax(bad_join)),)
    return True, None


def _atomistic_verdict(L: FiniteOML) -> tuple[bool, tuple[int, ...] | None]:
    atoms = list(L.atoms())
    for p in range(L.n):
        if p == L.bottom:
            continue
        below = [t for t in atoms if L.leq[t, p]]
        if L.big_join(below) != p:
            return False, (p,)
    return True, None


def verify_structure(L: FiniteOML, backend: str | None = None) -> StructureReport:
    """Run all structural checks on a constructed lattice."""
    rep = StructureReport(is_lattice=True)
    ok, wit = _ortho_complement_verdict(L)
    rep.is_ortho_complemented = ok
    if wit is not None:
        rep.witnesses["is_ortho_complemented"] = wit
    a, b = _kernels.orthomodularity_witness(
        L.leq, L.meet_table, L.join_table, L.ortho, backend
    )
    rep.is_orthomodular = a < 0
    if a >= 0:
        rep.witnesses["is_orthomodular"] = (a, b)
    a, b, c = _kernels.distributivity_witness(L.meet_table, L.join_table, backend)
    rep.is_distributive = a < 0
    if a >= 0:
        rep.witnesses["is_distributive"] = (a, b, c)
    rep.is_boolean = bool(rep.is_distributive and rep.is_ortho_complemented)
    ok, wit = _atomistic_verdict(L)
    rep.is_atomistic = ok
    if wit is not None:
        rep.witnesses["is_atomistic"] = wit
    return rep


def inspect_order(names: Sequence[str], leq, ortho) -> tuple[StructureReport, FiniteOML | None]:
    """Like :func:`verify_structure` but on raw data: malformed orders and
    missing bounds are reported in the result instead of raised."""
    try:
        L = FiniteOML(names, leq, ortho)
    except LatticeError as exc:
        rep = StructureReport(is_lattice=False, order_problem=str(exc))
        return rep, None
    return verify_structure(L), L


# ---------------------------------------------------------------------------
# sublattices


def sublattice_from_members(
    L: FiniteOML,
    members: Iterable[int],
    ortho_map: dict[int, int] | None = None,
) -> tuple[FiniteOML, np.ndarray]:
    """Build the induced lattice on a meet/join-closed member set.

    Elements are reindexed canonically by (number of members below, parent
    index) so that the same member set always yields the same lattice.
    Returns the new lattice and the embedding array (sub index -> parent
    index).
    """
    mem = sorted({L._check(m) for m in members})
    sub = L.leq[np.ix_(mem, mem)]
    downsize = sub.sum(axis=0)
    order = sorted(range(len(mem)), key=lambda k: (int(downsize[k]), mem[k]))
    embed = np.array([mem[k] for k in order], dtype=np.int64)
    back = {int(p): i for i, p in enumerate(embed)}
    sub_leq = L.leq[np.ix_(embed, embed)]
    if ortho_map is None:
        ortho_map = {int(p): int(L.ortho[p]) for p in embed}
    try:
        sub_ortho = np.array([back[ortho_map[int(p)]] for p in embed], dtype=np.int64)
    except KeyError as exc:
        raise LatticeError(f"orthocomplement leaves the member set at element {exc}") from None
    # bounds within a closed member set are the parent bounds
    sub_meet = np.empty((len(embed), len(embed)), np.int64)
    sub_join = np.empty_like(sub_meet)
    for i, p in enumerate(embed):
        sub_meet[i] = [back[int(L.meet_table[p, q])] for q in embed]
        sub_join[i] = [back[int(L.join_table[p, q])] for q in embed]
    names = [L.names[int(p)] for p in embed]
    return FiniteOML(names, sub_leq, sub_ortho, tables=(sub_meet, sub_join)), embed


def generated_sublattice(
    L: FiniteOML,
    generators: Iterable[int],
    max_size: int = MAX_SUBLATTICE,
) -> tuple[FiniteOML, np.ndarray]:
    """Smallest sub-ortholattice containing the generators.

    Closes under meet, join and orthocomplement; always contains bottom and
    top.  Aborts with :class:`LatticeError` once the closure exceeds
    ``max_size`` elements.
    """
    members = {L.bottom, L.top}
    members.update(L._check(g) for g in generators)
    while True:
        if len(members) > max_size:
            raise LatticeError(
                f"generated sublattice exceeds the {max_size}-element bound"
            )
        new = set()
        current = sorted(members)
        for a in current:
            ca = int(L.ortho[a])
            if ca not in members:
                new.add(ca)
        for i, a in enumerate(current):
            row_m = L.meet_table[a]
            row_j = L.join_table[a]
            for b in current[i + 1:]:
                m = int(row_m[b])
                if m not in members:
                    new.add(m)
                j = int(row_j[b])
                if j not in members:
                    new.add(j)
        if not new:
            break
        members |= new
        if len(members) > max_size:
            raise LatticeError(
                f"generated sublattice exceeds the {max_size}-element bound"
            )
    return sublattice_from_members(L, members)


def principal_ideal(L: FiniteOML, a: int) -> tuple[FiniteOML, np.ndarray]:
    """The lattice on {b : b <= a} with relative complement b -> a ^ b'."""
    a = L._check(a)
    if a == L.bottom:
        raise LatticeError("principal ideal of bottom is trivial")
    members = [int(b) for b in L.downset(a)]
    ortho_map = {b: int(L.meet_table[a, L.ortho[b]]) for b in members}
    vals = sorted(ortho_map.values())
    if vals != sorted(members):
        raise LatticeError(
            f"relative complement is not a permutation below {L.names[a]!r}"
        )
    return sublattice_from_members(L, members, ortho_map)
