"""Observable functions as data: the increasing-function correspondence and
the reconstruction of a spectral family from its dual-ideal function.

Equality of tables is exact throughout: reconstruction only moves float
values between containers, never performs arithmetic on them.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .errors import LatticeError, NotObservableError
from .lattice import FiniteOML
from .spectral import (
    ObservableTable,
    SpectralFamily,
    make_spectral_family,
    mirrored_fn,
    observable_fn,
)


def is_completely_increasing(
    L: FiniteOML, r: ObservableTable
) -> tuple[bool, tuple[int, int] | None]:
    """Pairwise max law r(a v b) == max(r(a), r(b)) over all nonzero pairs.

    For a finite lattice the pairwise law is equivalent to the law for
    arbitrary families (by induction on the family); the brute-force
    equivalence is exercised separately in the suites.
    """
    nz = [int(p) for p in L.nonzero()]
    for a in nz:
        for b in nz:
            if b < a:
                continue
            j = L.join_table[a, b]
            if float(r.values[j]) != max(float(r.values[a]), float(r.values[b])):
                return False, (a, b)
    return True, None


def family_law_holds(L: FiniteOML, r: ObservableTable) -> bool:
    """Brute force: r of a join equals the max over *every* nonzero subset.

    Exponential; intended for lattices of at most a dozen elements as the
    independent oracle for :func:`is_completely_increasing`.
    """
    nz = [int(p) for p in L.nonzero()]
    for size in range(1, len(nz) + 1):
        for subset in itertools.combinations(nz, size):
            j = L.big_join(subset)
            if float(r.values[j]) != max(float(r.values[p]) for p in subset):
                return False
    return True


def f_from_r(L: FiniteOML, r: ObservableTable) -> ObservableTable:
    """Extend an increasing set function to ideals by minimizing over members.

    Computed literally as the min over each principal filter; the result
    agrees with r on generators, which is asserted.
    """
    ok, witness = is_completely_increasing(L, r)
    if not ok:
        raise NotObservableError(
            f"not completely increasing at pair {witness}", witness
        )
    vals = np.full(L.n, np.nan)
    for p in L.nonzero():
        members = L.upset(int(p))
        vals[p] = np.min(r.values[members])
    out = ObservableTable(L, vals)
    nz = L.nonzero()
    if not (out.values[nz] == r.values[nz]).all():  # pragma: no cover
        raise LatticeError("min over a principal filter must reproduce r")
    return out


def r_from_f(f: ObservableTable) -> ObservableTable:
    """Restrict a dual-ideal function to principal filters (a value copy)."""
    return ObservableTable(f.lattice, f.values.copy())


def is_abstract_observable(
    L: FiniteOML, f: ObservableTable
) -> tuple[bool, tuple | None]:
    """Both axioms: the min formula over members and the intersection law.

    The intersection law reduces to the pairwise max law through the
    principal identity (an intersection of filters is the filter of the
    join).
    """
    nz = [int(p) for p in L.nonzero()]
    for g in nz:
        members = L.upset(g)
        if float(f.values[g]) != float(np.min(f.values[members])):
            return False, ("min-formula", g)
    ok, witness = is_completely_increasing(L, f)
    if not ok:
        return False, ("intersection", *witness)
    return True, None


def reconstruct(L: FiniteOML, f: ObservableTable) -> SpectralFamily:
    """Rebuild the unique spectral family whose observable function is f.

    For each attained value the minimal ideal is computed literally as the
    intersection of all ideals at that value; its infimum is the family
    value there.  The infimum is cross-checked against the join of the
    level set, and the extension rule for thresholds outside the image
    (hold the previous value, bottom before the first) is asserted to agree
    with the assembled step function.
    """
    ok, witness = is_abstract_observable(L, f)
    if not ok:
        raise NotObservableError(f"table is not an observable function: {witness}", witness)
    nz = [int(p) for p in L.nonzero()]
    levels = np.unique(f.values[nz])
    jumps: list[tuple[float, int]] = []
    for lam in levels:
        gens = [p for p in nz if f.values[p] == lam]
        members = np.logical_and.reduce(L.leq[gens], axis=0)
        low = L.big_meet(np.flatnonzero(members))
        if not (members == L.leq[low]).all():  # pragma: no cover
            raise LatticeError("level ideal is not principal")
        alt = L.big_join(gens)
        if alt != low:  # pragma: no cover
            raise LatticeError("level join disagrees with the ideal infimum")
        jumps.append((float(lam), low))
    E = make_spectral_family(L, jumps)
    # extension rule vs. step semantics on a probe grid
    probes = [float(levels[0]) - 1.0, float(levels[-1]) + 1.0]
    probes += [float(x) for x in levels]
    probes += [float((a + b) / 2) for a, b in itertools.pairwise(levels)]
    for lam in probes:
        below = levels[levels < lam]
        if float(lam) in (float(x) for x in levels):
            continue
        held = (
            L.bottom
            if below.size == 0
            else E.value_at(float(below.max()))
        )
        if E.value_at(lam) != held:  # pragma: no cover
            raise LatticeError("extension rule disagrees with step semantics")
    return E


@dataclass
class StepReport:
    """Per-stage verdicts for the reconstruction pipeline."""

    increasing: bool
    monotone_continuous: bool
    image_finite: bool
    family_valid: bool
    no_interior_image: bool
    passed: bool = False

    def finish(self) -> "StepReport":
        self.passed = (
            self.increasing
            and self.monotone_continuous
            and self.image_finite
            and self.family_valid
            and self.no_interior_image
        )
        return self


def verify_reconstruction_steps(L: FiniteOML, f: ObservableTable) -> StepReport:
    """Check the intermediate facts the reconstruction relies on."""
    E = reconstruct(L, f)
    vals = E.values
    increasing = all(
        L.leq[a, b] and a != b for a, b in itertools.pairwise(vals.tolist())
    )
    # monotone continuity: along every descending generator chain the union
    # of the filters is the last filter, so f of it is the limit
    monotone = True
    nz = [int(p) for p in L.nonzero()]
    for p in nz:
        for q in nz:
            if p != q and L.leq[q, p]:  # H_p subset of H_q
                if float(f.values[q]) != min(float(f.values[p]), float(f.values[q])):
                    monotone = False
    image_finite = bool(np.isfinite(np.unique(f.values[nz])).all())
    try:
        make_spectral_family(L, E.jumps())
        family_valid = True
    except LatticeError:  # pragma: no cover
        family_valid = False
    no_interior = True
    img = set(float(x) for x in np.unique(f.values[nz]))
    for (a, _), (b, _) in itertools.pairwise(E.jumps()):
        if any(a < x < b for x in img):  # pragma: no cover
            no_interior = False
    return StepReport(
        increasing, monotone, image_finite, family_valid, no_interior
    ).finish()


def observable_from_quasipoint_data(
    L: FiniteOML, atom_values: Mapping[int, float]
) -> tuple[SpectralFamily | None, tuple | None]:
    """Try to realize a function on the Stone spectrum by a spectral family.

    Extends the data to a set function by taking sups over the quasipoints
    inside each basis set; if the extension satisfies the max law and
    restricts back to the data, the reconstructed family is returned,
    otherwise (None, witness).
    """
    atoms = list(L.atoms())
    if sorted(atom_values) != sorted(atoms):
        raise LatticeError("need exactly one value per atom")
    vals = np.full(L.n, np.nan)
    for p in L.nonzero():
        under = [t for t in atoms if L.leq[t, p]]
        vals[p] = max(float(atom_values[t]) for t in under)
    r = ObservableTable(L, vals)
    ok, witness = is_completely_increasing(L, r)
    if not ok:
        return None, witness
    f = f_from_r(L, r)
    for t in atoms:
        if float(f.values[t]) != float(atom_values[t]):  # pragma: no cover
            return None, ("restriction-mismatch", t)
    return reconstruct(L, f), None


@dataclass
class SublevelReport:
    """Per-level verdict that the strict sublevel sets are lattice ideals."""

    passed: bool
    proper_levels: list[float] = field(default_factory=list)
    improper_levels: list[float] = field(default_factory=list)
    failures: list[tuple[float, str, int, int]] = field(default_factory=list)


def verify_sublevel_ideals(L: FiniteOML, r: ObservableTable) -> SublevelReport:
    """r is completely increasing iff every proper sublevel set (plus bottom)
    is down-closed and join-closed.

    Levels at or above r(top) give the whole lattice and are recorded as the
    improper case; strong closedness is vacuous on a finite lattice.
    """
    nz = [int(p) for p in L.nonzero()]
    rep = SublevelReport(passed=True)
    rtop = float(r.values[L.top])
    for lam in np.unique(r.values[nz]):
        lam = float(lam)
        if lam >= rtop:
            rep.improper_levels.append(lam)
            continue
        rep.proper_levels.append(lam)
        members = {L.bottom} | {p for p in nz if float(r.values[p]) <= lam}
        for p in members:
            for q in np.flatnonzero(L.leq[:, p]):
                if int(q) not in members:
                    rep.failures.append((lam, "down-closed", p, int(q)))
        for p in members:
            for q in members:
                if L.join_table[p, q] not in members:
                    rep.failures.append((lam, "join-closed", p, q))
    rep.passed = not rep.failures
    return rep


@dataclass
class MirrorVerdict:
    symmetric: bool
    witness_family: SpectralFamily | None = None
    witness_detail: tuple | None = None


def mirror_symmetry_test(L: FiniteOML, distributive: bool) -> MirrorVerdict:
    """On a distributive lattice the mirrored table equals the observable
    table on every quasipoint; otherwise search the two-level families for
    one whose mirrored restriction is realized by no family at all."""
    if distributive:
        for v in L.nonzero():
            v = int(v)
            if v == L.top:
                continue
            E = make_spectral_family(L, [(0.0, v), (1.0, L.top)])
            f, g = observable_fn(E), mirrored_fn(E)
            for t in L.atoms():
                if float(f.values[t]) != float(g.values[t]):
                    return MirrorVerdict(False, E, ("quasipoint-mismatch", t))
        return MirrorVerdict(True)
    for v in L.nonzero():
        v = int(v)
        if v == L.top:
            continue
        E = make_spectral_family(L, [(0.0, v), (1.0, L.top)])
        g = mirrored_fn(E)
        data = {t: float(g.values[t]) for t in L.atoms()}
        family, witness = observable_from_quasipoint_data(L, data)
        if family is None:
            return MirrorVerdict(False, E, witness)
    return MirrorVerdict(True)


def random_increasing_table(
    L: FiniteOML, rng: np.random.Generator
) -> ObservableTable:
    """A random completely increasing function, generated through the chain
    representation (every completely increasing function arises this way)."""
    from .spectral import random_spectral_family

    return observable_fn(random_spectral_family(L, rng))
