"""Abelian (diagonal) algebra layer: orthogonal representations, the
transform onto functions on the Stone spectrum, and its character/identity
checks.

The algebra is always the diagonal algebra of C^n in a fixed basis; an
arbitrary maximal abelian subalgebra is reached by conjugating with a
phase-fixed eigenbasis unitary from the matrix layer.  Complex entries are
compared exactly after a single snap at ingestion.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .corpus import boolean_lattice
from .errors import LatticeError
from .lattice import FiniteOML
from .spectral import make_spectral_family, mirrored_fn, observable_fn

SNAP_TOL = 1e-12


def snap_entries(entries) -> np.ndarray:
    """Merge entries within the snap tolerance onto one representative."""
    vals = np.asarray(entries, dtype=np.complex128).reshape(-1)
    order = np.lexsort((vals.imag, vals.real))
    out = vals.copy()
    rep = None
    for idx in order:
        v = vals[idx]
        if rep is not None and abs(v - rep) <= SNAP_TOL:
            out[idx] = rep
        else:
            rep = v
    return out


@dataclass(frozen=True)
class DiagonalAlgebra:
    """Diagonal matrices in a fixed orthonormal basis of C^n.

    Its projection lattice is the Boolean lattice 2^n whose element index is
    the bitmask of basis indices; the quasipoints are the atom filters, one
    per basis vector.
    """

    n: int
    lattice: FiniteOML

    @classmethod
    def of_dimension(cls, n: int) -> "DiagonalAlgebra":
        return cls(n, boolean_lattice(n))

    def atom_of_basis_index(self, i: int) -> int:
        return 1 << i

    def check_entries(self, entries) -> np.ndarray:
        vals = np.asarray(entries, dtype=np.complex128).reshape(-1)
        if vals.shape != (self.n,):
            raise LatticeError(f"expected {self.n} diagonal entries")
        return snap_entries(vals)


@dataclass(frozen=True)
class OrthogonalRepresentation:
    """Distinct coefficients on pairwise disjoint basis-index subsets."""

    coefficients: tuple[complex, ...]
    supports: tuple[tuple[int, ...], ...]


def orthogonal_representation(
    alg: DiagonalAlgebra, entries
) -> OrthogonalRepresentation:
    """Group equal entries; zero coefficients contribute no term."""
    vals = alg.check_entries(entries)
    groups: dict[complex, list[int]] = {}
    for i, v in enumerate(vals):
        groups.setdefault(complex(v), []).append(i)
    coeffs = []
    supports = []
    for v, idxs in sorted(groups.items(), key=lambda kv: (kv[0].real, kv[0].imag)):
        if v == 0:
            continue
        coeffs.append(v)
        supports.append(tuple(idxs))
    return OrthogonalRepresentation(tuple(coeffs), tuple(supports))


def gelfand_transform(alg: DiagonalAlgebra, entries) -> np.ndarray:
    """Value of the transform at each quasipoint (one per basis atom).

    Evaluated through the characteristic-function sum of the orthogonal
    representation and asserted against the direct entry lookup.
    """
    vals = alg.check_entries(entries)
    rep = orthogonal_representation(alg, vals)
    out = np.zeros(alg.n, dtype=np.complex128)
    for b, support in zip(rep.coefficients, rep.supports):
        for i in support:
            out[i] += b
    if not (out == vals).all():  # pragma: no cover
        raise LatticeError("characteristic sum disagrees with entry lookup")
    return out


def diagonal_spectral_family(alg: DiagonalAlgebra, entries):
    """Spectral family of a real diagonal over the algebra's own lattice.

    Thresholds are the distinct (snapped) entries; each value is the bitmask
    of the basis indices at or below the threshold.
    """
    vals = alg.check_entries(entries)
    if np.abs(vals.imag).max(initial=0.0) != 0.0:
        raise LatticeError("spectral families need selfadjoint (real) entries")
    reals = vals.real
    jumps = []
    for lam in np.unique(reals):
        mask = 0
        for i in range(alg.n):
            if reals[i] <= lam:
                mask |= 1 << i
        jumps.append((float(lam), mask))
    return make_spectral_family(alg.lattice, jumps)


@dataclass
class HomomorphismReport:
    passed: bool
    pairs: int
    additive_ok: bool
    multiplicative_ok: bool
    scalar_ok: bool
    isometry_error: float


def verify_homomorphism(
    alg: DiagonalAlgebra, rng: np.random.Generator, pairs: int = 100
) -> HomomorphismReport:
    """Transform respects +, *, scalar action exactly and is isometric for
    the sup norm (within the snap tolerance)."""
    add_ok = mul_ok = sca_ok = True
    iso_err = 0.0
    for _ in range(pairs):
        a = rng.standard_normal(alg.n) + 1j * rng.standard_normal(alg.n)
        b = rng.standard_normal(alg.n) + 1j * rng.standard_normal(alg.n)
        c = complex(rng.standard_normal(), rng.standard_normal())
        fa, fb = gelfand_transform(alg, a), gelfand_transform(alg, b)
        if not (gelfand_transform(alg, a + b) == fa + fb).all():
            add_ok = False
        if not (gelfand_transform(alg, a * b) == fa * fb).all():
            mul_ok = False
        if not (gelfand_transform(alg, c * a) == c * fa).all():
            sca_ok = False
        iso_err = max(iso_err, abs(float(np.abs(fa).max()) - float(np.abs(a).max())))
    passed = add_ok and mul_ok and sca_ok and iso_err <= SNAP_TOL
    return HomomorphismReport(passed, pairs, add_ok, mul_ok, sca_ok, iso_err)


@dataclass
class CharacterReport:
    passed: bool
    checked: int
    failures: list[tuple[int, int]] = field(default_factory=list)


def verify_characters(alg: DiagonalAlgebra) -> CharacterReport:
    """Evaluation at a quasipoint is the 0/1 membership character on every
    projection."""
    rep = CharacterReport(passed=True, checked=0)
    for mask in range(1, 1 << alg.n):
        entries = np.array([1.0 if mask >> i & 1 else 0.0 for i in range(alg.n)])
        transform = gelfand_transform(alg, entries)
        for i in range(alg.n):
            rep.checked += 1
            want = 1.0 if mask >> i & 1 else 0.0
            if transform[i] != want:
                rep.failures.append((mask, i))
    rep.passed = not rep.failures
    return rep


@dataclass
class GelfandIdentityReport:
    passed: bool
    mirrored_ok: bool


def verify_gelfand_identity(alg: DiagonalAlgebra, entries) -> GelfandIdentityReport:
    """For a selfadjoint diagonal the observable function of its spectral
    family coincides with the transform on every quasipoint, exactly; the
    mirrored table agrees as well (the distributive case)."""
    E = diagonal_spectral_family(alg, entries)
    f = observable_fn(E)
    g = mirrored_fn(E)
    transform = gelfand_transform(alg, entries)
    ok = True
    mirrored_ok = True
    for i in range(alg.n):
        atom = alg.atom_of_basis_index(i)
        if float(f.values[atom]) != float(transform[i].real):
            ok = False
        if float(g.values[atom]) != float(f.values[atom]):
            mirrored_ok = False
    return GelfandIdentityReport(ok and mirrored_ok, mirrored_ok)


def diagonalize(a) -> tuple[np.ndarray, np.ndarray]:
    """Phase-fixed eigenbasis unitary and the diagonal entries it produces."""
    from .matrix import as_hermitian, _fix_phases

    A = np.asarray(a, dtype=np.complex128)
    herm = np.abs(A - A.conj().T).max(initial=0.0) <= SNAP_TOL * max(
        1.0, float(np.abs(A).max(initial=0.0))
    )
    if herm:
        w, V = np.linalg.eigh(as_hermitian(A))
        return _fix_phases(V), w.astype(np.complex128)
    # normal non-Hermitian diagonals arise from complex entries; diagonalize
    # the Hermitian parts jointly only when they commute
    h1 = (A + A.conj().T) / 2
    h2 = (A - A.conj().T) / 2j
    if np.abs(h1 @ h2 - h2 @ h1).max() > 1e-9 * max(1.0, float(np.abs(A).max())):
        raise LatticeError("matrix is not normal; no abelian algebra contains it")
    w, V = np.linalg.eigh(h1 + np.pi * h2)  # generic combination splits ties
    V = _fix_phases(V)
    d = V.conj().T @ A @ V
    if np.abs(d - np.diag(np.diagonal(d))).max() > 1e-9:
        raise LatticeError("joint diagonalization failed")
    return V, np.diagonal(d).copy()
