"""Finite orthomodular lattices, their Stone spectra, bounded spectral
families and observable functions, with a numerical Hermitian-matrix layer
and the Gelfand transform for diagonal algebras."""

from .errors import LatticeError, NotObservableError, SchemaError
from .lattice import (
    FiniteOML,
    StructureReport,
    generated_sublattice,
    inspect_order,
    principal_ideal,
    verify_structure,
)
from .corpus import benzene, boolean_lattice, chain2, corpus, mo
from .stone import (
    DualIdeal,
    Quasipoint,
    enumerate_dual_ideals,
    ideals_containing,
    principal_filter,
    quasipoints,
    quasipoints_containing,
    stone_density,
)
from .spectral import (
    ObservableTable,
    PreSpectralFamily,
    SpectralFamily,
    make_pre_spectral_family,
    make_spectral_family,
    mirrored_fn,
    negate,
    observable_fn,
    restrict,
    spectralize,
    translate,
)
from .recon import (
    f_from_r,
    is_abstract_observable,
    is_completely_increasing,
    observable_from_quasipoint_data,
    r_from_f,
    reconstruct,
)
from .matrix import (
    EigenDecomposition,
    ProjectorFamily,
    eig,
    expectation,
    mirrored_ray,
    ray_obs,
    reconstruct_from_rays,
    spectral_family_of,
    spectrum,
    step_approx,
)
from .gelfand import DiagonalAlgebra, gelfand_transform, orthogonal_representation

__version__ = "0.1.0"
