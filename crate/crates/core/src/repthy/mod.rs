//! `osp(m|2n)`-module structure of the harmonic spaces: invariance,
//! generated submodules, commutants and Casimir eigenvalues.

mod casimir;
mod commutant;
mod invariance;
mod module;
mod structure;

pub use casimir::{
    branching_dims, casimir_scalar, casimir_structure, fermionic_harmonic_dim, BranchingCell,
    BranchingTable, CasimirStructure,
};
pub use commutant::{
    commutant, commutant_idempotent_certificate, CommutantCertificate, IdempotentVerdict,
    NilpotentData,
};
pub use invariance::{
    check_invariance, check_invariance_expr, invariance_witness, InvariantOperator,
};
pub use module::{
    closure_within, generator_matrices, is_submodule, lie_generator_indices, module_closure,
    random_vector, restrict, submodule_lattice_probe, LatticeProbe, Probe, ProbeSource,
    DEFAULT_SEED,
};
pub use structure::{
    structure_report, CompositionDims, LatticeSummary, NamedCheck, SpaceDims, StructureReport,
    Verdict,
};
