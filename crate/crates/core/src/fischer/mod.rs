//! Harmonic subspaces and the Fischer decomposition of `𝒫_k`.

mod exceptional;
mod spaces;
mod table;

pub use exceptional::{c_constant, is_nonpositive_even, ExceptionalIndexSet};
pub use spaces::{
    commutator_lemma_witness, exceptional_indices, h0, harmonic_splitting_holds, harmonics,
    kernel_delta_r2, laplace_is_onto, r2_delta_r2_image, r2_image, r2_power_image, tilde_harmonics,
    verify_commutator_lemma, verify_harmonic_splitting, verify_splitting_lemma,
    verify_tilde_splitting, SplittingReport,
};
pub use table::{
    diagram, fischer_decompose, fischer_table, predicted_zero, summand_label, Component, Diagram,
    DiagramCell, DiagramRow, FischerTable, IndexSets, RefinedSummand, Summand, SummandKind,
    SummandSummary, TableChecks, TableSummary,
};
