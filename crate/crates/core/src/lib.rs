//! Exact-integer evaluation of the normalized Casson invariant on words in
//! the Torelli group, through Morita's composition formula, together with
//! certification of its quadratic growth in the word length.
//!
//! Torelli elements are words over a [`GeneratorTable`]: each generator
//! carries a lifted Johnson image in ∧³H and its λ-value. Everything else is
//! computed from those.

pub mod algebra;
pub mod cli;
pub mod error;
pub mod growth;
pub mod morita;
pub mod symplectic;
pub mod words;

pub use algebra::{wedge3, BasisTriple, Genus, HomologyVector, TriVector};
pub use error::{Error, Result};
pub use growth::{
    certify_bound, compute_constants, nu_family, sample_growth, BoundConstants, GrowthRecord, Ratio,
};
pub use morita::{
    accumulate_fast, accumulate_naive, compose_lambda, delta_f, extract_x_coeffs, extract_y_coeffs,
    splitting_invariance_check, DeltaInputs, Splitting,
};
pub use symplectic::{induced_map, is_symplectic, preserves_splitting, IntMatrix};
pub use words::{bp_tau, tau_of_word, word_norm, Generator, GeneratorTable, Letter, Word};
