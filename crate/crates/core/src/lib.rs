//! Executable companions to Σ-invariants of Hecke pairs and their Schlichting
//! completions.
//!
//! The crate covers exact arithmetic in `Z[P^-1]`, windows of free simplicial
//! sets with their augmented chain complexes, the Baumslag–Solitar groups and
//! upper-triangular groups over `Z[P^-1]`, truncated Schlichting completions,
//! closed-form Σ-set classifiers for those families, and Vietoris–Rips probes.

pub mod arith;
pub mod chains;
pub mod cli;
pub mod groups;
pub mod hecke;
pub mod linalg;
pub mod sigma;
pub mod simplicial;
pub mod vietoris;
