//! Decision procedures for the Bieri-Neumann-Strebel-Renz invariants of
//! right-angled Artin groups `A_Γ` and Bestvina-Brady groups `BB_Γ`.
//!
//! Everything is driven by the flag complex of the defining graph:
//!
//! * [`graph`] and [`complex`] hold graphs, flag complexes, links and full
//!   subcomplexes;
//! * [`homology`] computes reduced integral homology through Smith normal
//!   form, and [`connectivity`] semi-decides simple connectivity by Tietze
//!   simplification of an edge-path presentation;
//! * [`raag`] decides `[χ] ∈ Σⁿ(A_Γ)` with the living-link criterion;
//! * [`bb`] sweeps the extensions of a character of `BB_Γ` and describes the
//!   complement of `Σ¹(BB_Γ)` as a union of rational subspheres.
//!
//! The homological and homotopical variants are strategies behind the
//! [`variant::LevelCondition`] trait and are looked up by name in a
//! [`variant::VariantRegistry`].

pub mod bb;
pub mod character;
pub mod complex;
pub mod connectivity;
pub mod corpus;
mod error;
pub mod graph;
pub mod homology;
pub mod raag;
pub mod sample;
pub mod variant;

pub use error::{Error, GraphError, Result};

/// Resource limits shared by every query.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Upper bound on the number of simplices materialized by one flag complex.
    pub max_simplices: usize,
    /// Number of generator eliminations allowed when simplifying a presentation.
    pub tietze_budget: usize,
    /// Largest vertex count accepted by the minimal bad set enumeration.
    pub max_bad_set_vertices: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_simplices: 1_000_000,
            tietze_budget: 10_000,
            max_bad_set_vertices: 16,
        }
    }
}
