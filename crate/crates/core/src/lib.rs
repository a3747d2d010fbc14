//! Reflection groups in the Euclidean and hyperbolic plane (and, combinatorially,
//! in dimension three): Coxeter diagrams, polytopes, chamber tilings, fundamental
//! chambers of finite-index reflection subgroups and their facet counts.

pub mod cli;
pub mod diagrams;
pub mod docs;
pub mod engine;
pub mod geometry;
pub mod harness;
pub mod render;

/// Numerical tolerances shared across the crate.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Tolerances {
    /// Incidence and side predicates.
    pub geo: f64,
    /// Matching an angle against `π/m`.
    pub ang: f64,
    /// Grid used to round representation matrices into element keys.
    pub id: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            geo: 1e-9,
            ang: 1e-7,
            id: 1e-6,
        }
    }
}
