//! Closed formulas in the Ehrhart coefficients: mixed signature and Euler
//! characteristic of toric hypersurfaces and complete intersections, interior
//! simplex counts, and the identities relating the coefficient families.

mod coefficients;
mod signature;
mod theorem;

pub use coefficients::{
    c_coefficient, coefficient_table, identity_suite, s_coefficient, stirling2, CoefficientTable, IdentityReport,
};
pub use signature::{
    euler_formula_hypersurface, nb_k_formula, phi_polynomial, sigma_compactified, sigma_complete_intersection,
    sigma_complete_intersection_terms, sigma_hypersurface, PhiPolynomial,
};
pub use theorem::{verify_main_theorem, HypersurfaceTables, MainTheoremReport};

use thiserror::Error;

use crate::cayley::CayleyError;
use crate::patchwork::PatchworkError;
use crate::polytope::PolytopeError;
use crate::tropical::TropicalError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvariantError {
    #[error("{quantity} evaluates to the non-integer {value}")]
    NonInteger { quantity: &'static str, value: String },
    #[error("interior simplex count nb_{k} is negative: {value}")]
    NegativeCount { k: usize, value: String },
    #[error("numerator of φ is not divisible by u (constant term {0})")]
    Remainder(String),
    #[error("Minkowski sum has dimension {dim} in ambient dimension {ambient}")]
    NotFullDimensional { dim: usize, ambient: usize },
    #[error("no polytopes given")]
    Empty,
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error(transparent)]
    Cayley(#[from] CayleyError),
    #[error(transparent)]
    Patchwork(#[from] PatchworkError),
    #[error(transparent)]
    Tropical(#[from] TropicalError),
}
