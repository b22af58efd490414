//! Lattice polytopes and point configurations: hulls, faces, volumes, mixed
//! volumes, Ehrhart data and regular subdivisions.

mod ehrhart;
mod hull;
mod subdivision;
mod volume;

pub use ehrhart::{
    cone_series_check, count_dilate, count_interior_dilate, ehrhart, lattice_points,
    psi_coefficients, EhrhartPolynomial,
};
pub use hull::{affine_rank, convex_hull, minkowski_sum, Face, Facet, LatticePolytope};
pub use subdivision::{is_primitive_triangulation, regular_subdivision, RegularSubdivision};
pub use volume::{mixed_volume, normalized_volume};

use thiserror::Error;

use crate::exact_math::MathError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolytopeError {
    #[error("empty point set")]
    Empty,
    #[error("point of length {found} in ambient dimension {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("polytope has dimension {dim} in ambient dimension {ambient}; full dimension required")]
    NotFullDimensional { dim: usize, ambient: usize },
    #[error("multiplicities sum to {sum} but the reference lattice has rank {rank}")]
    MultiplicityMismatch { sum: usize, rank: usize },
    #[error("point {0:?} occurs twice")]
    DuplicatePoint(Vec<num_bigint::BigInt>),
    #[error("{0} lifts given for {1} points")]
    LiftCount(usize, usize),
    #[error(transparent)]
    Math(#[from] MathError),
}
