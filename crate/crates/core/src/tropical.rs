//! Tropical polynomials from leading terms of Puiseux coefficients, their
//! dual subdivisions and truncations.
//!
//! A term `c t^v x^ω` with `c t^v` the leading part of its coefficient
//! contributes the lift `ℓ(ω) = v`. The tropical polynomial is
//! `x ↦ max_ω (x·ω - ℓ(ω))` and its dual subdivision is the lower hull of
//! the lifted exponents.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::exact_math::{solve_rational, sub, AffineLatticeFrame, Rat};
use crate::polytope::{is_primitive_triangulation, regular_subdivision, LatticePolytope, PolytopeError, RegularSubdivision};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TropicalError {
    #[error("polynomial has no terms")]
    NoTerms,
    #[error("exponent {0:?} appears more than once")]
    DuplicateExponent(Vec<BigInt>),
    #[error("exponent of length {found} in ambient dimension {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("the selected terms do not form a face of the Newton polytope")]
    NotAFace,
    #[error("cell of dimension {dim} is not full-dimensional in dimension {ambient}")]
    NotMaximal { dim: usize, ambient: usize },
    #[error("term {0} has no sign")]
    MissingSign(usize),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_int(s: i64) -> Option<Sign> {
        match s {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn to_int(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// Leading term of a real Puiseux series: its order and the sign of its
/// leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PuiseuxLeadingTerm {
    pub valuation: Rat,
    pub sign: Sign,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub exponent: Vec<BigInt>,
    pub lift: Rat,
    pub sign: Option<Sign>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropicalPolynomial {
    ambient_dim: usize,
    terms: Vec<Term>,
}

impl TropicalPolynomial {
    pub fn new(ambient_dim: usize, terms: Vec<Term>) -> Result<Self, TropicalError> {
        if terms.is_empty() {
            return Err(TropicalError::NoTerms);
        }
        let mut seen = BTreeSet::new();
        for t in &terms {
            if t.exponent.len() != ambient_dim {
                return Err(TropicalError::DimensionMismatch { expected: ambient_dim, found: t.exponent.len() });
            }
            if !seen.insert(t.exponent.clone()) {
                return Err(TropicalError::DuplicateExponent(t.exponent.clone()));
            }
        }
        Ok(TropicalPolynomial { ambient_dim, terms })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn exponents(&self) -> Vec<Vec<BigInt>> {
        self.terms.iter().map(|t| t.exponent.clone()).collect()
    }

    pub fn lifts(&self) -> Vec<Rat> {
        self.terms.iter().map(|t| t.lift.clone()).collect()
    }

    /// Signs of all terms, or the index of the first unsigned term.
    pub fn signs(&self) -> Result<Vec<Sign>, TropicalError> {
        self.terms
            .iter()
            .enumerate()
            .map(|(i, t)| t.sign.ok_or(TropicalError::MissingSign(i)))
            .collect()
    }

    /// Newton polytope as a configuration whose point indices are term
    /// indices.
    pub fn newton_polytope(&self) -> LatticePolytope {
        LatticePolytope::from_points(&self.exponents()).expect("exponents are distinct and nonempty")
    }

    /// Value `max_ω (x·ω - ℓ(ω))` at a rational point.
    pub fn eval(&self, x: &[Rat]) -> Rat {
        self.terms
            .iter()
            .map(|t| {
                let s: Rat = x.iter().zip(&t.exponent).map(|(a, b)| a * Rat::from_integer(b.clone())).sum();
                s - &t.lift
            })
            .max()
            .expect("nonempty")
    }
}

/// Reads off lifts and signs from leading terms.
pub fn tropicalize(
    ambient_dim: usize,
    terms: &[(Vec<BigInt>, PuiseuxLeadingTerm)],
) -> Result<TropicalPolynomial, TropicalError> {
    TropicalPolynomial::new(
        ambient_dim,
        terms
            .iter()
            .map(|(e, lt)| Term { exponent: e.clone(), lift: lt.valuation.clone(), sign: Some(lt.sign) })
            .collect(),
    )
}

/// A cell of the dual subdivision together with the dimension of the dual
/// cell of the hypersurface (or of its complement when `dim σ = 0`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualCell {
    pub points: Vec<usize>,
    pub dim: usize,
    pub dual_dim: usize,
    pub unbounded: bool,
}

#[derive(Clone, Debug)]
pub struct TropicalHypersurfaceData {
    pub polynomial: TropicalPolynomial,
    pub dual: RegularSubdivision,
    pub cells: Vec<DualCell>,
}

impl TropicalHypersurfaceData {
    /// Cells of positive dimension, i.e. those dual to cells of the
    /// hypersurface itself.
    pub fn hypersurface_cells(&self) -> impl Iterator<Item = &DualCell> {
        self.cells.iter().filter(|c| c.dim >= 1)
    }
}

pub fn dual_subdivision(f: &TropicalPolynomial) -> Result<TropicalHypersurfaceData, TropicalError> {
    let dual = regular_subdivision(&f.exponents(), &f.lifts())?;
    let n = f.ambient_dim();
    let full = dual.dim() == n;
    let cells = dual
        .faces()
        .iter()
        .map(|face| DualCell {
            points: face.points.clone(),
            dim: face.dim,
            dual_dim: n - face.dim,
            unbounded: !full || dual.in_boundary(&face.points),
        })
        .collect();
    Ok(TropicalHypersurfaceData { polynomial: f.clone(), dual, cells })
}

/// Keeps the terms on a face of the Newton polytope, with exponents written
/// in the lattice of the face (origin at the first term of the face).
pub fn truncation(f: &TropicalPolynomial, face: &[usize]) -> Result<TropicalPolynomial, TropicalError> {
    let mut face = face.to_vec();
    face.sort_unstable();
    face.dedup();
    let newton = f.newton_polytope();
    if face.is_empty() || newton.carrier(&face) != face {
        return Err(TropicalError::NotAFace);
    }
    let exps: Vec<Vec<BigInt>> = face.iter().map(|&i| f.terms[i].exponent.clone()).collect();
    let frame = AffineLatticeFrame::of_points(&exps);
    let terms = face
        .iter()
        .map(|&i| Term {
            exponent: frame.coords(&f.terms[i].exponent).expect("point of its own frame"),
            lift: f.terms[i].lift.clone(),
            sign: f.terms[i].sign,
        })
        .collect();
    TropicalPolynomial::new(frame.dim(), terms)
}

/// The dual subdivision is a primitive triangulation.
pub fn is_nonsingular(f: &TropicalPolynomial) -> Result<bool, TropicalError> {
    Ok(is_primitive_triangulation(&dual_subdivision(f)?.dual))
}

/// Same condition as [`is_nonsingular`].
pub fn is_nondegenerate(f: &TropicalPolynomial) -> Result<bool, TropicalError> {
    is_nonsingular(f)
}

/// The point dual to a full-dimensional cell: where all terms of the cell
/// attain the maximum together.
pub fn vertex_coordinates(data: &TropicalHypersurfaceData, cell: &[usize]) -> Result<Vec<Rat>, TropicalError> {
    let f = &data.polynomial;
    let n = f.ambient_dim();
    let dim = data.dual.cell_dim(cell);
    if dim != n {
        return Err(TropicalError::NotMaximal { dim, ambient: n });
    }
    let t0 = &f.terms[cell[0]];
    let rows: Vec<Vec<Rat>> = cell[1..]
        .iter()
        .map(|&j| sub(&f.terms[j].exponent, &t0.exponent).into_iter().map(Rat::from_integer).collect())
        .collect();
    let rhs: Vec<Rat> = cell[1..].iter().map(|&j| &f.terms[j].lift - &t0.lift).collect();
    Ok(solve_rational(&rows, &rhs).expect("full-dimensional cell has a dual vertex"))
}
