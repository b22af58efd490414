//! Exact integer, rational and F₂ linear algebra.
//!
//! Everything geometric in the crate bottoms out here. There is no floating
//! point in this module or anywhere it is used for a result.

mod f2;
mod lattice;
mod matrix;

pub use f2::{f2_solution_count, F2AffineSystem};
pub use lattice::{
    express_in_basis, hermite_rows, kernel_basis, lattice_basis, lattice_index, orthogonal_lattice,
    saturation, AffineLatticeFrame, LatticeIndex,
};
pub use matrix::{determinant, rank, solve_rational, IntMatrix};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub type Int = BigInt;
pub type Rat = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MathError {
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("vector length {found} does not match dimension {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("generator {0:?} does not lie in the ambient lattice")]
    NotInLattice(Vec<BigInt>),
    #[error("ambient basis vectors are linearly dependent")]
    DependentBasis,
}

/// Shorthand for building an integer vector from machine integers.
pub fn ivec(xs: &[i64]) -> Vec<BigInt> {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

pub fn rat_int(p: impl Into<BigInt>) -> Rat {
    Rat::from_integer(p.into())
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn sub(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scale(a: &[BigInt], s: &BigInt) -> Vec<BigInt> {
    a.iter().map(|x| x * s).collect()
}

/// Divides out the gcd of the entries. The zero vector is returned unchanged.
pub fn primitive(v: &[BigInt]) -> Vec<BigInt> {
    let g = v
        .iter()
        .fold(BigInt::zero(), |g, x| num_integer::Integer::gcd(&g, x));
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

/// Clears denominators of a rational vector, returning the primitive integer
/// vector with the same direction (positive multiple).
pub fn clear_denominators(v: &[Rat]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |l, x| {
        num_integer::Integer::lcm(&l, x.denom())
    });
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    primitive(&ints)
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// `base^exp` for a possibly negative base, with `0^0 = 1`.
pub fn ipow(base: i64, exp: u32) -> BigInt {
    num_traits::pow(BigInt::from(base), exp as usize)
}

pub fn abs(x: &BigInt) -> BigInt {
    x.abs()
}

/// Converts a rational that must be integral. `None` otherwise.
pub fn to_integer(x: &Rat) -> Option<BigInt> {
    if x.is_integer() {
        Some(x.to_integer())
    } else {
        None
    }
}
