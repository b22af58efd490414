//! Sublattices of Z^n: bases, saturation, orthogonal complements and indices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{determinant, IntMatrix, MathError};

/// Index of a sublattice. Rank deficit gives an infinite index, which is an
/// ordinary answer and not an error.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeIndex {
    Finite(BigInt),
    Infinite,
}

impl LatticeIndex {
    pub fn finite(&self) -> Option<&BigInt> {
        match self {
            LatticeIndex::Finite(v) => Some(v),
            LatticeIndex::Infinite => None,
        }
    }
}

/// Extended gcd returning `(g, x, y)` with `x*a + y*b = g >= 0`.
fn egcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// Row-style Hermite reduction: returns echelon rows generating the same
/// lattice as `gens`. Pivots are positive and entries above each pivot are
/// reduced into `[0, pivot)`.
pub fn hermite_rows(gens: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let Some(n) = gens.first().map(|g| g.len()) else {
        return Vec::new();
    };
    let mut rows: Vec<Vec<BigInt>> = gens.iter().filter(|g| g.iter().any(|x| !x.is_zero())).cloned().collect();
    let mut out: Vec<Vec<BigInt>> = Vec::new();
    for c in 0..n {
        let Some(p) = rows.iter().position(|r| !r[c].is_zero()) else {
            continue;
        };
        let mut piv = rows.swap_remove(p);
        for r in rows.iter_mut() {
            if r[c].is_zero() {
                continue;
            }
            let (g, x, y) = egcd(&piv[c], &r[c]);
            let a_g = &piv[c] / &g;
            let b_g = &r[c] / &g;
            let new_piv: Vec<BigInt> = piv.iter().zip(r.iter()).map(|(p, q)| &x * p + &y * q).collect();
            let new_r: Vec<BigInt> = piv.iter().zip(r.iter()).map(|(p, q)| &a_g * q - &b_g * p).collect();
            piv = new_piv;
            *r = new_r;
        }
        if piv[c].is_negative() {
            piv.iter_mut().for_each(|x| *x = -x.clone());
        }
        for prev in out.iter_mut() {
            let q = prev[c].div_floor(&piv[c]);
            if !q.is_zero() {
                for j in 0..n {
                    let v = &prev[j] - &q * &piv[j];
                    prev[j] = v;
                }
            }
        }
        out.push(piv);
        rows.retain(|r| r.iter().any(|x| !x.is_zero()));
        if rows.is_empty() {
            break;
        }
    }
    out
}

/// A basis of the lattice generated by `gens` (the generated group, not its
/// saturation).
pub fn lattice_basis(gens: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    hermite_rows(gens)
}

/// Basis of `{x in Z^n : r·x = 0 for every row r}` obtained by unimodular
/// column reduction. The result is saturated by construction.
pub fn kernel_basis(rows: &[Vec<BigInt>], n: usize) -> Vec<Vec<BigInt>> {
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let mut u = IntMatrix::identity(n).to_rows(); // u[j] is column j of U
    let mut p = 0;
    for i in 0..a.len() {
        if p == n {
            break;
        }
        for j in p + 1..n {
            if a[i][j].is_zero() {
                continue;
            }
            let (g, x, y) = egcd(&a[i][p], &a[i][j]);
            let a_g = &a[i][p] / &g;
            let b_g = &a[i][j] / &g;
            for row in a.iter_mut() {
                let cp = row[p].clone();
                let cj = row[j].clone();
                row[p] = &x * &cp + &y * &cj;
                row[j] = &a_g * &cj - &b_g * &cp;
            }
            let (cp, cj) = (u[p].clone(), u[j].clone());
            u[p] = cp.iter().zip(&cj).map(|(s, t)| &x * s + &y * t).collect();
            u[j] = cp.iter().zip(&cj).map(|(s, t)| &a_g * t - &b_g * s).collect();
        }
        if !a[i][p].is_zero() {
            p += 1;
        }
    }
    hermite_rows(&u[p..])
}

/// Basis of the saturated sublattice `span_Q(gens) ∩ Z^n`.
pub fn saturation(gens: &[Vec<BigInt>], n: usize) -> Vec<Vec<BigInt>> {
    let perp = kernel_basis(gens, n);
    kernel_basis(&perp, n)
}

/// Basis of `γ^⊥ = {m : m·g = 0 for all generators g}`.
pub fn orthogonal_lattice(gens: &[Vec<BigInt>], n: usize) -> Vec<Vec<BigInt>> {
    kernel_basis(gens, n)
}

/// Coordinates of `v` in the basis given by the rows of `basis`, if `v` lies in
/// the lattice the basis generates.
pub fn express_in_basis(basis: &[Vec<BigInt>], v: &[BigInt]) -> Option<Vec<BigInt>> {
    let n = v.len();
    let cols: Vec<Vec<super::Rat>> = (0..n)
        .map(|j| basis.iter().map(|b| super::Rat::from_integer(b[j].clone())).collect())
        .collect();
    let rhs: Vec<super::Rat> = v.iter().map(|x| super::Rat::from_integer(x.clone())).collect();
    let sol = super::solve_rational(&cols, &rhs)?;
    let ints: Option<Vec<BigInt>> = sol.iter().map(super::to_integer).collect();
    let ints = ints?;
    // the particular solution is unique only for an independent basis; verify
    let back: Vec<BigInt> = (0..n)
        .map(|j| basis.iter().zip(&ints).map(|(b, c)| &b[j] * c).sum())
        .collect();
    (back == v).then_some(ints)
}

/// Index `[Λ : γ]` where Λ has the given basis and γ is generated by
/// `sub_generators`. Generators outside Λ are rejected.
pub fn lattice_index(
    ambient_basis: &[Vec<BigInt>],
    sub_generators: &[Vec<BigInt>],
) -> Result<LatticeIndex, MathError> {
    if super::rank(ambient_basis) != ambient_basis.len() {
        return Err(MathError::DependentBasis);
    }
    let r = ambient_basis.len();
    let mut coords = Vec::with_capacity(sub_generators.len());
    for g in sub_generators {
        match express_in_basis(ambient_basis, g) {
            Some(c) => coords.push(c),
            None => return Err(MathError::NotInLattice(g.clone())),
        }
    }
    if r == 0 {
        return Ok(LatticeIndex::Finite(BigInt::one()));
    }
    let basis = hermite_rows(&coords);
    if basis.len() < r {
        return Ok(LatticeIndex::Infinite);
    }
    let m = IntMatrix::from_rows(&basis, r)?;
    Ok(LatticeIndex::Finite(determinant(&m)?.abs()))
}

/// An affine lattice `origin + L` where `L` is saturated, with integer
/// coordinates for its points. Used to measure volumes of lower-dimensional
/// polytopes in their own lattice.
#[derive(Clone, Debug)]
pub struct AffineLatticeFrame {
    origin: Vec<BigInt>,
    basis: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

impl AffineLatticeFrame {
    /// Frame of the smallest saturated affine lattice containing `points`.
    /// `points` must be nonempty.
    pub fn of_points(points: &[Vec<BigInt>]) -> Self {
        let origin = points[0].clone();
        let diffs: Vec<Vec<BigInt>> = points[1..].iter().map(|p| super::sub(p, &origin)).collect();
        let basis = saturation(&diffs, origin.len());
        Self::new(origin, basis)
    }

    /// Frame with a given origin and a saturated basis. The basis is brought
    /// into echelon form.
    pub fn new(origin: Vec<BigInt>, basis: Vec<Vec<BigInt>>) -> Self {
        let basis = hermite_rows(&basis);
        let pivots = basis
            .iter()
            .map(|b| b.iter().position(|x| !x.is_zero()).expect("zero basis row"))
            .collect();
        AffineLatticeFrame { origin, basis, pivots }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.origin.len()
    }

    pub fn origin(&self) -> &[BigInt] {
        &self.origin
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    /// Integer coordinates of a vector of the linear lattice.
    pub fn vector_coords(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let mut rest = v.to_vec();
        let mut out = Vec::with_capacity(self.basis.len());
        for (b, &pc) in self.basis.iter().zip(&self.pivots) {
            let (q, r) = rest[pc].div_rem(&b[pc]);
            if !r.is_zero() {
                return None;
            }
            for j in 0..rest.len() {
                let v = &rest[j] - &q * &b[j];
                rest[j] = v;
            }
            out.push(q);
        }
        rest.iter().all(|x| x.is_zero()).then_some(out)
    }

    /// Integer coordinates of a point of the affine lattice.
    pub fn coords(&self, p: &[BigInt]) -> Option<Vec<BigInt>> {
        self.vector_coords(&super::sub(p, &self.origin))
    }

    /// Inverse of [`coords`](Self::coords).
    pub fn point(&self, coords: &[BigInt]) -> Vec<BigInt> {
        let mut p = self.origin.clone();
        for (c, b) in coords.iter().zip(&self.basis) {
            for j in 0..p.len() {
                p[j] += c * &b[j];
            }
        }
        p
    }

    /// Linear map back to ambient coordinates (no origin shift).
    pub fn vector(&self, coords: &[BigInt]) -> Vec<BigInt> {
        let mut p = vec![BigInt::zero(); self.origin.len()];
        for (c, b) in coords.iter().zip(&self.basis) {
            for j in 0..p.len() {
                p[j] += c * &b[j];
            }
        }
        p
    }
}
