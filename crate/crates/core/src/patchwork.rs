//! Combinatorial patchworking: signs extended to the `2^n` symmetric copies
//! of the Newton polytope, open cell counts of the real tropical hypersurface
//! or complete intersection, and Euler characteristics.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::cayley::{admissible_collections, cayley_trick, face_system, is_nondegenerate_system, CayleyError, TropicalSystem};
use crate::exact_math::{f2_solution_count, sub, F2AffineSystem};
use crate::polytope::{is_primitive_triangulation, RegularSubdivision};
use crate::tropical::{dual_subdivision, is_nondegenerate, Sign, TropicalError, TropicalPolynomial};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PatchworkError {
    #[error("the dual subdivision is not a primitive triangulation")]
    Degenerate,
    #[error("Newton polytope has dimension {dim} in ambient dimension {ambient}")]
    NotFullDimensional { dim: usize, ambient: usize },
    #[error("brute force found {brute} mixed copies, inclusion-exclusion {f2}")]
    CopyCountMismatch { brute: BigInt, f2: BigInt },
    #[error("{signs} signs for {points} points")]
    SignCount { signs: usize, points: usize },
    #[error(transparent)]
    Cayley(#[from] CayleyError),
    #[error(transparent)]
    Tropical(#[from] TropicalError),
}

/// Copy `ε ∈ {0,1}^n` of the positive orthant.
pub type OrthantCopy = Vec<bool>;

/// Sign of the monomial `w` in the copy `ε`: `δ · (-1)^(ε·w)`.
pub fn sign_in_copy(delta: Sign, w: &[BigInt], eps: &[bool]) -> Sign {
    let odd = w
        .iter()
        .zip(eps)
        .filter(|(x, &e)| e && x.is_odd())
        .count()
        % 2
        == 1;
    if odd {
        delta.flip()
    } else {
        delta
    }
}

/// A set of lattice points carrying signs, typically a simplex `Γ_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedPiece {
    pub points: Vec<Vec<BigInt>>,
    pub signs: Vec<Sign>,
}

impl SignedPiece {
    pub fn new(points: Vec<Vec<BigInt>>, signs: Vec<Sign>) -> Result<Self, PatchworkError> {
        if points.len() != signs.len() {
            return Err(PatchworkError::SignCount { signs: signs.len(), points: points.len() });
        }
        Ok(SignedPiece { points, signs })
    }

    fn is_mixed_in(&self, eps: &[bool]) -> bool {
        let first = sign_in_copy(self.signs[0], &self.points[0], eps);
        self.points.iter().zip(&self.signs).any(|(w, &s)| sign_in_copy(s, w, eps) != first)
    }
}

/// Copies in which every piece carries both signs, by enumeration.
pub fn count_mixed_copies_brute(pieces: &[SignedPiece], n: usize) -> BigInt {
    let mut count = 0u64;
    let mut eps = vec![false; n];
    for mask in 0u64..(1u64 << n) {
        for (j, e) in eps.iter_mut().enumerate() {
            *e = mask >> j & 1 == 1;
        }
        if pieces.iter().all(|p| p.is_mixed_in(&eps)) {
            count += 1;
        }
    }
    BigInt::from(count)
}

/// Copies in which every piece carries both signs, by inclusion-exclusion
/// over the pieces forced to be monochromatic. A piece is monochromatic in
/// `ε` iff `ε·(v - v_0) ≡ [δ_v ≠ δ_{v_0}] (mod 2)` for all its points.
pub fn count_mixed_copies_f2(pieces: &[SignedPiece], n: usize) -> BigInt {
    let mut total = BigInt::zero();
    for mask in 0u64..(1u64 << pieces.len()) {
        let mut sys = F2AffineSystem::new(n);
        for (j, p) in pieces.iter().enumerate() {
            if mask >> j & 1 == 0 {
                continue;
            }
            for (w, s) in p.points.iter().zip(&p.signs).skip(1) {
                sys.push_int(&sub(w, &p.points[0]), *s != p.signs[0]);
            }
        }
        let c = f2_solution_count(&sys);
        if mask.count_ones() % 2 == 1 {
            total -= c;
        } else {
            total += c;
        }
    }
    total
}

/// Largest dimension for which the brute-force count is also run.
pub const BRUTE_FORCE_LIMIT: usize = 16;

/// Mixed-copy count, cross-checked by enumeration when `n` is small enough.
pub fn count_mixed_copies(pieces: &[SignedPiece], n: usize) -> Result<BigInt, PatchworkError> {
    let f2 = count_mixed_copies_f2(pieces, n);
    if n <= BRUTE_FORCE_LIMIT {
        let brute = count_mixed_copies_brute(pieces, n);
        if brute != f2 {
            return Err(PatchworkError::CopyCountMismatch { brute, f2 });
        }
    }
    Ok(f2)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatchworkPiece {
    /// Term indices of each factor.
    pub parts: Vec<Vec<usize>>,
    /// Dimension of the open cells contributed.
    pub dim: usize,
    pub copies: BigInt,
}

/// Open cell counts by dimension, with the contributing pieces.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PatchworkComplex {
    pub counts: Vec<BigInt>,
    pub pieces: Vec<PatchworkPiece>,
}

impl PatchworkComplex {
    fn add(&mut self, piece: PatchworkPiece) {
        if self.counts.len() <= piece.dim {
            self.counts.resize(piece.dim + 1, BigInt::zero());
        }
        self.counts[piece.dim] += &piece.copies;
        self.pieces.push(piece);
    }
}

/// Alternating sum of open cell counts.
pub fn euler_torus(complex: &PatchworkComplex) -> BigInt {
    complex
        .counts
        .iter()
        .enumerate()
        .map(|(j, c)| if j % 2 == 0 { c.clone() } else { -c })
        .sum()
}

fn piece(f: &TropicalPolynomial, signs: &[Sign], terms: &[usize]) -> SignedPiece {
    SignedPiece {
        points: terms.iter().map(|&t| f.terms()[t].exponent.clone()).collect(),
        signs: terms.iter().map(|&t| signs[t]).collect(),
    }
}

/// Real part of a T-hypersurface: each interior `k`-simplex of the dual
/// triangulation gives one open `(k-1)`-cell per copy where it is mixed.
pub fn hypersurface_complex(f: &TropicalPolynomial) -> Result<PatchworkComplex, PatchworkError> {
    let n = f.ambient_dim();
    let data = dual_subdivision(f)?;
    if data.dual.dim() != n {
        return Err(PatchworkError::NotFullDimensional { dim: data.dual.dim(), ambient: n });
    }
    if !is_nondegenerate(f)? {
        return Err(PatchworkError::Degenerate);
    }
    let signs = f.signs()?;
    let mut out = PatchworkComplex::default();
    for face in data.dual.faces() {
        if face.dim == 0 || data.dual.in_boundary(&face.points) {
            continue;
        }
        let copies = count_mixed_copies(&[piece(f, &signs, &face.points)], n)?;
        out.add(PatchworkPiece { parts: vec![face.points.clone()], dim: face.dim - 1, copies });
    }
    Ok(out)
}

/// Real part of a nondegenerate complete intersection: each mixed cell `Γ`
/// off the boundary with every `Γ_i` of positive dimension gives one open
/// `(dim Γ - k)`-cell per copy where every `Γ_i` is mixed.
pub fn ci_complex(sys: &TropicalSystem) -> Result<PatchworkComplex, PatchworkError> {
    let n = sys.ambient_dim();
    let k = sys.len();
    if sys.sum_dim() != n {
        return Err(PatchworkError::NotFullDimensional { dim: sys.sum_dim(), ambient: n });
    }
    if !is_nondegenerate_system(sys)? {
        return Err(PatchworkError::Degenerate);
    }
    let signs: Vec<Vec<Sign>> = sys.polys().iter().map(|f| f.signs()).collect::<Result<_, _>>()?;
    let ms = cayley_trick(sys)?;
    let mut out = PatchworkComplex::default();
    for c in &ms.cells {
        if c.boundary || !c.meets_all() {
            continue;
        }
        let pieces: Vec<SignedPiece> = c
            .parts
            .iter()
            .zip(sys.polys())
            .zip(&signs)
            .map(|((terms, f), s)| piece(f, s, terms))
            .collect();
        let copies = count_mixed_copies(&pieces, n)?;
        out.add(PatchworkPiece { parts: c.parts.clone(), dim: c.dim - k, copies });
    }
    Ok(out)
}

/// Euler characteristic of the closure in the toric variety of `Δ`, by
/// additivity over the torus orbits, one per face of `Δ`.
pub fn euler_compactified(sys: &TropicalSystem) -> Result<BigInt, PatchworkError> {
    let k = sys.len();
    let mut total = BigInt::zero();
    for adm in admissible_collections(sys) {
        if !adm.is_full(k) || adm.faces.iter().any(|f| f.len() == 1) {
            continue;
        }
        let fs = face_system(sys, &adm)?;
        total += euler_torus(&ci_complex(&fs)?);
    }
    Ok(total)
}

/// Number of simplices of each dimension not contained in the boundary.
pub fn nb_k_direct(triangulation: &RegularSubdivision) -> Result<Vec<BigInt>, PatchworkError> {
    if !is_primitive_triangulation(triangulation) {
        return Err(PatchworkError::Degenerate);
    }
    let mut nb = vec![BigInt::zero(); triangulation.dim() + 1];
    for face in triangulation.faces() {
        if !triangulation.in_boundary(&face.points) {
            nb[face.dim] += BigInt::one();
        }
    }
    Ok(nb)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::tests::two_lines;
    use crate::exact_math::{ivec, rat};
    use crate::polytope::regular_subdivision;
    use crate::tropical::Term;

    fn signed(n: usize, terms: &[(&[i64], i64, i64)]) -> TropicalPolynomial {
        TropicalPolynomial::new(
            n,
            terms
                .iter()
                .map(|(e, l, s)| Term { exponent: ivec(e), lift: rat(*l, 1), sign: Some(Sign::from_int(*s).unwrap()) })
                .collect(),
        )
        .unwrap()
    }

    fn simplex_piece(pts: &[&[i64]], signs: &[i64]) -> SignedPiece {
        SignedPiece::new(
            pts.iter().map(|p| ivec(p)).collect(),
            signs.iter().map(|&s| Sign::from_int(s).unwrap()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn sign_rule() {
        assert_eq!(sign_in_copy(Sign::Plus, &ivec(&[1, 0]), &[false, false]), Sign::Plus);
        assert_eq!(sign_in_copy(Sign::Plus, &ivec(&[1, 0]), &[true, false]), Sign::Minus);
        assert_eq!(sign_in_copy(Sign::Plus, &ivec(&[2, 0]), &[true, false]), Sign::Plus);
        assert_eq!(sign_in_copy(Sign::Minus, &ivec(&[-1, 3]), &[true, true]), Sign::Minus);
    }

    #[test]
    fn copy_counts() {
        let tri = simplex_piece(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0]], &[1, 1, 1]);
        assert_eq!(count_mixed_copies(&[tri], 3).unwrap(), BigInt::from(6));
        let tet = simplex_piece(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]], &[1, -1, 1, 1]);
        assert_eq!(count_mixed_copies(&[tet], 3).unwrap(), BigInt::from(7));
        let a = simplex_piece(&[&[0, 0], &[1, 0]], &[1, 1]);
        let b = simplex_piece(&[&[0, 0], &[0, 1]], &[1, 1]);
        assert_eq!(count_mixed_copies(&[a, b], 2).unwrap(), BigInt::from(1));
    }

    #[test]
    fn hypersurface_examples() {
        let line = signed(2, &[(&[0, 0], 0, 1), (&[1, 0], 0, 1), (&[0, 1], 0, 1)]);
        let c = hypersurface_complex(&line).unwrap();
        assert_eq!(c.counts, vec![BigInt::zero(), BigInt::from(3)]);
        assert_eq!(euler_torus(&c), BigInt::from(-3));
        let conic = signed(2, &[(&[0, 0], 0, 1), (&[1, 0], 0, -1), (&[0, 1], 0, 1), (&[1, 1], 1, 1)]);
        assert_eq!(euler_torus(&hypersurface_complex(&conic).unwrap()), BigInt::from(-4));
        let quartic = signed(1, &[(&[0], 0, 1), (&[1], -1, -1), (&[2], -1, 1), (&[3], 0, 1), (&[4], 2, -1)]);
        assert!(is_nondegenerate(&quartic).unwrap());
        assert_eq!(euler_torus(&hypersurface_complex(&quartic).unwrap()), BigInt::from(4));
        let flat = signed(1, &[(&[0], 0, 1), (&[1], 0, -1), (&[2], 0, 1)]);
        assert_eq!(hypersurface_complex(&flat), Err(PatchworkError::Degenerate));
    }

    #[test]
    fn complete_intersection_examples() {
        let sys = two_lines();
        let c = ci_complex(&sys).unwrap();
        assert_eq!(c.counts, vec![BigInt::one()]);
        let line = signed(2, &[(&[0, 0], 0, 1), (&[1, 0], 0, 1), (&[0, 1], 0, 1)]);
        let single = TropicalSystem::new(2, vec![line.clone()]).unwrap();
        assert_eq!(ci_complex(&single).unwrap(), hypersurface_complex(&line).unwrap());
        let conic = signed(
            2,
            &[(&[0, 0], 0, 1), (&[1, 0], 1, -1), (&[2, 0], 3, 1), (&[0, 1], 2, 1), (&[1, 1], 5, -1), (&[0, 2], 7, 1)],
        );
        let sys = TropicalSystem::new(2, vec![line, conic]).unwrap();
        if is_nondegenerate_system(&sys).unwrap() {
            assert_eq!(euler_torus(&ci_complex(&sys).unwrap()), BigInt::from(2));
        }
    }

    #[test]
    fn compactified_line() {
        let line = signed(2, &[(&[0, 0], 0, 1), (&[1, 0], 0, 1), (&[0, 1], 0, 1)]);
        let sys = TropicalSystem::new(2, vec![line]).unwrap();
        assert_eq!(euler_compactified(&sys).unwrap(), BigInt::zero());
    }

    #[test]
    fn interior_simplex_counts() {
        let pts: Vec<Vec<BigInt>> = [[0, 0], [1, 0], [0, 1]].iter().map(|p| ivec(p)).collect();
        let s = regular_subdivision(&pts, &[rat(0, 1), rat(0, 1), rat(0, 1)]).unwrap();
        assert_eq!(nb_k_direct(&s).unwrap(), ivec(&[0, 0, 1]));
        let pts: Vec<Vec<BigInt>> = [[0, 0], [1, 0], [0, 1], [1, 1]].iter().map(|p| ivec(p)).collect();
        let s = regular_subdivision(&pts, &[rat(0, 1), rat(0, 1), rat(0, 1), rat(1, 1)]).unwrap();
        assert_eq!(nb_k_direct(&s).unwrap(), ivec(&[0, 1, 2]));
        let mut pts = Vec::new();
        let mut lifts = Vec::new();
        for i in 0..=3i64 {
            for j in 0..=3 - i {
                pts.push(ivec(&[i, j]));
                lifts.push(rat(i * i + j * j + i * j, 1));
            }
        }
        let s = regular_subdivision(&pts, &lifts).unwrap();
        assert_eq!(nb_k_direct(&s).unwrap(), ivec(&[1, 9, 9]));
    }
}
