//! Intersection multiplicities of tropical hypersurfaces along the cells of
//! their common intersection, from mixed volumes of the dual cells and,
//! independently, by resolving the cell with generic translations.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::cayley::{admissible_collections, cayley_trick, face_system, purity_flags, CayleyError, MixedCell, TropicalSystem};
use crate::exact_math::{lattice_index, saturation, sub, to_integer, LatticeIndex, MathError};
use crate::polytope::{affine_rank, mixed_volume, normalized_volume, LatticePolytope, PolytopeError};
use crate::tropical::{Term, TropicalError, TropicalPolynomial};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MultiplicityError {
    #[error("cell is not a transversal intersection (dims {part_dims:?}, cell dim {dim})")]
    NotTransversal { part_dims: Vec<usize>, dim: usize },
    #[error("mixed volume term {0} is not an integer")]
    NonInteger(String),
    #[error("no pure refinement found after {0} perturbations")]
    PerturbationBudget(usize),
    #[error("{polys} polynomials in dimension {dim}; a square system is required")]
    NotSquare { polys: usize, dim: usize },
    #[error("weights sum to {weights} but the mixed volume is {mixed_volume}")]
    BernsteinMismatch { weights: BigInt, mixed_volume: BigInt },
    #[error("cell has no factors")]
    Empty,
    #[error(transparent)]
    Cayley(#[from] CayleyError),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error(transparent)]
    Tropical(#[from] TropicalError),
    #[error(transparent)]
    Math(#[from] MathError),
}

/// A dual cell `σ = σ_1 + .. + σ_k` given by the point sets of its factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionCell {
    pub ambient_dim: usize,
    pub parts: Vec<Vec<Vec<BigInt>>>,
    pub part_dims: Vec<usize>,
    pub dim: usize,
}

impl IntersectionCell {
    pub fn new(ambient_dim: usize, parts: Vec<Vec<Vec<BigInt>>>) -> Result<Self, MultiplicityError> {
        if parts.is_empty() || parts.iter().any(|p| p.is_empty()) {
            return Err(MultiplicityError::Empty);
        }
        let part_dims = parts.iter().map(|p| affine_rank(p)).collect();
        let dim = saturation(&differences(&parts), ambient_dim).len();
        Ok(IntersectionCell { ambient_dim, parts, part_dims, dim })
    }

    pub fn from_mixed(sys: &TropicalSystem, cell: &MixedCell) -> Self {
        let parts = cell
            .parts
            .iter()
            .zip(sys.polys())
            .map(|(terms, f)| terms.iter().map(|&t| f.terms()[t].exponent.clone()).collect())
            .collect();
        IntersectionCell::new(sys.ambient_dim(), parts).expect("mixed cells meet every polynomial")
    }

    pub fn is_transversal(&self) -> bool {
        self.part_dims.iter().sum::<usize>() == self.dim
    }

    pub fn meets_all(&self) -> bool {
        self.part_dims.iter().all(|&d| d >= 1)
    }

    /// Basis of `M(σ)`.
    pub fn lattice(&self) -> Vec<Vec<BigInt>> {
        saturation(&differences(&self.parts), self.ambient_dim)
    }
}

fn differences(parts: &[Vec<Vec<BigInt>>]) -> Vec<Vec<BigInt>> {
    parts.iter().flat_map(|p| p[1..].iter().map(move |q| sub(q, &p[0]))).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightRecord {
    pub weight: BigInt,
    /// `(t, MV_d(σ_1,..,σ_k; t))` for every composition that was summed.
    pub terms: Vec<(Vec<usize>, BigInt)>,
    /// `[M(σ) : M(σ_1) + .. + M(σ_k)]` in the transversal formula.
    pub index: Option<BigInt>,
}

/// `Π vol(σ_i) · [M(σ) : Σ M(σ_i)]`.
pub fn weight_transversal(cell: &IntersectionCell) -> Result<WeightRecord, MultiplicityError> {
    if !cell.is_transversal() || !cell.meets_all() {
        return Err(MultiplicityError::NotTransversal { part_dims: cell.part_dims.clone(), dim: cell.dim });
    }
    let mut vol = BigInt::one();
    let mut gens = Vec::new();
    for p in &cell.parts {
        vol *= normalized_volume(&LatticePolytope::from_points(p)?);
        gens.extend(saturation(&differences(std::slice::from_ref(p)), cell.ambient_dim));
    }
    let index = match lattice_index(&cell.lattice(), &gens)? {
        LatticeIndex::Finite(i) => i,
        LatticeIndex::Infinite => unreachable!("dimensions add up"),
    };
    Ok(WeightRecord { weight: vol * &index, terms: Vec::new(), index: Some(index) })
}

fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 1..=total.saturating_sub(parts - 1) {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Sum of `MV_d(σ_1,..,σ_k; t)` over compositions `t` of `d` with positive
/// parts, in the lattice `M(σ)`. Zero when some factor is a point or when
/// `d < k`.
pub fn weight_general(cell: &IntersectionCell) -> Result<WeightRecord, MultiplicityError> {
    let mut rec = WeightRecord { weight: BigInt::zero(), terms: Vec::new(), index: None };
    if !cell.meets_all() {
        return Ok(rec);
    }
    let lattice = cell.lattice();
    for t in compositions(cell.dim, cell.parts.len()) {
        let mv = mixed_volume(&cell.parts, &t, Some(&lattice))?;
        let mv = to_integer(&mv).ok_or_else(|| MultiplicityError::NonInteger(mv.to_string()))?;
        rec.weight += &mv;
        rec.terms.push((t, mv));
    }
    Ok(rec)
}

pub const PERTURBATION_BUDGET: usize = 20;

/// Translates each hypersurface by a seeded random vector, which lifts `σ_i`
/// by a linear function, and sums transversal weights over the resulting
/// `d`-dimensional cells.
pub fn weight_by_perturbation(cell: &IntersectionCell, seed: u64) -> Result<BigInt, MultiplicityError> {
    if !cell.meets_all() {
        return Ok(BigInt::zero());
    }
    let n = cell.ambient_dim;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..PERTURBATION_BUDGET {
        let mut polys = Vec::new();
        for part in &cell.parts {
            let v: Vec<BigInt> = (0..n).map(|_| BigInt::from(rng.gen_range(-1000i64..=1000))).collect();
            let terms = part
                .iter()
                .map(|w| Term {
                    exponent: w.clone(),
                    lift: crate::exact_math::rat_int(crate::exact_math::dot(&v, w)),
                    sign: None,
                })
                .collect();
            polys.push(TropicalPolynomial::new(n, terms)?);
        }
        let sys = TropicalSystem::new(n, polys)?;
        let ms = cayley_trick(&sys)?;
        if !purity_flags(&ms).0 {
            continue;
        }
        let mut total = BigInt::zero();
        for c in ms.maximal_cells() {
            let ic = IntersectionCell::from_mixed(&sys, c);
            if ic.meets_all() && ic.dim == cell.dim {
                total += weight_transversal(&ic)?.weight;
            }
        }
        return Ok(total);
    }
    Err(MultiplicityError::PerturbationBudget(PERTURBATION_BUDGET))
}

/// Cells of the mixed subdivision dual to cells of the common intersection.
pub fn intersection_cells(sys: &TropicalSystem) -> Result<Vec<IntersectionCell>, MultiplicityError> {
    let ms = cayley_trick(sys)?;
    Ok(ms
        .cells
        .iter()
        .filter(|c| c.meets_all())
        .map(|c| IntersectionCell::from_mixed(sys, c))
        .collect())
}

/// Number of intersection points of `n` tropical hypersurfaces in `R^n`
/// counted with weights; checked against `MV_n(Δ_1,..,Δ_n)`.
pub fn stable_intersection_total(sys: &TropicalSystem) -> Result<BigInt, MultiplicityError> {
    let n = sys.ambient_dim();
    if sys.len() != n {
        return Err(MultiplicityError::NotSquare { polys: sys.len(), dim: n });
    }
    let ms = cayley_trick(sys)?;
    let mut total = BigInt::zero();
    for c in ms.maximal_cells() {
        let ic = IntersectionCell::from_mixed(sys, c);
        if ic.dim == n {
            total += weight_general(&ic)?.weight;
        }
    }
    let identity: Vec<Vec<BigInt>> =
        (0..n).map(|i| (0..n).map(|j| BigInt::from((i == j) as i64)).collect()).collect();
    let mv = mixed_volume(&sys.supports(), &vec![1; n], Some(&identity))?;
    let mv = to_integer(&mv).ok_or_else(|| MultiplicityError::NonInteger(mv.to_string()))?;
    if mv != total {
        return Err(MultiplicityError::BernsteinMismatch { weights: total, mixed_volume: mv });
    }
    Ok(total)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MultiplicityReport {
    pub collections: usize,
    pub cells_checked: usize,
    /// Intersection cells that are not transversal or have weight other than 1.
    pub failures: Vec<String>,
    pub cayley_volume_checked: usize,
    /// Tight cells where the Cayley volume differs from the transversal weight.
    pub cayley_volume_failures: Vec<String>,
}

impl MultiplicityReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty() && self.cayley_volume_failures.is_empty()
    }
}

/// Checks that every truncated system has only transversal intersections of
/// weight 1, and that tight cells have Cayley volume equal to their
/// transversal weight.
pub fn verify_multiplicity_one(sys: &TropicalSystem) -> Result<MultiplicityReport, MultiplicityError> {
    let mut rep = MultiplicityReport::default();
    for adm in admissible_collections(sys) {
        rep.collections += 1;
        let fs = face_system(sys, &adm)?;
        let ms = cayley_trick(&fs)?;
        for c in ms.cells.iter().filter(|c| c.meets_all()) {
            rep.cells_checked += 1;
            let ic = IntersectionCell::from_mixed(&fs, c);
            if !ic.is_transversal() {
                rep.failures.push(format!("collection {:?}: cell {:?} is not transversal", adm.polys, c.parts));
                continue;
            }
            let w = weight_transversal(&ic)?.weight;
            if !w.is_one() {
                rep.failures.push(format!("collection {:?}: cell {:?} has weight {}", adm.polys, c.parts, w));
            }
            if c.is_tight() {
                rep.cayley_volume_checked += 1;
                let pts: Vec<Vec<BigInt>> = c.cayley.iter().map(|&i| ms.configuration.points[i].clone()).collect();
                let vol = normalized_volume(&LatticePolytope::from_points(&pts)?);
                if vol != w {
                    rep.cayley_volume_failures.push(format!(
                        "collection {:?}: cell {:?} has Cayley volume {} and weight {}",
                        adm.polys, c.parts, vol, w
                    ));
                }
            }
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::tests::{poly, two_lines};
    use crate::exact_math::ivec;

    fn pts(v: &[&[i64]]) -> Vec<Vec<BigInt>> {
        v.iter().map(|p| ivec(p)).collect()
    }

    fn cell(parts: &[&[&[i64]]]) -> IntersectionCell {
        IntersectionCell::new(parts[0][0].len(), parts.iter().map(|p| pts(p)).collect()).unwrap()
    }

    #[test]
    fn transversal_examples() {
        let c = cell(&[&[&[0, 0], &[1, 0]], &[&[0, 0], &[0, 1]]]);
        assert_eq!(weight_transversal(&c).unwrap().weight, BigInt::from(1));
        let c = cell(&[&[&[0, 0], &[1, 1]], &[&[0, 0], &[1, -1]]]);
        let w = weight_transversal(&c).unwrap();
        assert_eq!((w.weight, w.index), (BigInt::from(2), Some(BigInt::from(2))));
        let c = cell(&[&[&[0, 0], &[2, 0]], &[&[0, 0], &[0, 1]]]);
        assert_eq!(weight_transversal(&c).unwrap().weight, BigInt::from(2));
        let same = cell(&[&[&[0, 0], &[1, 0], &[0, 1]], &[&[0, 0], &[1, 0], &[0, 1]]]);
        assert!(matches!(weight_transversal(&same), Err(MultiplicityError::NotTransversal { .. })));
    }

    #[test]
    fn general_examples() {
        let same = cell(&[&[&[0, 0], &[1, 0], &[0, 1]], &[&[0, 0], &[1, 0], &[0, 1]]]);
        assert_eq!(weight_general(&same).unwrap().weight, BigInt::from(1));
        let c = cell(&[&[&[0, 0], &[1, 1]], &[&[0, 0], &[1, -1]]]);
        assert_eq!(weight_general(&c).unwrap().weight, weight_transversal(&c).unwrap().weight);
        let tri = cell(&[&[&[0, 0], &[2, 0], &[0, 1]]]);
        assert_eq!(weight_general(&tri).unwrap().weight, BigInt::from(2));
        let with_point = cell(&[&[&[0, 0], &[1, 0]], &[&[0, 0]]]);
        assert_eq!(weight_general(&with_point).unwrap().weight, BigInt::zero());
        // three segments in a plane: d = 2 < k = 3
        let low = cell(&[&[&[0, 0], &[1, 0]], &[&[0, 0], &[0, 1]], &[&[0, 0], &[1, 1]]]);
        let w = weight_general(&low).unwrap();
        assert!(w.weight.is_zero() && w.terms.is_empty());
    }

    #[test]
    fn perturbation_examples() {
        let same = cell(&[&[&[0, 0], &[1, 0], &[0, 1]], &[&[0, 0], &[1, 0], &[0, 1]]]);
        for seed in 0..3 {
            assert_eq!(weight_by_perturbation(&same, seed).unwrap(), BigInt::from(1));
        }
        let c = cell(&[&[&[0, 0], &[1, 1]], &[&[0, 0], &[1, -1]]]);
        assert_eq!(weight_by_perturbation(&c, 7).unwrap(), BigInt::from(2));
        let tri = cell(&[&[&[0, 0], &[2, 0], &[0, 1]]]);
        assert_eq!(weight_by_perturbation(&tri, 1).unwrap(), BigInt::from(2));
        let squares = cell(&[&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]], &[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]]);
        assert_eq!(weight_by_perturbation(&squares, 3).unwrap(), weight_general(&squares).unwrap().weight);
    }

    #[test]
    fn bernstein_examples() {
        assert_eq!(stable_intersection_total(&two_lines()).unwrap(), BigInt::from(1));
        let line = poly(2, &[(&[0, 0], 0), (&[1, 0], 0), (&[0, 1], 0)]);
        let conic = poly(2, &[(&[0, 0], 0), (&[1, 0], 1), (&[2, 0], 3), (&[0, 1], 2), (&[1, 1], 5), (&[0, 2], 7)]);
        let sys = TropicalSystem::new(2, vec![line, conic]).unwrap();
        assert_eq!(stable_intersection_total(&sys).unwrap(), BigInt::from(2));
        let sq = |a: i64| poly(2, &[(&[0, 0], 0), (&[1, 0], a), (&[0, 1], 2 * a), (&[1, 1], 5)]);
        let sys = TropicalSystem::new(2, vec![sq(1), sq(-2)]).unwrap();
        assert_eq!(stable_intersection_total(&sys).unwrap(), BigInt::from(2));
        // identical lines: a single non-transversal point of weight 1
        let l = poly(2, &[(&[0, 0], 0), (&[1, 0], 0), (&[0, 1], 0)]);
        let sys = TropicalSystem::new(2, vec![l.clone(), l]).unwrap();
        assert_eq!(stable_intersection_total(&sys).unwrap(), BigInt::from(1));
    }

    #[test]
    fn multiplicity_one_examples() {
        assert!(verify_multiplicity_one(&two_lines()).unwrap().holds());
        let l = poly(2, &[(&[0, 0], 0), (&[1, 0], 0), (&[0, 1], 0)]);
        let sys = TropicalSystem::new(2, vec![l.clone(), l]).unwrap();
        assert!(!verify_multiplicity_one(&sys).unwrap().holds());
        let a = poly(2, &[(&[0, 0], 0), (&[1, 1], 0)]);
        let b = poly(2, &[(&[0, 0], 0), (&[1, -1], 1)]);
        let sys = TropicalSystem::new(2, vec![a, b]).unwrap();
        let rep = verify_multiplicity_one(&sys).unwrap();
        assert!(!rep.holds());
        assert!(!crate::cayley::is_nondegenerate_system(&sys).unwrap());
    }

    #[test]
    fn compositions_enumerate() {
        assert_eq!(compositions(3, 2), vec![vec![1, 2], vec![2, 1]]);
        assert!(compositions(1, 2).is_empty());
    }
}
