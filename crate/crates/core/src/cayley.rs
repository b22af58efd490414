//! Systems of tropical polynomials through their Cayley configuration: mixed
//! subdivisions with their Minkowski representations, purity, nondegeneracy,
//! admissible face collections and truncated systems.

use num_bigint::BigInt;
use thiserror::Error;

use crate::exact_math::{saturation, sub, AffineLatticeFrame, Rat};
use crate::polytope::{is_primitive_triangulation, regular_subdivision, LatticePolytope, PolytopeError, RegularSubdivision};
use crate::tropical::{Term, TropicalError, TropicalPolynomial};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CayleyError {
    #[error("a system needs at least one polynomial")]
    Empty,
    #[error("polynomial {index} lives in dimension {found}, expected {expected}")]
    DimensionMismatch { index: usize, expected: usize, found: usize },
    #[error("the collection is not admissible")]
    NotAdmissible,
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error(transparent)]
    Tropical(#[from] TropicalError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropicalSystem {
    ambient_dim: usize,
    polys: Vec<TropicalPolynomial>,
}

impl TropicalSystem {
    pub fn new(ambient_dim: usize, polys: Vec<TropicalPolynomial>) -> Result<Self, CayleyError> {
        if polys.is_empty() {
            return Err(CayleyError::Empty);
        }
        for (index, p) in polys.iter().enumerate() {
            if p.ambient_dim() != ambient_dim {
                return Err(CayleyError::DimensionMismatch { index, expected: ambient_dim, found: p.ambient_dim() });
            }
        }
        Ok(TropicalSystem { ambient_dim, polys })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn polys(&self) -> &[TropicalPolynomial] {
        &self.polys
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    /// Newton polytopes as exponent lists.
    pub fn supports(&self) -> Vec<Vec<Vec<BigInt>>> {
        self.polys.iter().map(|p| p.exponents()).collect()
    }

    /// Dimension of the Minkowski sum of the Newton polytopes.
    pub fn sum_dim(&self) -> usize {
        let n = self.ambient_dim;
        let mut dirs = Vec::new();
        for p in &self.polys {
            let e = p.exponents();
            dirs.extend(e[1..].iter().map(|x| sub(x, &e[0])));
        }
        saturation(&dirs, n).len()
    }
}

/// Points `(ω, e_i)` for every term `ω` of every polynomial `i`, lifted by
/// the term's lift.
#[derive(Clone, Debug)]
pub struct CayleyConfiguration {
    pub ambient_dim: usize,
    pub polys: usize,
    pub points: Vec<Vec<BigInt>>,
    pub lifts: Vec<Rat>,
    /// `(polynomial, term)` for each point.
    pub owner: Vec<(usize, usize)>,
}

impl CayleyConfiguration {
    pub fn polytope(&self) -> LatticePolytope {
        LatticePolytope::from_points(&self.points).expect("distinct Cayley points")
    }

    /// Splits a set of configuration points into term indices per
    /// polynomial.
    pub fn split(&self, pts: &[usize]) -> Vec<Vec<usize>> {
        let mut parts = vec![Vec::new(); self.polys];
        for &p in pts {
            let (i, t) = self.owner[p];
            parts[i].push(t);
        }
        parts
    }
}

pub fn cayley_configuration(sys: &TropicalSystem) -> CayleyConfiguration {
    let n = sys.ambient_dim;
    let k = sys.polys.len();
    let mut points = Vec::new();
    let mut lifts = Vec::new();
    let mut owner = Vec::new();
    for (i, p) in sys.polys.iter().enumerate() {
        for (j, t) in p.terms().iter().enumerate() {
            let mut v = t.exponent.clone();
            v.extend((0..k).map(|m| BigInt::from((m == i) as i64)));
            points.push(v);
            lifts.push(t.lift.clone());
            owner.push((i, j));
        }
    }
    CayleyConfiguration { ambient_dim: n, polys: k, points, lifts, owner }
}

/// A cell `Γ = Γ_1 + .. + Γ_k` of a mixed subdivision with its representation
/// read off the Cayley cell it comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedCell {
    /// Term indices of `Γ_i` for each polynomial.
    pub parts: Vec<Vec<usize>>,
    pub part_dims: Vec<usize>,
    pub dim: usize,
    /// Points of the Cayley cell.
    pub cayley: Vec<usize>,
    /// Whether `Γ` lies in the relative boundary of the Minkowski sum.
    pub boundary: bool,
}

impl MixedCell {
    /// Dimensions add up.
    pub fn is_pure(&self) -> bool {
        self.part_dims.iter().sum::<usize>() == self.dim
    }

    pub fn is_tight(&self) -> bool {
        self.is_pure() && self.parts.iter().zip(&self.part_dims).all(|(p, &d)| p.len() == d + 1)
    }

    /// All factors have positive dimension, so the dual cell lies on every
    /// hypersurface.
    pub fn meets_all(&self) -> bool {
        self.part_dims.iter().all(|&d| d >= 1)
    }
}

#[derive(Clone, Debug)]
pub struct MixedSubdivision {
    pub configuration: CayleyConfiguration,
    pub cayley: RegularSubdivision,
    /// Every mixed cell (all dimensions), sorted by dimension.
    pub cells: Vec<MixedCell>,
    /// Indices into `cells` of the maximal cells.
    pub maximal: Vec<usize>,
}

impl MixedSubdivision {
    pub fn maximal_cells(&self) -> impl Iterator<Item = &MixedCell> {
        self.maximal.iter().map(|&i| &self.cells[i])
    }

    /// Dimension of the Minkowski sum.
    pub fn dim(&self) -> usize {
        self.cayley.dim() + 1 - self.configuration.polys
    }
}

fn part_dim(poly: &TropicalPolynomial, terms: &[usize]) -> usize {
    let pts: Vec<Vec<BigInt>> = terms.iter().map(|&t| poly.terms()[t].exponent.clone()).collect();
    crate::polytope::affine_rank(&pts)
}

fn mixed_cell(sys: &TropicalSystem, conf: &CayleyConfiguration, boundary_facets: &[Vec<usize>], cell: &[usize], dim: usize) -> MixedCell {
    let parts = conf.split(cell);
    let part_dims = parts.iter().zip(&sys.polys).map(|(p, f)| part_dim(f, p)).collect();
    MixedCell {
        parts,
        part_dims,
        dim: dim + 1 - conf.polys,
        cayley: cell.to_vec(),
        boundary: boundary_facets.iter().any(|f| cell.iter().all(|i| f.binary_search(i).is_ok())),
    }
}

/// Mixed subdivision induced by the lifts, through the regular subdivision of
/// the Cayley configuration.
pub fn cayley_trick(sys: &TropicalSystem) -> Result<MixedSubdivision, CayleyError> {
    let conf = cayley_configuration(sys);
    let sub_div = regular_subdivision(&conf.points, &conf.lifts)?;
    let k = conf.polys;
    let has_all = |pts: &[usize]| {
        let mut seen = vec![false; k];
        for &p in pts {
            seen[conf.owner[p].0] = true;
        }
        seen.iter().all(|&s| s)
    };
    // boundary facets of the Minkowski sum are the Cayley facets meeting every
    // polynomial
    let boundary: Vec<Vec<usize>> = sub_div
        .hull()
        .facets()
        .iter()
        .filter(|f| has_all(&f.points))
        .map(|f| f.points.clone())
        .collect();
    let mut cells = Vec::new();
    let mut maximal = Vec::new();
    for face in sub_div.faces() {
        if !has_all(&face.points) {
            continue;
        }
        if sub_div.cells().binary_search(&face.points).is_ok() {
            maximal.push(cells.len());
        }
        cells.push(mixed_cell(sys, &conf, &boundary, &face.points, face.dim));
    }
    Ok(MixedSubdivision { configuration: conf, cayley: sub_div, cells, maximal })
}

/// `(is_pure, is_tight)` over the maximal cells.
pub fn purity_flags(ms: &MixedSubdivision) -> (bool, bool) {
    let pure = ms.maximal_cells().all(|c| c.is_pure());
    let tight = ms.maximal_cells().all(|c| c.is_tight());
    (pure, tight)
}

/// The Cayley configuration's subdivision is a primitive triangulation.
pub fn is_nondegenerate_system(sys: &TropicalSystem) -> Result<bool, CayleyError> {
    let conf = cayley_configuration(sys);
    let sub_div = regular_subdivision(&conf.points, &conf.lifts)?;
    Ok(is_primitive_triangulation(&sub_div))
}

/// A collection of faces `Γ_i` of `Δ_i`, `i ∈ I`, whose sum is a face of the
/// sum of the `Δ_i`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct AdmissibleCollection {
    /// The index set `I`, increasing.
    pub polys: Vec<usize>,
    /// Term indices of `Γ_i`, aligned with `polys`.
    pub faces: Vec<Vec<usize>>,
    /// Dimension of `Σ Γ_i`.
    pub dim: usize,
}

impl AdmissibleCollection {
    pub fn is_full(&self, k: usize) -> bool {
        self.polys.len() == k
    }
}

/// All admissible collections, one per face of the Cayley polytope.
pub fn admissible_collections(sys: &TropicalSystem) -> Vec<AdmissibleCollection> {
    let conf = cayley_configuration(sys);
    let poly = conf.polytope();
    let mut out: Vec<AdmissibleCollection> = poly
        .faces()
        .into_iter()
        .map(|f| {
            let parts = conf.split(&f.points);
            let polys: Vec<usize> = (0..conf.polys).filter(|&i| !parts[i].is_empty()).collect();
            let faces = polys.iter().map(|&i| parts[i].clone()).collect();
            AdmissibleCollection { dim: f.dim + 1 - polys.len(), polys, faces }
        })
        .collect();
    out.sort();
    out
}

/// The truncated system `(f_i^{Γ_i})_{i ∈ I}` in the lattice parallel to
/// `Σ Γ_i`. Each truncation keeps its lifts and uses its first term as
/// origin.
pub fn face_system(sys: &TropicalSystem, adm: &AdmissibleCollection) -> Result<TropicalSystem, CayleyError> {
    if adm.polys.is_empty() || adm.polys.len() != adm.faces.len() {
        return Err(CayleyError::NotAdmissible);
    }
    let conf = cayley_configuration(sys);
    let mut sel = Vec::new();
    for (&i, face) in adm.polys.iter().zip(&adm.faces) {
        if i >= sys.polys.len() || face.is_empty() {
            return Err(CayleyError::NotAdmissible);
        }
        for &t in face {
            let p = conf
                .owner
                .iter()
                .position(|&o| o == (i, t))
                .ok_or(CayleyError::NotAdmissible)?;
            sel.push(p);
        }
    }
    sel.sort_unstable();
    sel.dedup();
    if conf.polytope().carrier(&sel) != sel {
        return Err(CayleyError::NotAdmissible);
    }
    let n = sys.ambient_dim;
    let mut dirs = Vec::new();
    for (&i, face) in adm.polys.iter().zip(&adm.faces) {
        let e0 = &sys.polys[i].terms()[face[0]].exponent;
        dirs.extend(face[1..].iter().map(|&t| sub(&sys.polys[i].terms()[t].exponent, e0)));
    }
    let frame = AffineLatticeFrame::new(vec![BigInt::from(0); n], saturation(&dirs, n));
    let mut polys = Vec::new();
    for (&i, face) in adm.polys.iter().zip(&adm.faces) {
        let f = &sys.polys[i];
        let e0 = &f.terms()[face[0]].exponent;
        let terms = face
            .iter()
            .map(|&t| Term {
                exponent: frame.vector_coords(&sub(&f.terms()[t].exponent, e0)).expect("direction in the face lattice"),
                lift: f.terms()[t].lift.clone(),
                sign: f.terms()[t].sign,
            })
            .collect();
        polys.push(TropicalPolynomial::new(frame.dim(), terms)?);
    }
    TropicalSystem::new(frame.dim(), polys)
}
