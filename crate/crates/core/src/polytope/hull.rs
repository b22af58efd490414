use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::PolytopeError;
use crate::exact_math::{self, dot, kernel_basis, primitive, rank, sub, AffineLatticeFrame, Rat};

/// Supporting inequality `normal · y <= offset` in the frame coordinates of
/// the polytope, together with the configuration points lying on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    pub normal: Vec<BigInt>,
    pub offset: BigInt,
    pub points: Vec<usize>,
}

/// A face, as the sorted set of configuration points it contains.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Face {
    pub dim: usize,
    pub points: Vec<usize>,
}

/// Dimension of the affine hull of a point list (0 for a single point, and
/// also for an empty list).
pub fn affine_rank(points: &[Vec<BigInt>]) -> usize {
    let Some(first) = points.first() else {
        return 0;
    };
    let diffs: Vec<Vec<BigInt>> = points[1..].iter().map(|p| sub(p, first)).collect();
    rank(&diffs)
}

fn affine_rank_of(pts: &[Vec<BigInt>], idx: &[usize]) -> usize {
    let sel: Vec<Vec<BigInt>> = idx.iter().map(|&i| pts[i].clone()).collect();
    affine_rank(&sel)
}

fn contact(pts: &[Vec<BigInt>], normal: &[BigInt], offset: &BigInt) -> Vec<usize> {
    (0..pts.len()).filter(|&i| &dot(normal, &pts[i]) == offset).collect()
}

/// Turns `g + μ·φ` into a primitive integer inequality through `anchor`, where
/// `μ` is the least value keeping every point on the nonpositive side. Here
/// `φ = normal·y - offset <= 0` is the current supporting functional and
/// `g = u·(y - anchor)` vanishes on the current contact set.
fn tilt(
    pts: &[Vec<BigInt>],
    normal: &[BigInt],
    offset: &BigInt,
    u: &[BigInt],
    anchor: &[BigInt],
) -> (Vec<BigInt>, BigInt) {
    let mut best: Option<Rat> = None;
    for q in pts {
        let phi = dot(normal, q) - offset;
        if phi.is_zero() {
            continue;
        }
        let g = dot(u, &sub(q, anchor));
        let r = Rat::new(g, -phi);
        if best.as_ref().map_or(true, |b| r > *b) {
            best = Some(r);
        }
    }
    let mu = best.expect("tilting needs a point off the supporting hyperplane");
    let w: Vec<BigInt> = u
        .iter()
        .zip(normal)
        .map(|(a, b)| a * mu.denom() + b * mu.numer())
        .collect();
    let w = primitive(&w);
    let off = dot(&w, anchor);
    (w, off)
}

fn initial_facet(pts: &[Vec<BigInt>]) -> Facet {
    let d = pts[0].len();
    let mut normal = vec![BigInt::zero(); d];
    normal[0] = BigInt::from(1);
    let mut offset = pts.iter().map(|p| p[0].clone()).max().unwrap();
    loop {
        let on = contact(pts, &normal, &offset);
        if affine_rank_of(pts, &on) + 1 == d {
            return Facet { normal, offset, points: on };
        }
        let anchor = pts[on[0]].clone();
        let mut rows: Vec<Vec<BigInt>> = on[1..].iter().map(|&i| sub(&pts[i], &anchor)).collect();
        rows.push(normal.clone());
        let u = kernel_basis(&rows, d).swap_remove(0);
        (normal, offset) = tilt(pts, &normal, &offset, &u, &anchor);
    }
}

fn ridges(pts: &[Vec<BigInt>], facet: &Facet) -> Vec<Vec<usize>> {
    let d = pts[0].len();
    let on = &facet.points;
    if on.len() == d {
        return (0..d)
            .map(|skip| on.iter().enumerate().filter(|&(j, _)| j != skip).map(|(_, &i)| i).collect())
            .collect();
    }
    let sub_pts: Vec<Vec<BigInt>> = on.iter().map(|&i| pts[i].clone()).collect();
    let frame = AffineLatticeFrame::of_points(&sub_pts);
    let sub_coords: Vec<Vec<BigInt>> =
        sub_pts.iter().map(|p| frame.coords(p).expect("point in its own frame")).collect();
    full_hull(&sub_coords)
        .into_iter()
        .map(|r| r.points.iter().map(|&j| on[j]).collect())
        .collect()
}

fn across(pts: &[Vec<BigInt>], facet: &Facet, ridge: &[usize]) -> Facet {
    let d = pts[0].len();
    let anchor = pts[ridge[0]].clone();
    let mut rows: Vec<Vec<BigInt>> = ridge[1..].iter().map(|&i| sub(&pts[i], &anchor)).collect();
    rows.push(facet.normal.clone());
    let mut u = kernel_basis(&rows, d).swap_remove(0);
    let off_ridge = facet
        .points
        .iter()
        .find(|i| !ridge.contains(i))
        .expect("ridge is a proper face of its facet");
    if dot(&u, &sub(&pts[*off_ridge], &anchor)).is_positive() {
        u.iter_mut().for_each(|x| *x = -x.clone());
    }
    let (normal, offset) = tilt(pts, &facet.normal, &facet.offset, &u, &anchor);
    let points = contact(pts, &normal, &offset);
    Facet { normal, offset, points }
}

/// Facets of a full-dimensional configuration of distinct points in Z^d,
/// d >= 1, by gift wrapping.
pub(crate) fn full_hull(pts: &[Vec<BigInt>]) -> Vec<Facet> {
    let d = pts[0].len();
    if d == 1 {
        let lo = pts.iter().map(|p| p[0].clone()).min().unwrap();
        let hi = pts.iter().map(|p| p[0].clone()).max().unwrap();
        return vec![
            Facet { normal: vec![BigInt::from(-1)], offset: -&lo, points: contact(pts, &[BigInt::from(1)], &lo) },
            Facet { normal: vec![BigInt::from(1)], offset: hi.clone(), points: contact(pts, &[BigInt::from(1)], &hi) },
        ];
    }
    if pts.len() == d + 1 {
        return (0..=d)
            .map(|skip| {
                let on: Vec<usize> = (0..=d).filter(|&i| i != skip).collect();
                let anchor = &pts[on[0]];
                let rows: Vec<Vec<BigInt>> = on[1..].iter().map(|&i| sub(&pts[i], anchor)).collect();
                let mut normal = kernel_basis(&rows, d).swap_remove(0);
                if dot(&normal, &sub(&pts[skip], anchor)).is_positive() {
                    normal.iter_mut().for_each(|x| *x = -x.clone());
                }
                let offset = dot(&normal, anchor);
                Facet { normal, offset, points: on }
            })
            .collect();
    }
    let mut facets = vec![initial_facet(pts)];
    let mut seen: HashMap<Vec<BigInt>, usize> = HashMap::new();
    seen.insert(facets[0].normal.clone(), 0);
    let mut next = 0;
    while next < facets.len() {
        let facet = facets[next].clone();
        for ridge in ridges(pts, &facet) {
            let nb = across(pts, &facet, &ridge);
            if !seen.contains_key(&nb.normal) {
                seen.insert(nb.normal.clone(), facets.len());
                facets.push(nb);
            }
        }
        next += 1;
    }
    facets
}

/// A lattice polytope given as the convex hull of a point configuration.
/// Non-vertex points are kept so that faces can be reported as point sets;
/// [`convex_hull`] drops them.
#[derive(Clone, Debug)]
pub struct LatticePolytope {
    points: Vec<Vec<BigInt>>,
    frame: AffineLatticeFrame,
    coords: Vec<Vec<BigInt>>,
    facets: Vec<Facet>,
}

impl LatticePolytope {
    /// Hull of `points`. Repeated points are dropped, keeping the first
    /// occurrence, so indices refer to [`points`](Self::points).
    pub fn from_points(points: &[Vec<BigInt>]) -> Result<Self, PolytopeError> {
        let first = points.first().ok_or(PolytopeError::Empty)?;
        let n = first.len();
        let mut seen = BTreeSet::new();
        let mut pts = Vec::new();
        for p in points {
            if p.len() != n {
                return Err(PolytopeError::DimensionMismatch { expected: n, found: p.len() });
            }
            if seen.insert(p.clone()) {
                pts.push(p.clone());
            }
        }
        let frame = AffineLatticeFrame::of_points(&pts);
        let coords: Vec<Vec<BigInt>> = pts.iter().map(|p| frame.coords(p).expect("own frame")).collect();
        let facets = if frame.dim() == 0 { Vec::new() } else { full_hull(&coords) };
        Ok(LatticePolytope { points: pts, frame, coords, facets })
    }

    pub fn ambient_dim(&self) -> usize {
        self.frame.ambient_dim()
    }

    pub fn dim(&self) -> usize {
        self.frame.dim()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim() == self.ambient_dim()
    }

    pub fn points(&self) -> &[Vec<BigInt>] {
        &self.points
    }

    /// Points in the coordinates of [`frame`](Self::frame).
    pub fn coords(&self) -> &[Vec<BigInt>] {
        &self.coords
    }

    /// Saturated affine lattice spanned by the polytope.
    pub fn frame(&self) -> &AffineLatticeFrame {
        &self.frame
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// Indices of the extreme points.
    pub fn vertices(&self) -> Vec<usize> {
        if self.dim() == 0 {
            return vec![0];
        }
        (0..self.points.len())
            .filter(|&i| {
                let mut meet: Option<Vec<usize>> = None;
                for f in self.facets.iter().filter(|f| f.points.contains(&i)) {
                    meet = Some(match meet {
                        None => f.points.clone(),
                        Some(m) => intersect(&m, &f.points),
                    });
                }
                meet.is_some_and(|m| m.len() == 1)
            })
            .collect()
    }

    pub fn vertex_points(&self) -> Vec<Vec<BigInt>> {
        self.vertices().into_iter().map(|i| self.points[i].clone()).collect()
    }

    /// All nonempty faces including the polytope itself, sorted by dimension.
    pub fn faces(&self) -> Vec<Face> {
        let all: Vec<usize> = (0..self.points.len()).collect();
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        found.insert(all.clone());
        let mut queue: Vec<Vec<usize>> = Vec::new();
        for f in &self.facets {
            if found.insert(f.points.clone()) {
                queue.push(f.points.clone());
            }
        }
        let mut next = 0;
        while next < queue.len() {
            let cur = queue[next].clone();
            for f in &self.facets {
                let m = intersect(&cur, &f.points);
                if !m.is_empty() && found.insert(m.clone()) {
                    queue.push(m);
                }
            }
            next += 1;
        }
        let mut faces: Vec<Face> = found
            .into_iter()
            .map(|points| Face { dim: affine_rank_of(&self.coords, &points), points })
            .collect();
        faces.sort();
        faces
    }

    /// Point set of the smallest face containing all of `idx`.
    pub fn carrier(&self, idx: &[usize]) -> Vec<usize> {
        let mut face: Vec<usize> = (0..self.points.len()).collect();
        for f in &self.facets {
            if idx.iter().all(|i| f.points.contains(i)) {
                face = intersect(&face, &f.points);
            }
        }
        face
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        match self.frame.coords(x) {
            Some(y) => self.facets.iter().all(|f| dot(&f.normal, &y) <= f.offset),
            None => false,
        }
    }

    /// Membership in the relative interior.
    pub fn contains_in_interior(&self, x: &[BigInt]) -> bool {
        match self.frame.coords(x) {
            Some(y) => self.facets.iter().all(|f| dot(&f.normal, &y) < f.offset),
            None => false,
        }
    }

    /// Reduces the configuration to the vertices.
    pub fn hull_reduced(&self) -> Self {
        let verts = self.vertices();
        let mut map = vec![usize::MAX; self.points.len()];
        for (k, &v) in verts.iter().enumerate() {
            map[v] = k;
        }
        let facets = self
            .facets
            .iter()
            .map(|f| Facet {
                normal: f.normal.clone(),
                offset: f.offset.clone(),
                points: f.points.iter().filter(|&&i| map[i] != usize::MAX).map(|&i| map[i]).collect(),
            })
            .collect();
        LatticePolytope {
            points: verts.iter().map(|&i| self.points[i].clone()).collect(),
            frame: self.frame.clone(),
            coords: verts.iter().map(|&i| self.coords[i].clone()).collect(),
            facets,
        }
    }

    /// Points of the configuration that lie on the face, as ambient vectors.
    pub fn face_points(&self, face: &[usize]) -> Vec<Vec<BigInt>> {
        face.iter().map(|&i| self.points[i].clone()).collect()
    }
}

pub(crate) fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().copied().filter(|x| b.binary_search(x).is_ok()).collect()
}

/// Vertex-reduced hull of a nonempty point set.
pub fn convex_hull(points: &[Vec<BigInt>]) -> Result<LatticePolytope, PolytopeError> {
    Ok(LatticePolytope::from_points(points)?.hull_reduced())
}

pub fn minkowski_sum(p: &LatticePolytope, q: &LatticePolytope) -> Result<LatticePolytope, PolytopeError> {
    if p.ambient_dim() != q.ambient_dim() {
        return Err(PolytopeError::DimensionMismatch { expected: p.ambient_dim(), found: q.ambient_dim() });
    }
    let pv = p.vertex_points();
    let qv = q.vertex_points();
    let sums: Vec<Vec<BigInt>> = pv.iter().flat_map(|a| qv.iter().map(move |b| exact_math::add(a, b))).collect();
    convex_hull(&sums)
}
