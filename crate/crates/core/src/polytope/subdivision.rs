use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use super::hull::full_hull;
use super::{affine_rank, Face, LatticePolytope, PolytopeError};
use crate::exact_math::{sub, IntMatrix, Rat};

/// Regular subdivision of a point configuration induced by the lower hull of
/// the lifted points. Cells are sorted sets of point indices and include every
/// point lying on the corresponding lower face.
#[derive(Clone, Debug)]
pub struct RegularSubdivision {
    points: Vec<Vec<BigInt>>,
    lifts: Vec<Rat>,
    hull: LatticePolytope,
    cells: Vec<Vec<usize>>,
    faces: Vec<Face>,
}

impl RegularSubdivision {
    pub fn points(&self) -> &[Vec<BigInt>] {
        &self.points
    }

    pub fn lifts(&self) -> &[Rat] {
        &self.lifts
    }

    /// Dimension of the convex hull of the configuration.
    pub fn dim(&self) -> usize {
        self.hull.dim()
    }

    /// The whole configuration as a polytope, with the same point indices.
    pub fn hull(&self) -> &LatticePolytope {
        &self.hull
    }

    /// Maximal cells.
    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    /// Every cell of the subdivision (faces of maximal cells), sorted by
    /// dimension and then by point set.
    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    /// Whether the cell lies in the relative boundary of the hull.
    pub fn in_boundary(&self, cell: &[usize]) -> bool {
        self.hull.facets().iter().any(|f| cell.iter().all(|i| f.points.binary_search(i).is_ok()))
    }

    pub fn cell_dim(&self, cell: &[usize]) -> usize {
        let pts: Vec<Vec<BigInt>> = cell.iter().map(|&i| self.hull.coords()[i].clone()).collect();
        affine_rank(&pts)
    }

    /// Normalized volume of a maximal cell in the lattice of the hull.
    pub fn cell_volume(&self, cell: &[usize]) -> BigInt {
        let pts: Vec<Vec<BigInt>> = cell.iter().map(|&i| self.points[i].clone()).collect();
        super::normalized_volume(&LatticePolytope::from_points(&pts).expect("nonempty cell"))
    }
}

fn faces_of_cell(points: &[Vec<BigInt>], cell: &[usize]) -> Vec<Face> {
    let pts: Vec<Vec<BigInt>> = cell.iter().map(|&i| points[i].clone()).collect();
    let dim = affine_rank(&pts);
    if cell.len() == dim + 1 {
        // simplex: every nonempty subset is a face
        let mut out = Vec::new();
        for mask in 1u64..(1u64 << cell.len()) {
            let sel: Vec<usize> = (0..cell.len()).filter(|j| mask >> j & 1 == 1).map(|j| cell[j]).collect();
            out.push(Face { dim: sel.len() - 1, points: sel });
        }
        return out;
    }
    let poly = LatticePolytope::from_points(&pts).expect("nonempty cell");
    poly.faces()
        .into_iter()
        .map(|f| Face { dim: f.dim, points: f.points.iter().map(|&j| cell[j]).collect() })
        .collect()
}

/// Subdivision induced by `lifts` (lower hull convention). Points must be
/// distinct.
pub fn regular_subdivision(points: &[Vec<BigInt>], lifts: &[Rat]) -> Result<RegularSubdivision, PolytopeError> {
    if points.len() != lifts.len() {
        return Err(PolytopeError::LiftCount(lifts.len(), points.len()));
    }
    let hull = LatticePolytope::from_points(points)?;
    if hull.points().len() != points.len() {
        let mut seen = BTreeSet::new();
        let dup = points.iter().find(|p| !seen.insert(p.to_vec())).unwrap();
        return Err(PolytopeError::DuplicatePoint(dup.clone()));
    }
    let d = hull.dim();
    let denom = lifts.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let lifted: Vec<Vec<BigInt>> = hull
        .coords()
        .iter()
        .zip(lifts)
        .map(|(c, h)| {
            let mut v = c.clone();
            v.push(h.numer() * (&denom / h.denom()));
            v
        })
        .collect();
    let cells: Vec<Vec<usize>> = if affine_rank(&lifted) == d {
        vec![(0..points.len()).collect()]
    } else {
        let mut lower: Vec<Vec<usize>> = full_hull(&lifted)
            .into_iter()
            .filter(|f| f.normal[d].is_negative())
            .map(|f| f.points)
            .collect();
        lower.sort();
        lower
    };
    let mut faces: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for c in &cells {
        for f in faces_of_cell(points, c) {
            faces.insert(f.points, f.dim);
        }
    }
    let mut faces: Vec<Face> = faces.into_iter().map(|(points, dim)| Face { dim, points }).collect();
    faces.sort();
    Ok(RegularSubdivision { points: points.to_vec(), lifts: lifts.to_vec(), hull, cells, faces })
}

/// Every maximal cell is a simplex of normalized volume 1 in the lattice of
/// the configuration's affine hull.
pub fn is_primitive_triangulation(sub_div: &RegularSubdivision) -> bool {
    let d = sub_div.dim();
    let coords = sub_div.hull.coords();
    sub_div.cells.iter().all(|c| {
        if c.len() != d + 1 {
            return false;
        }
        let rows: Vec<Vec<BigInt>> = c[1..].iter().map(|&i| sub(&coords[i], &coords[c[0]])).collect();
        let m = IntMatrix::from_rows(&rows, d).expect("square");
        m.determinant().expect("square").abs().is_one()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_math::{ivec, rat};

    fn pts(v: &[&[i64]]) -> Vec<Vec<BigInt>> {
        v.iter().map(|p| ivec(p)).collect()
    }

    fn lifts(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| rat(x, 1)).collect()
    }

    #[test]
    fn trivial_lift_gives_one_cell() {
        let s = regular_subdivision(&pts(&[&[0, 0], &[1, 0], &[0, 1]]), &lifts(&[0, 0, 0])).unwrap();
        assert_eq!(s.cells(), &[vec![0, 1, 2]]);
        assert!(is_primitive_triangulation(&s));
        assert_eq!(s.faces().len(), 7);
    }

    #[test]
    fn square_split_by_diagonal() {
        let s = regular_subdivision(&pts(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]), &lifts(&[0, 0, 0, 1])).unwrap();
        assert_eq!(s.cells(), &[vec![0, 1, 2], vec![1, 2, 3]]);
        assert!(is_primitive_triangulation(&s));
        // 4 vertices, 5 edges, 2 triangles
        assert_eq!(s.faces().len(), 11);
        assert!(!s.in_boundary(&[1, 2]));
        assert!(s.in_boundary(&[0, 1]));
    }

    #[test]
    fn segment_subdivisions() {
        let p = pts(&[&[0], &[1], &[2]]);
        let s = regular_subdivision(&p, &lifts(&[0, 0, 0])).unwrap();
        assert_eq!(s.cells(), &[vec![0, 1, 2]]);
        assert!(!is_primitive_triangulation(&s));
        let s = regular_subdivision(&p, &lifts(&[0, -1, 0])).unwrap();
        assert_eq!(s.cells(), &[vec![0, 1], vec![1, 2]]);
        assert!(is_primitive_triangulation(&s));
        // a point lifted above is left out of every cell
        let s = regular_subdivision(&p, &lifts(&[0, 1, 0])).unwrap();
        assert_eq!(s.cells(), &[vec![0, 2]]);
    }

    #[test]
    fn rational_lifts() {
        let p = pts(&[&[0], &[1], &[2]]);
        let s = regular_subdivision(&p, &[rat(0, 1), rat(-1, 3), rat(1, 2)]).unwrap();
        assert_eq!(s.cells(), &[vec![0, 1], vec![1, 2]]);
    }

    #[test]
    fn non_primitive_tetrahedron() {
        let p = pts(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[1, 1, 2]]);
        let s = regular_subdivision(&p, &lifts(&[0, 0, 0, 0])).unwrap();
        assert_eq!(s.cells().len(), 1);
        assert!(!is_primitive_triangulation(&s));
    }

    #[test]
    fn cells_tile_the_hull() {
        let p = pts(&[&[0, 0], &[1, 0], &[2, 0], &[0, 1], &[1, 1], &[0, 2]]);
        let s = regular_subdivision(&p, &lifts(&[0, 1, 3, 1, 0, 4])).unwrap();
        let total: BigInt = s.cells().iter().map(|c| s.cell_volume(c)).sum();
        assert_eq!(total, BigInt::from(4));
    }

    #[test]
    fn rejects_duplicates() {
        let p = pts(&[&[0], &[0]]);
        assert!(matches!(regular_subdivision(&p, &lifts(&[0, 0])), Err(PolytopeError::DuplicatePoint(_))));
    }
}
