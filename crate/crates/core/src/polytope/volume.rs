use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::{convex_hull, LatticePolytope, PolytopeError};
use crate::exact_math::{
    binomial, dot, factorial, rank, saturation, sub, AffineLatticeFrame, IntMatrix, MathError, Rat,
};

/// `k!` times the Euclidean volume of a `k`-dimensional polytope, measured in
/// the saturated lattice of its own affine hull. A point has volume 1.
pub fn normalized_volume(p: &LatticePolytope) -> BigInt {
    volume_of_coords(p.coords(), p)
}

fn volume_of_coords(coords: &[Vec<BigInt>], p: &LatticePolytope) -> BigInt {
    let d = p.dim();
    match d {
        0 => return BigInt::from(1),
        1 => {
            let lo = coords.iter().map(|c| &c[0]).min().unwrap();
            let hi = coords.iter().map(|c| &c[0]).max().unwrap();
            return hi - lo;
        }
        _ => {}
    }
    let verts = p.vertices();
    if verts.len() == d + 1 {
        let rows: Vec<Vec<BigInt>> = verts[1..].iter().map(|&v| sub(&coords[v], &coords[verts[0]])).collect();
        let m = IntMatrix::from_rows(&rows, d).expect("square simplex matrix");
        return m.determinant().expect("square").abs();
    }
    // pyramids from the first vertex over the facets avoiding it
    let apex = verts[0];
    let mut total = BigInt::zero();
    for f in p.facets() {
        if f.points.contains(&apex) {
            continue;
        }
        let height = &f.offset - dot(&f.normal, &coords[apex]);
        let facet = LatticePolytope::from_points(&p.face_points(&f.points)).expect("nonempty facet");
        total += height * normalized_volume(&facet);
    }
    total
}

/// Mixed volume `MV(P_1,..,P_m; t)`: the coefficient of `λ^t` in
/// `Vol(λ_1 P_1 + .. + λ_m P_m)` times `t_1!..t_m!`, with volume taken in the
/// reference lattice.
///
/// Without a reference lattice the saturation of the edge directions is used
/// and `ℓ = Σ t_i`; a smaller span gives zero. A supplied lattice basis must
/// have rank `Σ t_i` and contain all edge directions.
pub fn mixed_volume(
    polytopes: &[Vec<Vec<BigInt>>],
    multiplicities: &[usize],
    lattice: Option<&[Vec<BigInt>]>,
) -> Result<Rat, PolytopeError> {
    if polytopes.len() != multiplicities.len() {
        return Err(PolytopeError::DimensionMismatch { expected: polytopes.len(), found: multiplicities.len() });
    }
    let ell: usize = multiplicities.iter().sum();
    let n = polytopes
        .iter()
        .find_map(|p| p.first().map(|x| x.len()))
        .ok_or(PolytopeError::Empty)?;
    let mut edges = Vec::new();
    for (p, &t) in polytopes.iter().zip(multiplicities) {
        let first = p.first().ok_or(PolytopeError::Empty)?;
        if t == 0 {
            continue;
        }
        for q in p {
            if q.len() != n {
                return Err(PolytopeError::DimensionMismatch { expected: n, found: q.len() });
            }
            edges.push(sub(q, first));
        }
    }
    let span = rank(&edges);
    let basis: Vec<Vec<BigInt>> = match lattice {
        Some(b) => {
            if b.len() != ell || rank(b) != ell {
                return Err(PolytopeError::MultiplicityMismatch { sum: ell, rank: rank(b) });
            }
            b.to_vec()
        }
        None => {
            if span > ell {
                return Err(PolytopeError::MultiplicityMismatch { sum: ell, rank: span });
            }
            saturation(&edges, n)
        }
    };
    let frame = AffineLatticeFrame::new(vec![BigInt::zero(); n], basis);
    if let Some(e) = edges.iter().find(|e| frame.vector_coords(e).is_none()) {
        return Err(MathError::NotInLattice(e.clone()).into());
    }
    if span < ell {
        return Ok(Rat::zero());
    }
    let mut local: Vec<Vec<Vec<BigInt>>> = Vec::new();
    for (p, &t) in polytopes.iter().zip(multiplicities) {
        if t == 0 {
            local.push(vec![vec![BigInt::zero(); ell]]);
            continue;
        }
        let first = &p[0];
        let mut pts = Vec::new();
        for q in p {
            pts.push(frame.vector_coords(&sub(q, first)).expect("edge checked above"));
        }
        local.push(convex_hull(&pts)?.vertex_points());
    }

    // finite differences of λ ↦ vol(Σ λ_i P_i) over the box 0..=t
    let mut total = BigInt::zero();
    let mut s = vec![0usize; multiplicities.len()];
    loop {
        let size: usize = s.iter().sum();
        let mut sum = vec![vec![BigInt::zero(); ell]];
        for (pi, &si) in local.iter().zip(&s) {
            for _ in 0..si {
                let next: Vec<Vec<BigInt>> =
                    sum.iter().flat_map(|a| pi.iter().map(move |b| crate::exact_math::add(a, b))).collect();
                sum = convex_hull(&next)?.vertex_points();
            }
        }
        let q = LatticePolytope::from_points(&sum)?;
        if q.dim() == ell {
            let mut term = normalized_volume(&q);
            for (&ti, &si) in multiplicities.iter().zip(&s) {
                term *= binomial(ti as u64, si as u64);
            }
            if (ell - size) % 2 == 1 {
                term = -term;
            }
            total += term;
        }
        // next grid point
        let mut i = 0;
        loop {
            if i == s.len() {
                return Ok(Rat::new(total, factorial(ell as u64)));
            }
            if s[i] < multiplicities[i] {
                s[i] += 1;
                break;
            }
            s[i] = 0;
            i += 1;
        }
    }
}
