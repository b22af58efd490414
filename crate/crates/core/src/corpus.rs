//! Seeded test inputs: standard polytopes, random polygons, lifts, signs and
//! systems, and a search for lifts inducing primitive triangulations.

use num_bigint::BigInt;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cayley::{is_nondegenerate_system, TropicalSystem};
use crate::exact_math::{rat_int, Rat};
use crate::polytope::{is_primitive_triangulation, lattice_points, regular_subdivision, LatticePolytope};
use crate::tropical::{Sign, Term, TropicalPolynomial};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Lattice points of `d Δ_n`, the origin first.
pub fn dilated_simplex(n: usize, d: i64) -> Vec<Vec<BigInt>> {
    let mut out = Vec::new();
    let mut x = vec![0i64; n];
    loop {
        if x.iter().sum::<i64>() <= d {
            out.push(x.iter().map(|&v| BigInt::from(v)).collect());
        }
        let mut j = 0;
        loop {
            if j == n {
                return out;
            }
            if x[j] < d {
                x[j] += 1;
                break;
            }
            x[j] = 0;
            j += 1;
        }
    }
}

/// Lattice points of `[0,s_1] × .. × [0,s_n]`.
pub fn lattice_box(sides: &[i64]) -> Vec<Vec<BigInt>> {
    let mut out = Vec::new();
    let mut x = vec![0i64; sides.len()];
    loop {
        out.push(x.iter().map(|&v| BigInt::from(v)).collect());
        let mut j = 0;
        loop {
            if j == sides.len() {
                return out;
            }
            if x[j] < sides[j] {
                x[j] += 1;
                break;
            }
            x[j] = 0;
            j += 1;
        }
    }
}

/// All lattice points of the hull of `points`.
pub fn filled(points: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut pts = lattice_points(&LatticePolytope::from_points(points).expect("nonempty"));
    pts.sort();
    pts
}

/// A lattice polygon with exactly `count` lattice points, from hulls of
/// random points in a box.
pub fn random_polygon<R: Rng>(rng: &mut R, count: usize) -> Vec<Vec<BigInt>> {
    loop {
        let m = rng.gen_range(3..=6);
        let pts: Vec<Vec<BigInt>> =
            (0..m).map(|_| vec![BigInt::from(rng.gen_range(0..5i64)), BigInt::from(rng.gen_range(0..5i64))]).collect();
        let p = LatticePolytope::from_points(&pts).expect("nonempty");
        if p.dim() == 2 {
            let all = filled(&pts);
            if all.len() == count {
                return all;
            }
        }
    }
}

pub fn random_signs<R: Rng>(rng: &mut R, count: usize) -> Vec<Sign> {
    (0..count).map(|_| if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus }).collect()
}

pub fn random_lifts<R: Rng>(rng: &mut R, count: usize, range: i64) -> Vec<Rat> {
    (0..count).map(|_| rat_int(rng.gen_range(0..=range))).collect()
}

/// `Σ_{0<=i<j<=n} (y_i - y_j)^2` with `y_0 = 0` and `y_j` the partial sums
/// of `x`. Its lower hull on `d Δ_n` is the alcoved subdivision, whose cells
/// split into unimodular simplices.
fn alcove_form(x: &[BigInt]) -> BigInt {
    let mut y = vec![BigInt::zero()];
    for v in x {
        let next = y.last().unwrap() + v;
        y.push(next);
    }
    let mut s = BigInt::zero();
    for i in 0..y.len() {
        for j in i + 1..y.len() {
            let d = &y[i] - &y[j];
            s += &d * &d;
        }
    }
    s
}

/// Strictly convex lifts with small noise; every point stays a vertex of the
/// lower hull.
pub fn convex_lifts<R: Rng>(rng: &mut R, points: &[Vec<BigInt>], noise: i64) -> Vec<Rat> {
    points
        .iter()
        .map(|p| rat_int(alcove_form(p) * 100 + rng.gen_range(-noise..=noise)))
        .collect()
}

/// Lifts whose regular subdivision is a primitive triangulation, found by
/// perturbing a convex lift and then by purely random lifts.
pub fn primitive_lifts<R: Rng>(rng: &mut R, points: &[Vec<BigInt>], attempts: usize) -> Option<Vec<Rat>> {
    for attempt in 0..attempts {
        let lifts = if attempt < attempts / 2 {
            convex_lifts(rng, points, 10)
        } else {
            random_lifts(rng, points.len(), 1_000)
        };
        let sub_div = regular_subdivision(points, &lifts).ok()?;
        if is_primitive_triangulation(&sub_div) {
            return Some(lifts);
        }
    }
    None
}

pub fn polynomial(points: &[Vec<BigInt>], lifts: &[Rat], signs: Option<&[Sign]>) -> TropicalPolynomial {
    let n = points[0].len();
    let terms = points
        .iter()
        .enumerate()
        .map(|(i, p)| Term { exponent: p.clone(), lift: lifts[i].clone(), sign: signs.map(|s| s[i]) })
        .collect();
    TropicalPolynomial::new(n, terms).expect("distinct exponents")
}

/// A system with the given supports, random small lifts and random signs.
/// Small lift ranges produce ties and hence degenerate systems.
pub fn random_system<R: Rng>(rng: &mut R, supports: &[Vec<Vec<BigInt>>], lift_range: i64) -> TropicalSystem {
    let n = supports[0][0].len();
    let polys = supports
        .iter()
        .map(|s| {
            let lifts = random_lifts(rng, s.len(), lift_range);
            let signs = random_signs(rng, s.len());
            polynomial(s, &lifts, Some(&signs))
        })
        .collect();
    TropicalSystem::new(n, polys).expect("common dimension")
}

/// A nondegenerate system with the given supports: convex lifts per
/// polynomial with independent noise and a random linear tilt, then purely
/// random lifts, retried until the Cayley subdivision is a primitive
/// triangulation.
pub fn nondegenerate_system<R: Rng>(rng: &mut R, supports: &[Vec<Vec<BigInt>>], attempts: usize) -> Option<TropicalSystem> {
    let n = supports[0][0].len();
    for attempt in 0..attempts {
        let polys = supports
            .iter()
            .map(|s| {
                let lifts: Vec<Rat> = if attempt < attempts / 2 {
                    let tilt: Vec<i64> = (0..n).map(|_| rng.gen_range(-50..=50)).collect();
                    s.iter()
                        .map(|p| {
                            let lin: BigInt = p.iter().zip(&tilt).map(|(x, t)| x * t).sum();
                            rat_int(alcove_form(p) * 100 + lin + rng.gen_range(-10..=10))
                        })
                        .collect()
                } else {
                    random_lifts(rng, s.len(), 1_000)
                };
                let signs = random_signs(rng, s.len());
                polynomial(s, &lifts, Some(&signs))
            })
            .collect();
        let sys = TropicalSystem::new(n, polys).ok()?;
        if is_nondegenerate_system(&sys).ok()? {
            return Some(sys);
        }
    }
    None
}

/// The same system with fresh random signs.
pub fn resign<R: Rng>(rng: &mut R, sys: &TropicalSystem) -> TropicalSystem {
    let polys = sys
        .polys()
        .iter()
        .map(|f| polynomial(&f.exponents(), &f.lifts(), Some(&random_signs(rng, f.terms().len()))))
        .collect();
    TropicalSystem::new(sys.ambient_dim(), polys).expect("same shape")
}

/// Small supports for random systems in dimension `n`.
pub fn small_supports<R: Rng>(rng: &mut R, n: usize) -> Vec<Vec<BigInt>> {
    let choices: Vec<Vec<Vec<BigInt>>> = match n {
        1 => vec![dilated_simplex(1, 1), dilated_simplex(1, 2), dilated_simplex(1, 3)],
        2 => vec![
            dilated_simplex(2, 1),
            dilated_simplex(2, 2),
            lattice_box(&[1, 1]),
            lattice_box(&[2, 1]),
            filled(&[vec![BigInt::from(0), BigInt::from(0)], vec![BigInt::from(2), BigInt::from(1)], vec![BigInt::from(1), BigInt::from(2)]]),
        ],
        _ => vec![dilated_simplex(n, 1), lattice_box(&vec![1; n]), dilated_simplex(n, 2)],
    };
    choices.choose(rng).expect("nonempty").clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_shapes() {
        assert_eq!(dilated_simplex(2, 3).len(), 10);
        assert_eq!(dilated_simplex(3, 4).len(), 35);
        assert_eq!(lattice_box(&[2, 1]).len(), 6);
        let mut r = rng(5);
        assert_eq!(random_polygon(&mut r, 10).len(), 10);
    }

    #[test]
    fn primitive_lifts_for_simplices() {
        let mut r = rng(1);
        for d in 1..=3 {
            let pts = dilated_simplex(3, d);
            let lifts = primitive_lifts(&mut r, &pts, 40).expect("certified lift");
            assert!(is_primitive_triangulation(&regular_subdivision(&pts, &lifts).unwrap()));
        }
    }

    #[test]
    fn nondegenerate_pair() {
        let mut r = rng(2);
        let sys = nondegenerate_system(&mut r, &[dilated_simplex(2, 1), dilated_simplex(2, 2)], 50).unwrap();
        assert!(is_nondegenerate_system(&sys).unwrap());
    }
}
