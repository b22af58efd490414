use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{LatticePolytope, PolytopeError};
use crate::exact_math::{binomial, dot, rat_int, scale, solve_rational, Rat};

/// Coefficients `a_0..a_n` of the Ehrhart polynomial, `a_l` multiplying `λ^l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EhrhartPolynomial {
    pub coefficients: Vec<Rat>,
}

impl EhrhartPolynomial {
    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn eval(&self, lambda: u64) -> Rat {
        let x = rat_int(lambda);
        self.coefficients
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * &x + c)
    }
}

/// Lattice points of the polytope, enumerated over the bounding box in frame
/// coordinates and filtered by the facet inequalities.
pub fn lattice_points(p: &LatticePolytope) -> Vec<Vec<BigInt>> {
    enumerate(p, false)
}

fn enumerate(p: &LatticePolytope, interior: bool) -> Vec<Vec<BigInt>> {
    let d = p.dim();
    if d == 0 {
        // a point is its own relative interior
        return vec![p.points()[0].clone()];
    }
    let coords = p.coords();
    let lo: Vec<BigInt> = (0..d).map(|j| coords.iter().map(|c| c[j].clone()).min().unwrap()).collect();
    let hi: Vec<BigInt> = (0..d).map(|j| coords.iter().map(|c| c[j].clone()).max().unwrap()).collect();
    let mut out = Vec::new();
    let mut y = lo.clone();
    loop {
        let inside = p.facets().iter().all(|f| {
            let v = dot(&f.normal, &y);
            if interior {
                v < f.offset
            } else {
                v <= f.offset
            }
        });
        if inside {
            out.push(p.frame().point(&y));
        }
        let mut j = 0;
        loop {
            if j == d {
                return out;
            }
            if y[j] < hi[j] {
                y[j] += 1;
                break;
            }
            y[j] = lo[j].clone();
            j += 1;
        }
    }
}

fn dilate(p: &LatticePolytope, lambda: u64) -> Option<LatticePolytope> {
    if lambda == 0 {
        return None;
    }
    let l = BigInt::from(lambda);
    let verts: Vec<Vec<BigInt>> = p.vertex_points().iter().map(|v| scale(v, &l)).collect();
    Some(LatticePolytope::from_points(&verts).expect("nonempty"))
}

/// Number of lattice points in `λP`.
pub fn count_dilate(p: &LatticePolytope, lambda: u64) -> BigInt {
    match dilate(p, lambda) {
        None => BigInt::one(),
        Some(q) => BigInt::from(lattice_points(&q).len()),
    }
}

/// Number of lattice points in the relative interior of `λP`, for `λ >= 1`.
pub fn count_interior_dilate(p: &LatticePolytope, lambda: u64) -> BigInt {
    match dilate(p, lambda) {
        None => BigInt::zero(),
        Some(q) => BigInt::from(enumerate(&q, true).len()),
    }
}

/// Ehrhart polynomial of a full-dimensional polytope, by interpolating the
/// counts at `λ = 0..=n`.
pub fn ehrhart(p: &LatticePolytope) -> Result<EhrhartPolynomial, PolytopeError> {
    if !p.is_full_dimensional() {
        return Err(PolytopeError::NotFullDimensional { dim: p.dim(), ambient: p.ambient_dim() });
    }
    let n = p.ambient_dim();
    let rows: Vec<Vec<Rat>> = (0..=n)
        .map(|lambda| (0..=n).map(|l| rat_int(num_traits::pow(BigInt::from(lambda), l))).collect())
        .collect();
    let counts: Vec<Rat> = (0..=n as u64).map(|lambda| Rat::from_integer(count_dilate(p, lambda))).collect();
    let coefficients = solve_rational(&rows, &counts).expect("Vandermonde system is regular");
    Ok(EhrhartPolynomial { coefficients })
}

/// `ψ_0..ψ_n`, the numerator coefficients of the cone series
/// `S(t) = Σ_λ Ehr(λ) t^λ · (1 - t)^(n+1)`.
pub fn psi_coefficients(a: &EhrhartPolynomial) -> Vec<BigInt> {
    let n = a.degree();
    (0..=n)
        .map(|i| {
            let mut psi = Rat::zero();
            for (l, al) in a.coefficients.iter().enumerate() {
                let mut inner = BigInt::zero();
                for p in 0..=i {
                    let term = binomial(n as u64 + 1, (i - p) as u64) * num_traits::pow(BigInt::from(p), l);
                    if (i - p) % 2 == 1 {
                        inner -= term;
                    } else {
                        inner += term;
                    }
                }
                psi += al * Rat::from_integer(inner);
            }
            crate::exact_math::to_integer(&psi).expect("ψ coefficients are integers")
        })
        .collect()
}

/// Multiplies a truncated series by `(1 - t)^k`, keeping the same length.
fn times_one_minus_t(series: &[BigInt], k: usize) -> Vec<BigInt> {
    let mut s = series.to_vec();
    for _ in 0..k {
        for i in (1..s.len()).rev() {
            let prev = s[i - 1].clone();
            s[i] -= prev;
        }
    }
    s
}

/// Checks the cone series numerator against brute-force dilate counts up to
/// degree `depth`, and the reciprocity `S(t) = t^(n+1) T(1/t)` against
/// brute-force interior counts.
pub fn cone_series_check(p: &LatticePolytope, depth: usize) -> Result<bool, PolytopeError> {
    let a = ehrhart(p)?;
    let n = p.ambient_dim();
    let psi = psi_coefficients(&a);
    let counts: Vec<BigInt> = (0..=depth as u64).map(|l| count_dilate(p, l)).collect();
    let interior: Vec<BigInt> = (0..=depth as u64).map(|l| count_interior_dilate(p, l)).collect();
    let s = times_one_minus_t(&counts, n + 1);
    let t = times_one_minus_t(&interior, n + 1);
    let psi_at = |i: usize| psi.get(i).cloned().unwrap_or_else(BigInt::zero);
    let series_ok = (0..=depth).all(|i| s[i] == psi_at(i));
    let dual_ok = (0..=depth).all(|j| {
        let expected = if j <= n + 1 { psi_at(n + 1 - j) } else { BigInt::zero() };
        t[j] == expected
    });
    Ok(series_ok && dual_ok)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_math::{ivec, rat};

    fn poly(v: &[&[i64]]) -> LatticePolytope {
        LatticePolytope::from_points(&v.iter().map(|p| ivec(p)).collect::<Vec<_>>()).unwrap()
    }

    fn cube() -> LatticePolytope {
        let mut v = Vec::new();
        for x in 0..2 {
            for y in 0..2 {
                for z in 0..2 {
                    v.push(ivec(&[x, y, z]));
                }
            }
        }
        LatticePolytope::from_points(&v).unwrap()
    }

    #[test]
    fn dilate_counts() {
        let tri = poly(&[&[0, 0], &[1, 0], &[0, 1]]);
        assert_eq!(count_dilate(&tri, 1), BigInt::from(3));
        assert_eq!(count_dilate(&tri, 3), BigInt::from(10));
        assert_eq!(count_dilate(&cube(), 2), BigInt::from(27));
        assert_eq!(count_dilate(&tri, 0), BigInt::from(1));
        assert_eq!(count_interior_dilate(&tri, 3), BigInt::from(1));
    }

    #[test]
    fn ehrhart_examples() {
        let tri = poly(&[&[0, 0], &[1, 0], &[0, 1]]);
        assert_eq!(ehrhart(&tri).unwrap().coefficients, vec![rat(1, 1), rat(3, 2), rat(1, 2)]);
        let tri3 = poly(&[&[0, 0], &[3, 0], &[0, 3]]);
        assert_eq!(ehrhart(&tri3).unwrap().coefficients, vec![rat(1, 1), rat(9, 2), rat(9, 2)]);
        assert_eq!(
            ehrhart(&cube()).unwrap().coefficients,
            vec![rat(1, 1), rat(3, 1), rat(3, 1), rat(1, 1)]
        );
        let flat = poly(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0]]);
        assert!(matches!(ehrhart(&flat), Err(PolytopeError::NotFullDimensional { dim: 2, ambient: 3 })));
    }

    #[test]
    fn psi_examples() {
        let tri = poly(&[&[0, 0], &[1, 0], &[0, 1]]);
        assert_eq!(psi_coefficients(&ehrhart(&tri).unwrap()), ivec(&[1, 0, 0]));
        let tri3 = poly(&[&[0, 0], &[3, 0], &[0, 3]]);
        assert_eq!(psi_coefficients(&ehrhart(&tri3).unwrap()), ivec(&[1, 7, 1]));
        assert_eq!(psi_coefficients(&ehrhart(&cube()).unwrap())[0], BigInt::from(1));
    }

    #[test]
    fn cone_series_examples() {
        let tri = poly(&[&[0, 0], &[1, 0], &[0, 1]]);
        assert!(cone_series_check(&tri, 5).unwrap());
        let sq = poly(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        assert!(cone_series_check(&sq, 5).unwrap());
        let seg = poly(&[&[0], &[2]]);
        assert!(cone_series_check(&seg, 4).unwrap());
    }
}
