use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::coefficients::{c_coefficient, s_coefficient, stirling2};
use super::InvariantError;
use crate::cayley::{admissible_collections, face_system, TropicalSystem};
use crate::exact_math::{binomial, factorial, ipow, rat_int, saturation, sub, to_integer, Rat};
use crate::polytope::{ehrhart, psi_coefficients, EhrhartPolynomial, LatticePolytope};
use crate::tropical::{Term, TropicalPolynomial};

fn integer(quantity: &'static str, x: Rat) -> Result<BigInt, InvariantError> {
    to_integer(&x).ok_or_else(|| InvariantError::NonInteger { quantity, value: x.to_string() })
}

/// `σ̃ = -(-2)^n + Σ S_{l,n} a_l` for an `n`-dimensional Newton polytope
/// with Ehrhart coefficients `a`.
pub fn sigma_hypersurface(a: &EhrhartPolynomial) -> Result<BigInt, InvariantError> {
    let n = a.degree();
    let mut s = -rat_int(ipow(-2, n as u32));
    for (l, al) in a.coefficients.iter().enumerate() {
        s += al * rat_int(s_coefficient(l, n));
    }
    integer("mixed signature", s)
}

/// `χ = Σ C_{l,n} a_l`.
pub fn euler_formula_hypersurface(a: &EhrhartPolynomial) -> Result<BigInt, InvariantError> {
    let n = a.degree();
    let mut s = Rat::zero();
    for (l, al) in a.coefficients.iter().enumerate() {
        s += al * rat_int(c_coefficient(l, n));
    }
    integer("Euler characteristic", s)
}

/// `nb_k = Σ_{l>=k} k! S_2(l+1,k+1) (-1)^(n-l) a_l` for `k = 0..=n`.
pub fn nb_k_formula(a: &EhrhartPolynomial) -> Result<Vec<BigInt>, InvariantError> {
    let n = a.degree();
    (0..=n)
        .map(|k| {
            let mut s = Rat::zero();
            for l in k..=n {
                let c = factorial(k as u64) * stirling2(l + 1, k + 1);
                let term = &a.coefficients[l] * rat_int(c);
                if (n - l) % 2 == 1 {
                    s -= term;
                } else {
                    s += term;
                }
            }
            let v = integer("interior simplex count", s)?;
            if v.is_negative() {
                return Err(InvariantError::NegativeCount { k, value: v.to_string() });
            }
            Ok(v)
        })
        .collect()
}

/// Polynomial in `u` with rational coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiPolynomial {
    pub coefficients: Vec<Rat>,
}

impl PhiPolynomial {
    pub fn eval(&self, u: &Rat) -> Rat {
        self.coefficients.iter().rev().fold(Rat::zero(), |acc, c| acc * u + c)
    }
}

/// `φ(u) = [(u-1)^n + (-1)^(n+1) Σ ψ_i u^i] / u`.
pub fn phi_polynomial(a: &EhrhartPolynomial) -> Result<PhiPolynomial, InvariantError> {
    let n = a.degree();
    let psi = psi_coefficients(a);
    let mut num: Vec<BigInt> = (0..=n)
        .map(|i| {
            let c = binomial(n as u64, i as u64);
            if (n - i) % 2 == 1 {
                -c
            } else {
                c
            }
        })
        .collect();
    for (i, p) in psi.iter().enumerate() {
        if n % 2 == 0 {
            num[i] -= p;
        } else {
            num[i] += p;
        }
    }
    if !num[0].is_zero() {
        return Err(InvariantError::Remainder(num[0].to_string()));
    }
    Ok(PhiPolynomial { coefficients: num[1..].iter().map(|c| rat_int(c.clone())).collect() })
}

/// Mixed signature of the hypersurface with Newton polytope `conv(points)`
/// in the torus `(C*)^m`: the polytope is measured in the lattice of its own
/// affine hull and each missing dimension contributes a factor
/// `σ̃(C*) = -2`.
fn sigma_of_points(points: &[Vec<BigInt>]) -> Result<BigInt, InvariantError> {
    let m = points[0].len();
    let q = LatticePolytope::from_points(points)?;
    let local = LatticePolytope::from_points(q.coords())?;
    let s = if local.dim() == 0 {
        // a monomial has no zeros in the torus
        BigInt::zero()
    } else {
        sigma_hypersurface(&ehrhart(&local)?)?
    };
    Ok(s * ipow(-2, (m - q.dim()) as u32))
}

fn check_polytopes(polytopes: &[Vec<Vec<BigInt>>], n: usize) -> Result<(), InvariantError> {
    if polytopes.is_empty() || polytopes.iter().any(|p| p.is_empty()) {
        return Err(InvariantError::Empty);
    }
    let dirs: Vec<Vec<BigInt>> = polytopes.iter().flat_map(|p| p[1..].iter().map(move |q| sub(q, &p[0]))).collect();
    let dim = saturation(&dirs, n).len();
    if dim != n {
        return Err(InvariantError::NotFullDimensional { dim, ambient: n });
    }
    Ok(())
}

/// `σ̃(X_I)` for every nonempty `I`, with `X_I` the hypersurface
/// `Σ_{i∈I} y_i f_i(x) = 1` in `(C*)^(n+|I|)`.
pub fn sigma_complete_intersection_terms(
    polytopes: &[Vec<Vec<BigInt>>],
    n: usize,
) -> Result<Vec<(Vec<usize>, BigInt)>, InvariantError> {
    check_polytopes(polytopes, n)?;
    let k = polytopes.len();
    let mut out = Vec::new();
    for mask in 1u64..(1u64 << k) {
        let subset: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).collect();
        let m = n + subset.len();
        let mut pts = vec![vec![BigInt::zero(); m]];
        for (j, &i) in subset.iter().enumerate() {
            for w in &polytopes[i] {
                let mut p = w.clone();
                p.extend((0..subset.len()).map(|r| BigInt::from((r == j) as i64)));
                pts.push(p);
            }
        }
        out.push((subset, sigma_of_points(&pts)?));
    }
    Ok(out)
}

/// `σ̃(Y) = (-2)^n + (-1)^k Σ_{I ≠ ∅} σ̃(X_I)` for the complete intersection
/// in `(C*)^n` with Newton polytopes `Δ_1..Δ_k`.
pub fn sigma_complete_intersection(polytopes: &[Vec<Vec<BigInt>>], n: usize) -> Result<BigInt, InvariantError> {
    let terms = sigma_complete_intersection_terms(polytopes, n)?;
    let sum: BigInt = terms.into_iter().map(|(_, s)| s).sum();
    let k = polytopes.len();
    Ok(ipow(-2, n as u32) + if k % 2 == 1 { -sum } else { sum })
}

/// Sum over the faces `Γ = Γ_1 + .. + Γ_k` of `Δ` of the torus values of the
/// truncated complete intersections, each in the lattice of its face.
pub fn sigma_compactified(polytopes: &[Vec<Vec<BigInt>>], n: usize) -> Result<BigInt, InvariantError> {
    check_polytopes(polytopes, n)?;
    let polys = polytopes
        .iter()
        .map(|p| {
            let mut pts = p.clone();
            pts.sort();
            pts.dedup();
            let terms = pts.into_iter().map(|w| Term { exponent: w, lift: Rat::zero(), sign: None }).collect();
            TropicalPolynomial::new(n, terms)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let sys = TropicalSystem::new(n, polys)?;
    let k = sys.len();
    let mut total = BigInt::zero();
    for adm in admissible_collections(&sys) {
        if !adm.is_full(k) || adm.faces.iter().any(|f| f.len() == 1) {
            continue;
        }
        let fs = face_system(&sys, &adm)?;
        total += sigma_complete_intersection(&fs.supports(), fs.ambient_dim())?;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_math::{ivec, rat};

    fn simplex(n: usize, d: i64) -> Vec<Vec<BigInt>> {
        let mut pts = vec![vec![BigInt::zero(); n]];
        for i in 0..n {
            let mut e = vec![BigInt::zero(); n];
            e[i] = BigInt::from(d);
            pts.push(e);
        }
        pts
    }

    fn ehr(pts: &[Vec<BigInt>]) -> EhrhartPolynomial {
        ehrhart(&LatticePolytope::from_points(pts).unwrap()).unwrap()
    }

    #[test]
    fn hypersurface_values() {
        let tri = EhrhartPolynomial { coefficients: vec![rat(1, 1), rat(3, 2), rat(1, 2)] };
        assert_eq!(sigma_hypersurface(&tri).unwrap(), BigInt::from(-3));
        assert_eq!(euler_formula_hypersurface(&tri).unwrap(), BigInt::from(-3));
        assert_eq!(nb_k_formula(&tri).unwrap(), ivec(&[0, 0, 1]));
        let a = ehr(&simplex(2, 3));
        assert_eq!(euler_formula_hypersurface(&a).unwrap(), BigInt::from(-9));
        assert_eq!(nb_k_formula(&a).unwrap(), ivec(&[1, 9, 9]));
        let sq = EhrhartPolynomial { coefficients: vec![rat(1, 1), rat(2, 1), rat(1, 1)] };
        assert_eq!(nb_k_formula(&sq).unwrap(), ivec(&[0, 1, 2]));
        assert_eq!(sigma_hypersurface(&sq).unwrap(), BigInt::from(-4));
        let a = ehr(&simplex(3, 4));
        assert_eq!(sigma_hypersurface(&a).unwrap(), BigInt::from(8));
        assert_eq!(euler_formula_hypersurface(&a).unwrap(), BigInt::from(8));
    }

    #[test]
    fn phi_of_triangle() {
        let tri = EhrhartPolynomial { coefficients: vec![rat(1, 1), rat(3, 2), rat(1, 2)] };
        let phi = phi_polynomial(&tri).unwrap();
        assert_eq!(phi.coefficients, vec![rat(-2, 1), rat(1, 1)]);
        assert_eq!(phi.eval(&rat(-1, 1)), rat(-3, 1));
    }

    #[test]
    fn complete_intersection_values() {
        let tri = simplex(2, 1);
        assert_eq!(sigma_complete_intersection(&[tri.clone()], 2).unwrap(), BigInt::from(-3));
        assert_eq!(sigma_complete_intersection(&[tri.clone(), tri.clone()], 2).unwrap(), BigInt::from(1));
        assert_eq!(sigma_complete_intersection(&[tri.clone(), simplex(2, 2)], 2).unwrap(), BigInt::from(2));
        let seg = vec![ivec(&[0, 0]), ivec(&[1, 0])];
        assert!(matches!(
            sigma_complete_intersection(&[seg], 2),
            Err(InvariantError::NotFullDimensional { dim: 1, ambient: 2 })
        ));
    }

    #[test]
    fn compactified_values() {
        assert_eq!(sigma_compactified(&[simplex(2, 1)], 2).unwrap(), BigInt::zero());
        assert_eq!(sigma_compactified(&[simplex(3, 3)], 3).unwrap(), BigInt::from(-5));
    }
}
