use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Affine system over F₂: each row is `(coefficients, rhs)` meaning
/// `Σ c_j x_j = rhs (mod 2)`.
#[derive(Clone, Debug, Default)]
pub struct F2AffineSystem {
    pub vars: usize,
    pub rows: Vec<(Vec<bool>, bool)>,
}

impl F2AffineSystem {
    pub fn new(vars: usize) -> Self {
        F2AffineSystem { vars, rows: Vec::new() }
    }

    /// Adds an equation from integer coefficients, read modulo 2.
    pub fn push_int(&mut self, coeffs: &[BigInt], rhs: bool) {
        let two = BigInt::from(2);
        let c = coeffs.iter().map(|x| !(x % &two).is_zero()).collect();
        self.rows.push((c, rhs));
    }

    pub fn push(&mut self, coeffs: Vec<bool>, rhs: bool) {
        self.rows.push((coeffs, rhs));
    }
}

/// Number of solutions in F₂^n: zero when inconsistent, otherwise
/// `2^(n - rank)`.
pub fn f2_solution_count(sys: &F2AffineSystem) -> BigInt {
    let n = sys.vars;
    let mut rows = sys.rows.clone();
    let mut rank = 0;
    for c in 0..n {
        let Some(p) = (rank..rows.len()).find(|&i| rows[i].0[c]) else {
            continue;
        };
        rows.swap(rank, p);
        let (pc, pr) = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && row.0[c] {
                for j in c..n {
                    row.0[j] ^= pc[j];
                }
                row.1 ^= pr;
            }
        }
        rank += 1;
    }
    if rows[rank..].iter().any(|r| r.1) {
        return BigInt::zero();
    }
    BigInt::one() << (n - rank)
}
