use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{pow, Zero};

use crate::exact_math::{binomial, factorial, ipow};

fn alt(sign_odd: bool, x: BigInt) -> BigInt {
    if sign_odd {
        -x
    } else {
        x
    }
}

/// `q^l` with `0^0 = 1`.
fn power(q: i64, l: usize) -> BigInt {
    pow(BigInt::from(q), l)
}

/// Stirling number of the second kind.
pub fn stirling2(i: usize, j: usize) -> BigInt {
    let mut s = BigInt::zero();
    for t in 0..=j {
        s += alt((j - t) % 2 == 1, binomial(j as u64, t as u64) * power(t as i64, i));
    }
    let (q, r) = s.div_rem(&factorial(j as u64));
    debug_assert!(r.is_zero());
    q
}

/// Coefficient of `a_l` in the mixed signature of a hypersurface with
/// `n`-dimensional Newton polytope.
pub fn s_coefficient(l: usize, n: usize) -> BigInt {
    let mut s = BigInt::zero();
    for i in 0..=n {
        for p in 0..=i {
            s += alt(p % 2 == 1, binomial(n as u64 + 1, (i - p) as u64) * power(p as i64, l));
        }
    }
    alt(n % 2 == 1, s)
}

/// Coefficient of `a_l` in the Euler characteristic of a real T-hypersurface.
pub fn c_coefficient(l: usize, n: usize) -> BigInt {
    let mut c = BigInt::zero();
    for k in 1..=n {
        let mut inner = BigInt::zero();
        for t in 0..=k + 1 {
            inner += alt(t % 2 == 1, binomial(k as u64 + 1, t as u64) * power(t as i64, l + 1));
        }
        let (q, r) = inner.div_rem(&BigInt::from(k + 1));
        assert!(r.is_zero(), "inner sum divisible by k+1");
        c += (ipow(2, n as u32) - ipow(2, (n - k) as u32)) * q;
    }
    alt((n - l) % 2 == 1, c)
}

/// `S_{l,n}` and `C_{l,n}` for `0 <= l <= n <= N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientTable {
    pub max_n: usize,
    s: Vec<Vec<BigInt>>,
    c: Vec<Vec<BigInt>>,
}

impl CoefficientTable {
    pub fn s(&self, l: usize, n: usize) -> &BigInt {
        &self.s[n][l]
    }

    pub fn c(&self, l: usize, n: usize) -> &BigInt {
        &self.c[n][l]
    }

    /// `S_{0,n}..S_{n,n}`.
    pub fn s_row(&self, n: usize) -> &[BigInt] {
        &self.s[n]
    }

    pub fn c_row(&self, n: usize) -> &[BigInt] {
        &self.c[n]
    }
}

pub fn coefficient_table(max_n: usize) -> CoefficientTable {
    let s = (0..=max_n).map(|n| (0..=n).map(|l| s_coefficient(l, n)).collect()).collect();
    let c = (0..=max_n).map(|n| (0..=n).map(|l| c_coefficient(l, n)).collect()).collect();
    CoefficientTable { max_n, s, c }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IdentityReport {
    pub max_n: usize,
    /// Alternating binomial power sums vanish below the degree.
    pub vanishing_sums: bool,
    pub binomial_tail: bool,
    /// `S_{l,n+1} = -2 S_{l,n}` (l >= 1), `C_{l,n+1} = -2 C_{l,n}`, `S_{0,n} = (-2)^n`.
    pub recurrences: bool,
    /// `S_{n,n} = C_{n,n}`.
    pub diagonal: bool,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl IdentityReport {
    pub fn all_pass(&self) -> bool {
        self.vanishing_sums && self.binomial_tail && self.recurrences && self.diagonal
    }
}

/// Checks the coefficient identities for every index up to `max_n`.
pub fn identity_suite(max_n: usize) -> IdentityReport {
    let mut rep = IdentityReport { max_n, vanishing_sums: true, binomial_tail: true, recurrences: true, diagonal: true, ..Default::default() };
    let n = max_n as i64;

    for i in 0..=max_n {
        for l in 0..i {
            let mut a = BigInt::zero();
            let mut b = BigInt::zero();
            for q in 0..=i {
                let c = binomial(i as u64, q as u64);
                a += alt(q % 2 == 1, &c * power(q as i64, l));
                b += alt(q % 2 == 1, &c * power((i - q) as i64, l));
            }
            rep.checks += 2;
            if !a.is_zero() || !b.is_zero() {
                rep.vanishing_sums = false;
                rep.failures.push(format!("vanishing sum i={i} l={l}"));
            }
            for p in -n..=n {
                let mut s = BigInt::zero();
                for q in 0..=i {
                    s += alt(q % 2 == 1, binomial(i as u64, q as u64) * power(p - q as i64, l));
                }
                rep.checks += 1;
                if !s.is_zero() {
                    rep.vanishing_sums = false;
                    rep.failures.push(format!("shifted vanishing sum i={i} l={l} p={p}"));
                }
            }
        }
    }

    for p in 0..=max_n as u64 {
        for k in 0..=p {
            let lhs: BigInt = (0..=p).map(|t| ipow(2, (p - t) as u32) * binomial(t, k)).sum();
            let rhs: BigInt = (k + 1..=p + 1).map(|l| binomial(p + 1, l)).sum();
            rep.checks += 1;
            if lhs != rhs {
                rep.binomial_tail = false;
                rep.failures.push(format!("binomial tail p={p} k={k}"));
            }
        }
    }

    let table = coefficient_table(max_n);
    let minus_two = BigInt::from(-2);
    for m in 0..=max_n {
        rep.checks += 1;
        if *table.s(0, m) != ipow(-2, m as u32) {
            rep.recurrences = false;
            rep.failures.push(format!("S_(0,{m})"));
        }
        if m == max_n {
            continue;
        }
        for l in 0..=m {
            rep.checks += 1;
            if l >= 1 && *table.s(l, m + 1) != &minus_two * table.s(l, m) {
                rep.recurrences = false;
                rep.failures.push(format!("S recurrence l={l} n={m}"));
            }
            if *table.c(l, m + 1) != &minus_two * table.c(l, m) {
                rep.recurrences = false;
                rep.failures.push(format!("C recurrence l={l} n={m}"));
            }
        }
    }
    for m in 1..=max_n {
        rep.checks += 1;
        if table.s(m, m) != table.c(m, m) {
            rep.diagonal = false;
            rep.failures.push(format!("diagonal n={m}"));
        }
    }
    rep
}
