//! Declarative input files.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::CliError;
use crate::cayley::TropicalSystem;
use crate::exact_math::Rat;
use crate::tropical::{Sign, Term, TropicalPolynomial};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub exponent: Vec<i64>,
    /// Valuation of the leading coefficient, as `"p/q"` or `"p"`.
    pub valuation: String,
    pub sign: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolynomialSpec {
    pub terms: Vec<TermSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemFile {
    pub ambient_dim: usize,
    pub polynomials: Vec<PolynomialSpec>,
}

pub fn parse_rational(s: &str) -> Result<Rat, CliError> {
    let bad = || CliError::Validation(format!("invalid rational {s:?}"));
    let (p, q) = match s.trim().split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s.trim(), "1"),
    };
    let p: BigInt = p.parse().map_err(|_| bad())?;
    let q: BigInt = q.parse().map_err(|_| bad())?;
    if q == BigInt::from(0) {
        return Err(bad());
    }
    Ok(Rat::new(p, q))
}

pub fn format_rational(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl SystemFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Validation(format!("malformed system file: {e}")))
    }

    pub fn to_system(&self) -> Result<TropicalSystem, CliError> {
        if self.polynomials.is_empty() {
            return Err(CliError::Validation("no polynomials".into()));
        }
        let mut polys = Vec::new();
        for (i, p) in self.polynomials.iter().enumerate() {
            let mut terms = Vec::new();
            for (j, t) in p.terms.iter().enumerate() {
                let sign = Sign::from_int(t.sign).ok_or_else(|| {
                    CliError::Validation(format!("polynomial {i}, term {j}: sign must be +1 or -1, got {}", t.sign))
                })?;
                terms.push(Term {
                    exponent: t.exponent.iter().map(|&x| BigInt::from(x)).collect(),
                    lift: parse_rational(&t.valuation)?,
                    sign: Some(sign),
                });
            }
            let f = TropicalPolynomial::new(self.ambient_dim, terms)
                .map_err(|e| CliError::Validation(format!("polynomial {i}: {e}")))?;
            polys.push(f);
        }
        TropicalSystem::new(self.ambient_dim, polys).map_err(|e| CliError::Validation(e.to_string()))
    }

    /// Inverse of [`SystemFile::to_system`]; terms without a sign are written
    /// with `+1`.
    pub fn from_system(sys: &TropicalSystem) -> Result<Self, CliError> {
        let polynomials = sys
            .polys()
            .iter()
            .map(|f| {
                let terms = f
                    .terms()
                    .iter()
                    .map(|t| {
                        let exponent = t
                            .exponent
                            .iter()
                            .map(|x| i64::try_from(x).map_err(|_| CliError::Validation(format!("exponent {x} too large"))))
                            .collect::<Result<_, _>>()?;
                        Ok(TermSpec {
                            exponent,
                            valuation: format_rational(&t.lift),
                            sign: t.sign.map_or(1, Sign::to_int),
                        })
                    })
                    .collect::<Result<_, CliError>>()?;
                Ok(PolynomialSpec { terms })
            })
            .collect::<Result<_, CliError>>()?;
        Ok(SystemFile { ambient_dim: sys.ambient_dim(), polynomials })
    }
}
