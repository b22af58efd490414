//! Machine-readable results.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use super::schema::format_rational;
use crate::exact_math::Rat;

#[derive(Clone, Debug, Serialize)]
pub struct ResultEnvelope {
    pub command: String,
    /// SHA-256 of the raw input bytes, hex encoded.
    pub input_digest: Option<String>,
    pub input: Option<Value>,
    pub outputs: Value,
    pub verdicts: BTreeMap<String, bool>,
}

impl ResultEnvelope {
    pub fn passed(&self) -> bool {
        self.verdicts.values().all(|&v| v)
    }
}

pub fn digest(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

const SAFE: i64 = 1 << 53;

/// JSON integer when it fits in 53 bits, decimal string otherwise.
pub fn int(x: &BigInt) -> Value {
    match i64::try_from(x) {
        Ok(v) if -SAFE < v && v < SAFE => json!(v),
        _ => json!(x.to_string()),
    }
}

pub fn ints(xs: &[BigInt]) -> Value {
    Value::Array(xs.iter().map(int).collect())
}

pub fn rational(x: &Rat) -> Value {
    json!(format_rational(x))
}

pub fn rationals(xs: &[Rat]) -> Value {
    Value::Array(xs.iter().map(rational).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_encoding() {
        assert_eq!(int(&BigInt::from(-3)), json!(-3));
        assert_eq!(int(&(BigInt::from(1) << 60)), json!("1152921504606846976"));
        assert_eq!(rational(&Rat::new(6.into(), 4.into())), json!("3/2"));
        assert_eq!(digest(b"").len(), 64);
    }
}
