//! JSON encodings shared by the file formats and the CLI reports.
//!
//! Numbers are written as decimal strings (`"-3"`, `"7/2"`) so that nothing
//! is ever routed through a float.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::congruence::{CharZeroLift, CongruenceModule, DiscOutcome, LiftResult};
use crate::error::{Error, Result};
use crate::linalg::{IntMatrix, Matrix, RatMatrix};

/// Parses `"n"` or `"p/q"` (whitespace around the parts is not allowed).
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::InvalidInput(format!("'{s}' is not an integer or a fraction p/q"));
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a, Some(b)),
        None => (s, None),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = match den {
        Some(d) => d.parse().map_err(|_| bad())?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(Error::InvalidInput(format!("'{s}' has zero denominator")));
    }
    Ok(BigRational::new(num, den))
}

pub fn rational_string(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn rational_json(x: &BigRational) -> Value {
    Value::String(rational_string(x))
}

pub fn int_json(x: &BigInt) -> Value {
    Value::String(x.to_string())
}

pub fn ints_json(xs: &[BigInt]) -> Value {
    Value::Array(xs.iter().map(int_json).collect())
}

/// Coefficients, lowest degree first.
pub fn poly_json(coeffs: &[BigRational]) -> Value {
    Value::Array(coeffs.iter().map(rational_json).collect())
}

pub fn int_matrix_json(m: &IntMatrix) -> Value {
    Value::Array(m.to_rows().iter().map(|r| ints_json(r)).collect())
}

pub fn rat_matrix_json(m: &RatMatrix) -> Value {
    Value::Array(m.to_rows().iter().map(|r| Value::Array(r.iter().map(rational_json).collect())).collect())
}

pub fn module_json(c: &CongruenceModule) -> Value {
    json!({
        "elementary_divisors": ints_json(&c.elementary_divisors),
        "order": int_json(&c.order),
        "support": ints_json(&c.support),
    })
}

pub fn disc_outcome_json(d: &DiscOutcome) -> Value {
    match d {
        DiscOutcome::Decided { valuation_positive, module_nontrivial_at_p } => json!({
            "outcome": "decided",
            "valuation_positive": valuation_positive,
            "module_nontrivial_at_p": module_nontrivial_at_p,
        }),
        DiscOutcome::Excluded { obstruction_primes } => json!({
            "outcome": "excluded",
            "obstruction_primes": ints_json(obstruction_primes),
        }),
    }
}

pub fn lift_json(r: &LiftResult) -> Value {
    let lift = match &r.lift {
        CharZeroLift::Rational { component, values } => json!({
            "kind": "rational",
            "component": component,
            "values": values.iter().map(rational_json).collect::<Vec<_>>(),
        }),
        CharZeroLift::Orbit { component, min_polys } => json!({
            "kind": "orbit",
            "component": component,
            "min_polys": min_polys.iter().map(|g| poly_json(g)).collect::<Vec<_>>(),
        }),
    };
    json!({ "residual": r.residual.to_string(), "lift": lift })
}

/// Compact serialization with object keys in sorted order.
pub fn canonical_json(v: &Value) -> String {
    // serde_json's map is a BTreeMap here, so key order is already sorted
    serde_json::to_string(v).expect("a Value always serializes")
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// A rational number in a file: a JSON integer or a decimal string.
/// JSON floats are rejected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Num(pub BigRational);

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&rational_string(&self.0))
    }
}

struct NumVisitor;

impl Visitor<'_> for NumVisitor {
    type Value = Num;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an integer or a string \"n\" / \"p/q\"")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Num, E> {
        Ok(Num(BigRational::from_integer(v.into())))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Num, E> {
        Ok(Num(BigRational::from_integer(v.into())))
    }

    fn visit_f64<E: de::Error>(self, _: f64) -> std::result::Result<Num, E> {
        Err(E::custom("floats forbidden"))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Num, E> {
        parse_rational(v).map(Num).map_err(E::custom)
    }
}

impl<'de> Deserialize<'de> for Num {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Num, D::Error> {
        d.deserialize_any(NumVisitor)
    }
}

pub type NumRows = Vec<Vec<Num>>;

pub fn rows_from_rat(m: &RatMatrix) -> NumRows {
    m.to_rows().into_iter().map(|r| r.into_iter().map(Num).collect()).collect()
}

pub fn rows_from_int(m: &IntMatrix) -> NumRows {
    m.to_rows().into_iter().map(|r| r.into_iter().map(|x| Num(BigRational::from_integer(x))).collect()).collect()
}

/// Matrix with `cols` columns; `what` names the field in error messages.
pub fn rat_matrix_from_rows(rows: &NumRows, cols: usize, what: &str) -> Result<RatMatrix> {
    for (i, r) in rows.iter().enumerate() {
        if r.len() != cols {
            return Err(Error::Schema {
                path: format!("{what}[{i}]"),
                message: format!("row has {} entries, expected {cols}", r.len()),
            });
        }
    }
    Matrix::from_rows(rows.iter().map(|r| r.iter().map(|x| x.0.clone()).collect()).collect(), cols)
}

pub fn int_matrix_from_rows(rows: &NumRows, cols: usize, what: &str) -> Result<IntMatrix> {
    let m = rat_matrix_from_rows(rows, cols, what)?;
    m.to_integer().ok_or_else(|| Error::Schema {
        path: what.to_string(),
        message: "entries must be integers".into(),
    })
}

/// Deserializes with path-qualified error messages.
pub fn from_slice_with_path<T: de::DeserializeOwned>(bytes: &[u8]) -> Result<T> {
    let mut de = serde_json::Deserializer::from_slice(bytes);
    let value = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let path = e.path().to_string();
        Error::Schema { path, message: strip_position(e.into_inner().to_string()) }
    })?;
    de.end().map_err(|e| Error::Schema { path: ".".into(), message: strip_position(e.to_string()) })?;
    Ok(value)
}

/// Like [`from_slice_with_path`] for an already parsed document.
pub fn from_value_with_path<T: de::DeserializeOwned>(v: Value) -> Result<T> {
    serde_path_to_error::deserialize(v).map_err(|e| {
        let path = e.path().to_string();
        Error::Schema { path, message: strip_position(e.into_inner().to_string()) }
    })
}

// serde_json appends " at line L column C"; keep only the cause
fn strip_position(message: String) -> String {
    match message.rfind(" at line ") {
        Some(i) => message[..i].to_string(),
        None => message,
    }
}
