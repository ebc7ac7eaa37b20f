//! Scalar traits shared by the algebra layer.
//!
//! Polynomials, coordinates and the dense solver are written against
//! [`Scalar`] / [`Field`] so they work with exact rationals as well as with
//! `f32`/`f64`. Everything that compiles or decodes lattices is pinned to
//! [`Rational`](crate::Rational).

use std::fmt::Debug;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{Num, Signed};

/// A signed number usable as a polynomial coefficient or coordinate.
pub trait Scalar: Clone + Debug + PartialEq + Num + Signed + Send + Sync {}

impl<T> Scalar for T where T: Clone + Debug + PartialEq + Num + Signed + Send + Sync {}

/// Scalars with exact (or IEEE) division, required by the linear solver.
///
/// Integer types satisfy [`Scalar`] but not `Field`: their `Div` truncates.
pub trait Field: Scalar {}

impl Field for f32 {}
impl Field for f64 {}
impl<I> Field for Ratio<I> where I: Integer + Signed + Clone + Debug + Send + Sync {}

/// Parse `"p/q"`, `"p"` or `"-p/q"` into an exact rational in lowest terms.
pub fn parse_rational(text: &str) -> Result<BigRational, String> {
    let text = text.trim();
    if text.is_empty() {
        return Err("empty rational".to_string());
    }
    match text.split_once('/') {
        Some((num, den)) => {
            let num = BigInt::from_str(num.trim()).map_err(|e| format!("bad numerator in {text:?}: {e}"))?;
            let den = BigInt::from_str(den.trim()).map_err(|e| format!("bad denominator in {text:?}: {e}"))?;
            if den == BigInt::from(0) {
                return Err(format!("zero denominator in {text:?}"));
            }
            Ok(BigRational::new(num, den))
        }
        None => {
            let num = BigInt::from_str(text).map_err(|e| format!("bad integer {text:?}: {e}"))?;
            Ok(BigRational::from_integer(num))
        }
    }
}

/// `p/q` or `p` when the denominator is one.
pub fn format_rational(value: &BigRational) -> String {
    value.to_string()
}

/// `[a, b, ...]` with each entry as [`format_rational`] prints it.
pub fn format_vector(values: &[BigRational]) -> String {
    let parts: Vec<String> = values.iter().map(format_rational).collect();
    format!("[{}]", parts.join(", "))
}

/// Small integer to rational.
pub fn rational(numer: i64, denom: i64) -> BigRational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Serde adapters storing rationals as `"p/q"` strings.
pub mod serde_rational {
    use num_rational::BigRational;
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::format_rational(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let text = String::deserialize(d)?;
        super::parse_rational(&text).map_err(D::Error::custom)
    }

    pub mod vec {
        use num_rational::BigRational;
        use serde::{de::Error as _, ser::SerializeSeq, Deserialize, Deserializer, Serializer};

        pub fn serialize<S: Serializer>(values: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(values.len()))?;
            for v in values {
                seq.serialize_element(&crate::scalar::format_rational(v))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRational>, D::Error> {
            let texts = Vec::<String>::deserialize(d)?;
            texts
                .iter()
                .map(|t| crate::scalar::parse_rational(t).map_err(D::Error::custom))
                .collect()
        }
    }
}
