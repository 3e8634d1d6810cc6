//! Numeric scalars.
//!
//! Every computation in the crate is generic over [`Scalar`], which has two
//! implementations: [`Rational`] (arbitrary precision, exact) and `f64`. The
//! mode of a computation is therefore fixed by its type parameter, and mixing
//! exact and float values does not type-check.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, NumAssignRef, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Numeric mode of a computation session.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Exact,
    Float,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Exact => f.write_str("exact"),
            Mode::Float => f.write_str("float"),
        }
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "exact" => Ok(Mode::Exact),
            "float" => Ok(Mode::Float),
            _ => Err(format!("unknown mode {s:?}, expected exact|float")),
        }
    }
}

pub trait Scalar:
    Clone + fmt::Debug + PartialOrd + Signed + NumAssignRef + FromPrimitive + Send + Sync + 'static
{
    const MODE: Mode;

    /// Parses `"3"`, `"-1/3"`, `"0.25"` or `"1e-10"`.
    fn parse(text: &str) -> Result<Self>;

    /// Exact values render as `num/den` (or an integer), floats as the
    /// shortest round-tripping decimal.
    fn render(&self) -> String;

    fn default_tol() -> Self;

    fn to_f64(&self) -> f64;

    fn from_usize_exact(n: usize) -> Self {
        Self::from_usize(n).expect("usize is representable")
    }

    /// `|self - other| <= tol`.
    fn close_to(&self, other: &Self, tol: &Self) -> bool {
        (self.clone() - other.clone()).abs() <= *tol
    }

    /// Sign as a scalar in {-1, 0, 1}.
    fn sign(&self) -> Self {
        if self.is_zero() {
            Self::zero()
        } else {
            self.signum()
        }
    }
}

fn scalar_err(text: &str, reason: impl Into<String>) -> Error {
    Error::Scalar {
        text: text.to_owned(),
        reason: reason.into(),
    }
}

fn parse_decimal_rational(text: &str) -> Result<Rational> {
    let t = text.trim();
    let (mantissa, exponent) = match t.find(['e', 'E']) {
        Some(i) => {
            let e: i64 = t[i + 1..].parse().map_err(|_| scalar_err(text, "bad exponent"))?;
            (&t[..i], e)
        }
        None => (t, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((i, f)) => (i, f),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(scalar_err(text, "no digits"));
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(scalar_err(text, "not a decimal number"));
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut numer: BigInt = if all_digits.is_empty() {
        BigInt::zero()
    } else {
        all_digits.parse().map_err(|_| scalar_err(text, "bad digits"))?
    };
    if negative {
        numer = -numer;
    }
    let scale = exponent - frac_part.len() as i64;
    let ten = BigInt::from(10u32);
    let value = if scale >= 0 {
        Rational::from_integer(numer * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(numer, num_traits::pow(ten, (-scale) as usize))
    };
    Ok(value)
}

impl Scalar for Rational {
    const MODE: Mode = Mode::Exact;

    fn parse(text: &str) -> Result<Self> {
        match text.split_once('/') {
            Some((n, d)) => {
                let n = parse_decimal_rational(n)?;
                let d = parse_decimal_rational(d)?;
                if d.is_zero() {
                    return Err(scalar_err(text, "zero denominator"));
                }
                Ok(n / d)
            }
            None => parse_decimal_rational(text),
        }
    }

    fn render(&self) -> String {
        self.to_string()
    }

    fn default_tol() -> Self {
        Rational::zero()
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    const MODE: Mode = Mode::Float;

    fn parse(text: &str) -> Result<Self> {
        let one = |s: &str| -> Result<f64> { s.trim().parse::<f64>().map_err(|e| scalar_err(text, e.to_string())) };
        let v = match text.split_once('/') {
            Some((n, d)) => {
                let d = one(d)?;
                if d == 0.0 {
                    return Err(scalar_err(text, "zero denominator"));
                }
                one(n)? / d
            }
            None => one(text)?,
        };
        if !v.is_finite() {
            return Err(scalar_err(text, "not finite"));
        }
        Ok(v)
    }

    fn render(&self) -> String {
        format!("{self}")
    }

    fn default_tol() -> Self {
        1e-10
    }

    fn to_f64(&self) -> f64 {
        *self
    }
}

/// Integer power by squaring; `base^0 = 1` for every base.
pub fn pow<T: Scalar>(base: &T, exp: usize) -> T {
    num_traits::pow(base.clone(), exp)
}

pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Serde adapters that move scalars through their textual form. JSON numbers
/// are accepted on input as a convenience.
pub mod serde_scalar {
    use serde::{Deserialize, Deserializer, Serializer};

    use super::Scalar;

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Text {
        Str(String),
        Int(i64),
        Float(f64),
    }

    impl Text {
        fn into_string(self) -> String {
            match self {
                Text::Str(s) => s,
                Text::Int(i) => i.to_string(),
                Text::Float(f) => f.to_string(),
            }
        }

        fn into_scalar<T: Scalar, E: serde::de::Error>(self) -> Result<T, E> {
            T::parse(&self.into_string()).map_err(E::custom)
        }
    }

    /// A scalar's text, not yet parsed.
    pub fn text<'de, D: Deserializer<'de>>(d: D) -> Result<String, D::Error> {
        Ok(Text::deserialize(d)?.into_string())
    }

    pub fn text_vec<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<String>, D::Error> {
        Ok(Vec::<Text>::deserialize(d)?
            .into_iter()
            .map(Text::into_string)
            .collect())
    }

    pub fn serialize<T: Scalar, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.render())
    }

    pub fn deserialize<'de, T: Scalar, D: Deserializer<'de>>(d: D) -> Result<T, D::Error> {
        Text::deserialize(d)?.into_scalar()
    }

    pub mod vec {
        use serde::ser::SerializeSeq;
        use serde::{Deserialize, Deserializer, Serializer};

        use super::{Scalar, Text};

        pub fn serialize<T: Scalar, S: Serializer>(v: &[T], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for x in v {
                seq.serialize_element(&x.render())?;
            }
            seq.end()
        }

        pub fn deserialize<'de, T: Scalar, D: Deserializer<'de>>(d: D) -> Result<Vec<T>, D::Error> {
            Vec::<Text>::deserialize(d)?
                .into_iter()
                .map(Text::into_scalar)
                .collect()
        }
    }

    pub mod option {
        use serde::{Deserialize, Deserializer, Serializer};

        use super::{Scalar, Text};

        pub fn serialize<T: Scalar, S: Serializer>(v: &Option<T>, s: S) -> Result<S::Ok, S::Error> {
            match v {
                Some(x) => s.serialize_some(&x.render()),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, T: Scalar, D: Deserializer<'de>>(d: D) -> Result<Option<T>, D::Error> {
            Option::<Text>::deserialize(d)?.map(Text::into_scalar).transpose()
        }
    }
}
