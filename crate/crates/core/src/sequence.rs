//! Lazily evaluated scalar sequences, indexed from 0.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::scalar::{pow, Scalar};

/// What a [`SequenceSpec::Literal`] does past its explicit prefix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Tail {
    #[default]
    Zero,
    RepeatLast,
}

/// A scalar sequence `(x_k)_{k >= 0}` given by a finite description.
///
/// `Constant(1)` is the all-ones sequence `e`, `Unit(i)` is `e^(i)`.
#[derive(Clone, Debug, PartialEq)]
pub enum SequenceSpec<T> {
    Literal {
        values: Vec<T>,
        tail: Tail,
    },
    Constant(T),
    /// `x_k = base^k`.
    Geometric(T),
    /// `x_k = k^exponent`, with `0^0 = 1`.
    Power(u32),
    Unit(usize),
}

/// Where a sequence can be nonzero.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Support {
    Empty,
    /// Zero for every index past this one.
    UpTo(usize),
    Unbounded,
}

impl Support {
    pub fn bound(self) -> Option<usize> {
        match self {
            Support::UpTo(b) => Some(b),
            _ => None,
        }
    }

    pub fn is_finite(self) -> bool {
        !matches!(self, Support::Unbounded)
    }

    /// Highest index worth visiting when summing up to `limit`, or `None`
    /// if nothing in `0..=limit` can be nonzero.
    pub fn clamp(self, limit: usize) -> Option<usize> {
        match self {
            Support::Empty => None,
            Support::UpTo(b) => Some(b.min(limit)),
            Support::Unbounded => Some(limit),
        }
    }
}

impl<T: Scalar> SequenceSpec<T> {
    pub fn zero() -> Self {
        SequenceSpec::Literal {
            values: Vec::new(),
            tail: Tail::Zero,
        }
    }

    /// The all-ones sequence `e`.
    pub fn ones() -> Self {
        SequenceSpec::Constant(T::one())
    }

    pub fn unit(index: usize) -> Self {
        SequenceSpec::Unit(index)
    }

    pub fn literal(values: Vec<T>) -> Self {
        SequenceSpec::Literal {
            values,
            tail: Tail::Zero,
        }
    }

    pub fn eval(&self, k: usize) -> T {
        match self {
            SequenceSpec::Literal { values, tail } => match values.get(k) {
                Some(v) => v.clone(),
                None => match (tail, values.last()) {
                    (Tail::RepeatLast, Some(last)) => last.clone(),
                    _ => T::zero(),
                },
            },
            SequenceSpec::Constant(c) => c.clone(),
            SequenceSpec::Geometric(base) => pow(base, k),
            SequenceSpec::Power(e) => pow(&T::from_usize_exact(k), *e as usize),
            SequenceSpec::Unit(i) => {
                if k == *i {
                    T::one()
                } else {
                    T::zero()
                }
            }
        }
    }

    /// The first `len` terms.
    pub fn prefix(&self, len: usize) -> Vec<T> {
        (0..len).map(|k| self.eval(k)).collect()
    }

    /// The section `x^[m]`: equal to `x` on `0..=m`, zero afterwards.
    pub fn section(&self, m: usize) -> Self {
        let len = match self.support() {
            Support::Empty => 0,
            Support::UpTo(b) => b.min(m) + 1,
            Support::Unbounded => m + 1,
        };
        SequenceSpec::literal(self.prefix(len))
    }

    pub fn support(&self) -> Support {
        match self {
            SequenceSpec::Literal { values, tail } => {
                if *tail == Tail::RepeatLast && values.last().is_some_and(|v| !v.is_zero()) {
                    return Support::Unbounded;
                }
                match values.iter().rposition(|v| !v.is_zero()) {
                    Some(i) => Support::UpTo(i),
                    None => Support::Empty,
                }
            }
            SequenceSpec::Constant(c) => {
                if c.is_zero() {
                    Support::Empty
                } else {
                    Support::Unbounded
                }
            }
            // base^0 = 1 even for base 0
            SequenceSpec::Geometric(base) => {
                if base.is_zero() {
                    Support::UpTo(0)
                } else {
                    Support::Unbounded
                }
            }
            SequenceSpec::Power(_) => Support::Unbounded,
            SequenceSpec::Unit(i) => Support::UpTo(*i),
        }
    }

    pub fn is_identically_zero(&self) -> bool {
        self.support() == Support::Empty
    }

    /// Index from which the sequence is constant, if it is eventually constant.
    pub fn constant_from(&self) -> Option<usize> {
        match self {
            SequenceSpec::Literal { values, tail } => match tail {
                Tail::Zero => Some(values.iter().rposition(|v| !v.is_zero()).map_or(0, |i| i + 1)),
                Tail::RepeatLast => Some(values.len().saturating_sub(1)),
            },
            SequenceSpec::Constant(_) => Some(0),
            SequenceSpec::Geometric(base) => {
                if base.is_zero() {
                    Some(1)
                } else if base.is_one() {
                    Some(0)
                } else {
                    None
                }
            }
            SequenceSpec::Power(0) => Some(0),
            SequenceSpec::Power(_) => None,
            SequenceSpec::Unit(i) => Some(i + 1),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum RawSequence {
    Literal {
        #[serde(deserialize_with = "crate::scalar::serde_scalar::text_vec")]
        values: Vec<String>,
        #[serde(default)]
        tail: Tail,
    },
    Constant {
        #[serde(deserialize_with = "crate::scalar::serde_scalar::text")]
        value: String,
    },
    Geometric {
        #[serde(deserialize_with = "crate::scalar::serde_scalar::text")]
        base: String,
    },
    Power {
        exponent: u32,
    },
    Unit {
        index: usize,
    },
}

fn from_text<T: Scalar, E: serde::de::Error>(v: String) -> Result<T, E> {
    T::parse(&v).map_err(E::custom)
}

impl<T: Scalar> Serialize for SequenceSpec<T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let raw = match self {
            SequenceSpec::Literal { values, tail } => RawSequence::Literal {
                values: values.iter().map(Scalar::render).collect(),
                tail: *tail,
            },
            SequenceSpec::Constant(c) => RawSequence::Constant { value: c.render() },
            SequenceSpec::Geometric(b) => RawSequence::Geometric { base: b.render() },
            SequenceSpec::Power(e) => RawSequence::Power { exponent: *e },
            SequenceSpec::Unit(i) => RawSequence::Unit { index: *i },
        };
        raw.serialize(s)
    }
}

impl<'de, T: Scalar> Deserialize<'de> for SequenceSpec<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(match RawSequence::deserialize(d)? {
            RawSequence::Literal { values, tail } => SequenceSpec::Literal {
                values: values.into_iter().map(from_text).collect::<Result<_, _>>()?,
                tail,
            },
            RawSequence::Constant { value } => SequenceSpec::Constant(from_text(value)?),
            RawSequence::Geometric { base } => SequenceSpec::Geometric(from_text(base)?),
            RawSequence::Power { exponent } => SequenceSpec::Power(exponent),
            RawSequence::Unit { index } => SequenceSpec::Unit(index),
        })
    }
}
