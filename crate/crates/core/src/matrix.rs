//! Infinite matrices described by a row generator.

use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;
use crate::sequence::{SequenceSpec, Support};

/// What a [`MatrixSpec::Rows`] does after its listed rows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RowTail {
    #[default]
    Zero,
    RepeatLast,
}

/// An infinite matrix `A = (a_nk)`; row `n` is the sequence `A_n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", bound = "T: Scalar", deny_unknown_fields)]
pub enum MatrixSpec<T> {
    Zero,
    Identity,
    /// `A_n = row` for every `n`.
    ConstantRows {
        row: SequenceSpec<T>,
    },
    /// Explicit leading rows, then zero rows or copies of the last one.
    Rows {
        rows: Vec<SequenceSpec<T>>,
        #[serde(default)]
        tail: RowTail,
    },
    /// `a_nk = d_{n-k}` for `k <= n`, zero above the diagonal.
    LowerToeplitz {
        diagonals: SequenceSpec<T>,
    },
    /// `a_nn = v_n`, zero elsewhere.
    Diagonal {
        values: SequenceSpec<T>,
    },
}

/// Structural facts about a matrix that are known without evaluating it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Structure {
    /// Lower triangular with nonzero diagonal.
    pub is_triangle: bool,
    /// Rows `n >= after` are all zero.
    pub rows_eventually_zero: Option<usize>,
    pub constant_rows: bool,
}

impl<T: Scalar> MatrixSpec<T> {
    pub fn row(&self, n: usize) -> SequenceSpec<T> {
        match self {
            MatrixSpec::Zero => SequenceSpec::zero(),
            MatrixSpec::Identity => SequenceSpec::Unit(n),
            MatrixSpec::ConstantRows { row } => row.clone(),
            MatrixSpec::Rows { rows, tail } => match rows.get(n) {
                Some(r) => r.clone(),
                None => match (tail, rows.last()) {
                    (RowTail::RepeatLast, Some(r)) => r.clone(),
                    _ => SequenceSpec::zero(),
                },
            },
            MatrixSpec::LowerToeplitz { diagonals } => {
                SequenceSpec::literal((0..=n).map(|k| diagonals.eval(n - k)).collect())
            }
            MatrixSpec::Diagonal { values } => {
                let mut v = vec![T::zero(); n + 1];
                v[n] = values.eval(n);
                SequenceSpec::literal(v)
            }
        }
    }

    pub fn entry(&self, n: usize, k: usize) -> T {
        match self {
            MatrixSpec::Zero => T::zero(),
            MatrixSpec::Identity => {
                if n == k {
                    T::one()
                } else {
                    T::zero()
                }
            }
            MatrixSpec::LowerToeplitz { diagonals } => {
                if k <= n {
                    diagonals.eval(n - k)
                } else {
                    T::zero()
                }
            }
            MatrixSpec::Diagonal { values } => {
                if n == k {
                    values.eval(n)
                } else {
                    T::zero()
                }
            }
            MatrixSpec::ConstantRows { row } => row.eval(k),
            MatrixSpec::Rows { .. } => self.row(n).eval(k),
        }
    }

    /// Support of row `n` without building it.
    pub fn row_support(&self, n: usize) -> Support {
        match self {
            MatrixSpec::Zero => Support::Empty,
            MatrixSpec::Identity => Support::UpTo(n),
            MatrixSpec::LowerToeplitz { .. } => Support::UpTo(n),
            MatrixSpec::Diagonal { values } => {
                if values.eval(n).is_zero() {
                    Support::Empty
                } else {
                    Support::UpTo(n)
                }
            }
            _ => self.row(n).support(),
        }
    }

    /// Rows `0..=depth`, each truncated to columns `0..=width`.
    pub fn block(&self, depth: usize, width: usize) -> Vec<Vec<T>> {
        (0..=depth)
            .map(|n| match self {
                MatrixSpec::Rows { .. } | MatrixSpec::ConstantRows { .. } => self.row(n).prefix(width + 1),
                _ => (0..=width).map(|k| self.entry(n, k)).collect(),
            })
            .collect()
    }

    pub fn structure(&self) -> Structure {
        match self {
            MatrixSpec::Zero => Structure {
                is_triangle: false,
                rows_eventually_zero: Some(0),
                constant_rows: true,
            },
            MatrixSpec::Identity => Structure {
                is_triangle: true,
                rows_eventually_zero: None,
                constant_rows: false,
            },
            MatrixSpec::ConstantRows { row } => Structure {
                is_triangle: false,
                rows_eventually_zero: row.is_identically_zero().then_some(0),
                constant_rows: true,
            },
            MatrixSpec::Rows { rows, tail } => {
                let listed_nonzero = rows.iter().rposition(|r| !r.is_identically_zero()).map_or(0, |i| i + 1);
                let eventually_zero = match tail {
                    RowTail::Zero => Some(listed_nonzero),
                    RowTail::RepeatLast => (listed_nonzero == 0).then_some(0),
                };
                let constant_rows = match tail {
                    RowTail::Zero => listed_nonzero == 0,
                    RowTail::RepeatLast => rows.windows(2).all(|w| w[0] == w[1]),
                };
                Structure {
                    is_triangle: false,
                    rows_eventually_zero: eventually_zero,
                    constant_rows,
                }
            }
            MatrixSpec::LowerToeplitz { diagonals } => Structure {
                is_triangle: !diagonals.eval(0).is_zero(),
                rows_eventually_zero: diagonals.is_identically_zero().then_some(0),
                constant_rows: diagonals.is_identically_zero(),
            },
            MatrixSpec::Diagonal { values } => {
                let nonvanishing = match values {
                    SequenceSpec::Constant(c) | SequenceSpec::Geometric(c) => !c.is_zero(),
                    _ => false,
                };
                Structure {
                    is_triangle: nonvanishing,
                    rows_eventually_zero: match values.support() {
                        Support::Empty => Some(0),
                        Support::UpTo(b) => Some(b + 1),
                        Support::Unbounded => None,
                    },
                    constant_rows: values.is_identically_zero(),
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rational, Rational};

    type M = MatrixSpec<Rational>;

    fn r(n: i64) -> Rational {
        rational(n, 1)
    }

    #[test]
    fn rows_and_entries_agree() {
        let ms = vec![
            M::Identity,
            M::LowerToeplitz {
                diagonals: SequenceSpec::ones(),
            },
            M::Diagonal {
                values: SequenceSpec::Power(2),
            },
            M::ConstantRows {
                row: SequenceSpec::Unit(1),
            },
            M::Rows {
                rows: vec![SequenceSpec::Unit(0), SequenceSpec::ones()],
                tail: RowTail::RepeatLast,
            },
        ];
        for m in &ms {
            for n in 0..6 {
                let row = m.row(n);
                for k in 0..8 {
                    assert_eq!(row.eval(k), m.entry(n, k), "{m:?} ({n},{k})");
                }
            }
        }
    }

    #[test]
    fn structure_flags() {
        assert!(M::Identity.structure().is_triangle);
        assert_eq!(M::Zero.structure().rows_eventually_zero, Some(0));
        let rows = M::Rows {
            rows: vec![
                SequenceSpec::Unit(0),
                SequenceSpec::Unit(1),
                SequenceSpec::literal(vec![r(1), r(1)]),
            ],
            tail: RowTail::Zero,
        };
        assert_eq!(rows.structure().rows_eventually_zero, Some(3));
        assert!(!rows.structure().constant_rows);
        let c = M::ConstantRows {
            row: SequenceSpec::Unit(1),
        };
        assert!(c.structure().constant_rows);
        assert_eq!(c.structure().rows_eventually_zero, None);
        assert!(
            M::LowerToeplitz {
                diagonals: SequenceSpec::ones()
            }
            .structure()
            .is_triangle
        );
    }

    #[test]
    fn json_encoding() {
        let m: M = serde_json::from_str(r#"{"kind":"constant_rows","row":{"kind":"unit","index":1}}"#).unwrap();
        assert_eq!(
            m,
            M::ConstantRows {
                row: SequenceSpec::Unit(1)
            }
        );
        let m: M =
            serde_json::from_str(r#"{"kind":"rows","rows":[{"kind":"literal","values":["1","-1/2"]}]}"#).unwrap();
        assert_eq!(m.entry(0, 1), rational(-1, 2));
        assert_eq!(m.structure().rows_eventually_zero, Some(1));
        let back: M = serde_json::from_str(&serde_json::to_string(&m).unwrap()).unwrap();
        assert_eq!(back, m);
        assert!(serde_json::from_str::<M>(r#"{"kind":"nope"}"#).is_err());
    }
}
