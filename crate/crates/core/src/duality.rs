//! Beta-duals of the weighted-mean spaces and the dual norm.
//!
//! For a sequence `a`, the matrix `C = C(a)` has entries
//! `c_nk = R_k sum_{j=k}^{n} (-1)^(j-k) H_{j-k} a_j / q_j` for `k <= n`. It
//! turns the pairing with `x` into a pairing with `tau(x)`:
//! `sum_{k<=n} a_k x_k = sum_{k<=n} c_nk tau_k(x)`.

use crate::conditions;
use crate::config::TruncationConfig;
use crate::error::{Error, Result};
use crate::matrix::MatrixSpec;
use crate::scalar::Scalar;
use crate::sequence::{SequenceSpec, Support};
use crate::space::Space;
use crate::stabilize;
use crate::verdict::ConditionVerdict;
use crate::weighted_mean;
use crate::weights::WeightPair;

pub fn c_entry<T: Scalar>(w: &WeightPair<T>, a: &SequenceSpec<T>, n: usize, k: usize) -> Result<T> {
    if k > n {
        return Ok(T::zero());
    }
    let Some(hi) = a.support().clamp(n) else {
        return Ok(T::zero());
    };
    let mut acc = T::zero();
    for j in k..=hi {
        let aj = a.eval(j);
        if aj.is_zero() {
            continue;
        }
        acc += w.signed_h(j - k)? * aj / w.q(j)?;
    }
    Ok(acc * w.r(k)?)
}

/// The matrix `C(a)`, evaluated row by row.
#[derive(Clone, Copy, Debug)]
pub struct DualConditionMatrix<'a, T> {
    pub weights: &'a WeightPair<T>,
    pub a: &'a SequenceSpec<T>,
}

impl<'a, T: Scalar> DualConditionMatrix<'a, T> {
    pub fn new(weights: &'a WeightPair<T>, a: &'a SequenceSpec<T>) -> Self {
        DualConditionMatrix { weights, a }
    }

    pub fn entry(&self, n: usize, k: usize) -> Result<T> {
        c_entry(self.weights, self.a, n, k)
    }

    /// Calls `visit(n, row_n)` for `n = 0..=depth`, where `row_n` holds
    /// `c_n0..=c_nn`. Row `n` differs from row `n-1` by
    /// `R_k (-1)^(n-k) H_{n-k} a_n / q_n` in column `k`, so each row costs `O(n)`.
    pub fn for_each_row(&self, depth: usize, mut visit: impl FnMut(usize, &[T])) -> Result<()> {
        let w = self.weights;
        let mut row: Vec<T> = Vec::with_capacity(depth + 1);
        let mut r: Vec<T> = Vec::with_capacity(depth + 1);
        for n in 0..=depth {
            row.push(T::zero());
            let an = self.a.eval(n);
            if !an.is_zero() {
                while r.len() <= n {
                    r.push(w.r(r.len())?);
                }
                let f = an / w.q(n)?;
                for (k, c) in row.iter_mut().enumerate() {
                    *c += r[k].clone() * w.signed_h(n - k)? * f.clone();
                }
            }
            visit(n, &row);
        }
        Ok(())
    }

    /// Rows `0..=depth`, each padded with zeros to `depth + 1` columns.
    pub fn table(&self, depth: usize) -> Result<Vec<Vec<T>>> {
        let mut out = Vec::with_capacity(depth + 1);
        self.for_each_row(depth, |_, row| {
            let mut full = row.to_vec();
            full.resize(depth + 1, T::zero());
            out.push(full);
        })?;
        Ok(out)
    }

    /// `sum_k |c_nk|` for `n = 0..=depth`. Rows stop changing once `a` has
    /// no more support, so the tail is filled in without recomputation.
    pub fn abs_row_sums(&self, depth: usize) -> Result<Vec<T>> {
        let stop = match self.a.support() {
            Support::Empty => return Ok(vec![T::zero(); depth + 1]),
            Support::UpTo(b) => b.min(depth),
            Support::Unbounded => depth,
        };
        let mut out = Vec::with_capacity(depth + 1);
        self.for_each_row(stop, |_, row| {
            out.push(row.iter().fold(T::zero(), |acc, c| acc + c.abs()));
        })?;
        let last = out.last().cloned().expect("at least one row");
        out.resize(depth + 1, last);
        Ok(out)
    }
}

/// `||a||* = sup_n sum_{k<=n} |c_nk|`, over `n <= M`.
pub fn dual_norm<T: Scalar>(
    w: &WeightPair<T>,
    a: &SequenceSpec<T>,
    cfg: &TruncationConfig<T>,
) -> Result<ConditionVerdict<T>> {
    let sums = DualConditionMatrix::new(w, a).abs_row_sums(cfg.depth)?;
    let probe = stabilize::sup_probe(&sums, cfg.settled(), &cfg.tol);
    let verdict = if probe.stabilized {
        ConditionVerdict::holds("dual_norm", cfg)
    } else {
        ConditionVerdict::inconclusive("dual_norm", cfg).with_diagnostic(format!(
            "row sums of C still rising after n = {}; maximum at n = {}",
            cfg.settled(),
            probe.argmax
        ))
    };
    Ok(verdict.with_evidence(probe.value).with_trace(sums))
}

/// A sequence of weighted-mean norm at most 1 on which `a` attains the
/// absolute row sum of `C(a)` at row `n`.
#[derive(Clone, Debug, PartialEq)]
pub struct Attainment<T> {
    /// `sign(c_nk)` for `k <= n`; this is `tau(x)` on `0..=n`.
    pub signs: Vec<T>,
    /// `x_0..=x_n`, the only coordinates `a` sees.
    pub x: SequenceSpec<T>,
    /// `|sum_k a_k x_k|`.
    pub value: T,
    /// `sum_{k<=n} |c_nk|`.
    pub row_abs_sum: T,
    /// `max_k |tau_k(x)|` over `k <= n`.
    pub x_norm: T,
}

pub fn attainment_witness<T: Scalar>(w: &WeightPair<T>, a: &SequenceSpec<T>, n: usize) -> Result<Attainment<T>> {
    if let Some(b) = a.support().clamp(usize::MAX) {
        if b > n {
            return Err(Error::Precondition(format!(
                "a must vanish beyond index {n}, but its support reaches {}",
                match a.support() {
                    Support::UpTo(b) => b.to_string(),
                    _ => "infinity".into(),
                }
            )));
        }
    }
    let c = DualConditionMatrix::new(w, a);
    let mut row = Vec::new();
    c.for_each_row(n, |i, r| {
        if i == n {
            row = r.to_vec();
        }
    })?;
    let signs: Vec<T> = row.iter().map(Scalar::sign).collect();
    let x = weighted_mean::inverse_prefix(w, &SequenceSpec::literal(signs.clone()), n + 1)?;
    let pairing = x
        .iter()
        .enumerate()
        .fold(T::zero(), |acc, (k, xk)| acc + a.eval(k) * xk.clone());
    let x_norm = signs
        .iter()
        .fold(T::zero(), |m, s| if s.abs() > m { s.abs() } else { m });
    Ok(Attainment {
        row_abs_sum: row.iter().fold(T::zero(), |acc, v| acc + v.abs()),
        value: pairing.abs(),
        x: SequenceSpec::literal(x),
        signs,
        x_norm,
    })
}

fn require_sequence_space(from: Space, to: Space) -> Result<()> {
    if from.is_weighted_domain() {
        return Err(Error::UnsupportedPair {
            from,
            to,
            reason: "the Toeplitz-type lemmas take c0, c or linf as domain",
        });
    }
    Ok(())
}

/// Membership of `A` in `(c0, c)`, `(c, c)` or `(linf, c)`.
///
/// * `(c0, c)`: bounded absolute row sums and column limits;
/// * `(c, c)`: adds a limit of the row sums;
/// * `(linf, c)`: column limits, and the limit of the absolute row sums
///   equals the sum of the absolute column limits.
pub fn toeplitz_check<T: Scalar>(
    a: &MatrixSpec<T>,
    from: Space,
    cfg: &TruncationConfig<T>,
) -> Result<ConditionVerdict<T>> {
    require_sequence_space(from, Space::C)?;
    let rows = a.block(cfg.depth, cfg.depth);
    Ok(toeplitz_on_table(&format!("toeplitz({from},c)"), &rows, from, cfg))
}

/// The Toeplitz-type conditions on an explicit table.
pub(crate) fn toeplitz_on_table<T: Scalar>(
    name: &str,
    rows: &[Vec<T>],
    from: Space,
    cfg: &TruncationConfig<T>,
) -> ConditionVerdict<T> {
    let columns = conditions::columns_converge("columns_converge", rows, cfg);
    let parts = match from {
        Space::C0 => vec![
            conditions::bounded_abs_row_sums("abs_row_sums_bounded", rows, cfg),
            columns,
        ],
        Space::C => vec![
            conditions::bounded_abs_row_sums("abs_row_sums_bounded", rows, cfg),
            columns,
            conditions::row_sums_converge("row_sums_converge", rows, cfg),
        ],
        _ => vec![
            columns,
            conditions::abs_sum_interchange("abs_sum_interchange", rows, cfg),
        ],
    };
    ConditionVerdict::all(name, parts, cfg)
}

/// Whether `a` lies in the beta-dual of `N0`, `N` or `Ninf`, i.e. whether
/// `sum a_k x_k` converges for every `x` in the space.
///
/// The conditions are the Toeplitz-type lemmas applied to `C(a)`:
/// bounded absolute row sums, column limits, a limit of the row sums, and
/// the interchange of limit and absolute sum.
pub fn beta_dual_membership<T: Scalar>(
    w: &WeightPair<T>,
    a: &SequenceSpec<T>,
    space: Space,
    cfg: &TruncationConfig<T>,
) -> Result<ConditionVerdict<T>> {
    let from = match space {
        Space::N0 => Space::C0,
        Space::N => Space::C,
        Space::Ninf => Space::Linf,
        other => {
            return Err(Error::UnsupportedPair {
                from: other,
                to: other,
                reason: "beta-duals are computed for N0, N and Ninf",
            })
        }
    };
    let rows = DualConditionMatrix::new(w, a).table(cfg.depth)?;
    Ok(toeplitz_on_table(&format!("beta_dual({space})"), &rows, from, cfg))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rational, Rational};
    use crate::verdict::Status;

    fn r(n: i64) -> Rational {
        rational(n, 1)
    }

    fn cfg() -> TruncationConfig<Rational> {
        TruncationConfig::new(20, 4, r(0)).unwrap()
    }

    #[test]
    fn c_entries_cesaro() {
        let w = WeightPair::<Rational>::cesaro();
        for n in 0..6 {
            assert_eq!(c_entry(&w, &SequenceSpec::Unit(0), n, 0).unwrap(), r(1));
            for k in 1..6 {
                assert_eq!(c_entry(&w, &SequenceSpec::Unit(0), n, k).unwrap(), r(0));
            }
        }
        for n in 1..6 {
            assert_eq!(c_entry(&w, &SequenceSpec::Unit(1), n, 0).unwrap(), r(-1));
            assert_eq!(c_entry(&w, &SequenceSpec::Unit(1), n, 1).unwrap(), r(2));
        }
    }

    #[test]
    fn incremental_rows_match_entries() {
        let w = WeightPair::new(
            SequenceSpec::literal(vec![r(2), rational(1, 2), r(3)]),
            SequenceSpec::Geometric(rational(3, 2)),
        );
        let a = SequenceSpec::literal(vec![r(1), r(-2), rational(1, 3), r(0), r(5)]);
        let table = DualConditionMatrix::new(&w, &a).table(7).unwrap();
        for n in 0..=7 {
            for k in 0..=7 {
                assert_eq!(table[n][k], c_entry(&w, &a, n, k).unwrap(), "({n},{k})");
            }
        }
    }

    #[test]
    fn dual_norm_examples() {
        let w = WeightPair::<Rational>::cesaro();
        let v = dual_norm(&w, &SequenceSpec::Unit(0), &cfg()).unwrap();
        assert_eq!((v.status, v.evidence), (Status::Holds, Some(r(1))));
        let v = dual_norm(&w, &SequenceSpec::Unit(1), &cfg()).unwrap();
        assert_eq!((v.status, v.evidence), (Status::Holds, Some(r(3))));
        let v = dual_norm(&w, &SequenceSpec::zero(), &cfg()).unwrap();
        assert_eq!((v.status, v.evidence), (Status::Holds, Some(r(0))));
    }

    #[test]
    fn attainment_examples() {
        let w = WeightPair::<Rational>::cesaro();
        let at = attainment_witness(&w, &SequenceSpec::Unit(1), 1).unwrap();
        assert_eq!(at.signs, vec![r(-1), r(1)]);
        assert_eq!(at.value, r(3));
        assert_eq!(at.row_abs_sum, r(3));
        let at = attainment_witness(&w, &SequenceSpec::Unit(0), 0).unwrap();
        assert_eq!((at.signs, at.value), (vec![r(1)], r(1)));
        let at = attainment_witness(&w, &SequenceSpec::zero(), 3).unwrap();
        assert_eq!(at.value, r(0));
        assert!(matches!(
            attainment_witness(&w, &SequenceSpec::Unit(4), 3),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn toeplitz_examples() {
        let c = cfg();
        let v = toeplitz_check(&MatrixSpec::<Rational>::Identity, Space::C0, &c).unwrap();
        assert_eq!(v.status, Status::Holds);
        let lower = MatrixSpec::LowerToeplitz {
            diagonals: SequenceSpec::ones(),
        };
        let v = toeplitz_check(&lower, Space::C0, &c).unwrap();
        assert_eq!(v.status, Status::Fails);
        assert_eq!(v.condition("abs_row_sums_bounded").unwrap().status, Status::Fails);
        assert_eq!(v.witness.unwrap().index, vec![20]);
        for from in [Space::C0, Space::C, Space::Linf] {
            let v = toeplitz_check(&MatrixSpec::<Rational>::Zero, from, &c).unwrap();
            assert_eq!(v.status, Status::Holds, "{from}");
        }
        assert!(toeplitz_check(&MatrixSpec::<Rational>::Zero, Space::N, &c).is_err());
    }

    #[test]
    fn beta_dual_examples() {
        let w = WeightPair::<Rational>::cesaro();
        let c = cfg();
        let v = beta_dual_membership(&w, &SequenceSpec::Unit(0), Space::N0, &c).unwrap();
        assert_eq!(v.status, Status::Holds);
        for s in [Space::N0, Space::N, Space::Ninf] {
            let v = beta_dual_membership(&w, &SequenceSpec::zero(), s, &c).unwrap();
            assert_eq!(v.status, Status::Holds);
        }
        let v = beta_dual_membership(&w, &SequenceSpec::Geometric(r(2)), Space::N0, &c).unwrap();
        assert_eq!(v.status, Status::Fails);
        assert_eq!(v.condition("abs_row_sums_bounded").unwrap().status, Status::Fails);
        let v = beta_dual_membership(&w, &SequenceSpec::Unit(0), Space::Ninf, &c).unwrap();
        assert!(v.condition("abs_row_sums_bounded").is_none());
        assert!(v.condition("abs_sum_interchange").is_some());
    }
}
