//! Truncated checks on infinite tables `(u_nk)`: bounded suprema, column
//! limits, row-sum limits and the interchange of limit and absolute sum.
//!
//! A table is given as rows `n = 0..=M`, each a vector over columns
//! `k = 0..=K`. Column limits are judged on columns `k <= M - W` from the
//! last `W` rows, so every judged column has seen at least `W` rows after
//! its diagonal.

use crate::config::TruncationConfig;
use crate::scalar::Scalar;
use crate::stabilize::{self, ZeroLimit};
use crate::verdict::{ConditionVerdict, Witness};

fn column<T: Scalar>(rows: &[Vec<T>], k: usize) -> Vec<T> {
    rows.iter().map(|r| r.get(k).cloned().unwrap_or_else(T::zero)).collect()
}

fn judged_columns<T: Scalar>(rows: &[Vec<T>], cfg: &TruncationConfig<T>) -> usize {
    let width = rows.iter().map(Vec::len).max().unwrap_or(0);
    (cfg.settled() + 1).min(width)
}

pub fn abs_row_sums<T: Scalar>(rows: &[Vec<T>]) -> Vec<T> {
    rows.iter()
        .map(|r| r.iter().fold(T::zero(), |acc, v| acc + v.abs()))
        .collect()
}

pub fn row_sums<T: Scalar>(rows: &[Vec<T>]) -> Vec<T> {
    rows.iter()
        .map(|r| r.iter().fold(T::zero(), |acc, v| acc + v.clone()))
        .collect()
}

/// `sup_n values[n] < infinity` for nonnegative `values`, `n = 0..=M`.
///
/// Fails when the running maximum keeps growing at least linearly, holds when
/// the maximum is reached by `n = M - W`.
pub fn finite_sup<T: Scalar>(name: &str, values: &[T], cfg: &TruncationConfig<T>) -> ConditionVerdict<T> {
    let running = stabilize::running_max(values);
    let probe = stabilize::sup_probe(values, cfg.settled(), &cfg.tol);
    let verdict = if probe.stabilized {
        ConditionVerdict::holds(name, cfg)
    } else if stabilize::diverges(&running, cfg.window, &cfg.tol) {
        let last = values.len() - 1;
        ConditionVerdict::fails(
            name,
            Witness::new(
                vec![last],
                values[last].clone(),
                "supremum still growing linearly at depth",
            ),
            cfg,
        )
    } else {
        ConditionVerdict::inconclusive(name, cfg).with_diagnostic(format!(
            "maximum at n = {} is past n = {}",
            probe.argmax,
            cfg.settled()
        ))
    };
    verdict.with_evidence(probe.value).with_trace(values.to_vec())
}

/// `sup_n sum_k |u_nk| < infinity`.
pub fn bounded_abs_row_sums<T: Scalar>(name: &str, rows: &[Vec<T>], cfg: &TruncationConfig<T>) -> ConditionVerdict<T> {
    finite_sup(name, &abs_row_sums(rows), cfg)
}

/// Supremum of a table `values[n][m]` over rows `n >= first_row`.
///
/// Holds when the maximum over the settled corner `n, m <= M - W` is within
/// `tol` of the maximum over the whole table. Fails when the maxima over
/// growing square corners increase at least linearly. The trace holds the
/// per-row maxima (zero for excluded rows).
pub fn table_sup<T: Scalar>(
    name: &str,
    values: &[Vec<T>],
    first_row: usize,
    cfg: &TruncationConfig<T>,
) -> ConditionVerdict<T> {
    let settled = cfg.settled();
    let row_max = |row: &[T], upto: usize| -> T {
        row.iter()
            .take(upto + 1)
            .fold(T::zero(), |acc, v| if *v > acc { v.clone() } else { acc })
    };
    let per_row: Vec<T> = values
        .iter()
        .enumerate()
        .map(|(n, row)| {
            if n < first_row {
                T::zero()
            } else {
                row_max(row, usize::MAX - 1)
            }
        })
        .collect();
    let (argmax, full) = stabilize::argmax(&per_row);
    let settled_max = values
        .iter()
        .enumerate()
        .skip(first_row)
        .take_while(|(n, _)| *n <= settled)
        .map(|(_, row)| row_max(row, settled))
        .fold(T::zero(), |acc, v| if v > acc { v } else { acc });

    let verdict = if settled_max >= full.clone() - cfg.tol.clone() {
        ConditionVerdict::holds(name, cfg)
    } else {
        let corners: Vec<T> = (first_row.min(values.len() - 1)..values.len())
            .map(|i| {
                values
                    .iter()
                    .enumerate()
                    .skip(first_row)
                    .take_while(|(n, _)| *n <= i)
                    .map(|(_, row)| row_max(row, i))
                    .fold(T::zero(), |acc, v| if v > acc { v } else { acc })
            })
            .collect();
        if stabilize::diverges(&corners, cfg.window, &cfg.tol) {
            let m = stabilize::argmax(&values[argmax]).0;
            ConditionVerdict::fails(
                name,
                Witness::new(
                    vec![argmax, m],
                    full.clone(),
                    "double supremum still growing linearly at depth",
                ),
                cfg,
            )
        } else {
            ConditionVerdict::inconclusive(name, cfg).with_diagnostic(format!(
                "maximum at row {argmax} is not reached inside the settled corner n, m <= {settled}"
            ))
        }
    };
    verdict.with_evidence(full).with_trace(per_row)
}

enum ColumnOutcome<T> {
    Settled(T),
    Fails(Witness<T>),
    Unsettled,
}

fn judge_columns<T: Scalar>(
    name: &str,
    rows: &[Vec<T>],
    cfg: &TruncationConfig<T>,
    judge: impl Fn(usize, &[T]) -> ColumnOutcome<T>,
) -> ConditionVerdict<T> {
    let mut limits = Vec::new();
    let mut unsettled = Vec::new();
    for k in 0..judged_columns(rows, cfg) {
        match judge(k, &column(rows, k)) {
            ColumnOutcome::Settled(l) => limits.push(l),
            ColumnOutcome::Fails(w) => return ConditionVerdict::fails(name, w, cfg).with_trace(limits),
            ColumnOutcome::Unsettled => {
                unsettled.push(k);
                limits.push(rows.last().and_then(|r| r.get(k)).cloned().unwrap_or_else(T::zero));
            }
        }
    }
    let verdict = match unsettled.first() {
        None => ConditionVerdict::holds(name, cfg),
        Some(k) => ConditionVerdict::inconclusive(name, cfg).with_diagnostic(format!(
            "{} column(s) unsettled over the last {} rows, first k = {k}",
            unsettled.len(),
            cfg.window
        )),
    };
    verdict.with_trace(limits)
}

fn unbounded_column<T: Scalar>(k: usize, col: &[T], cfg: &TruncationConfig<T>) -> Option<Witness<T>> {
    let abs: Vec<T> = col.iter().map(|v| v.abs()).collect();
    stabilize::diverges(&stabilize::running_max(&abs), cfg.window, &cfg.tol).then(|| {
        let n = col.len() - 1;
        Witness::new(vec![n, k], col[n].clone(), "column grows without bound")
    })
}

/// `lim_n u_nk` exists for every `k`. The trace holds the limit estimates.
pub fn columns_converge<T: Scalar>(name: &str, rows: &[Vec<T>], cfg: &TruncationConfig<T>) -> ConditionVerdict<T> {
    judge_columns(name, rows, cfg, |k, col| {
        match stabilize::window_limit(col, cfg.window, &cfg.tol) {
            Some(l) => ColumnOutcome::Settled(l),
            None => match unbounded_column(k, col, cfg) {
                Some(w) => ColumnOutcome::Fails(w),
                None => ColumnOutcome::Unsettled,
            },
        }
    })
}

/// `lim_n u_nk = 0` for every `k`.
pub fn columns_vanish<T: Scalar>(name: &str, rows: &[Vec<T>], cfg: &TruncationConfig<T>) -> ConditionVerdict<T> {
    judge_columns(name, rows, cfg, |k, col| {
        match stabilize::zero_limit(col, 0, cfg.window, &cfg.tol) {
            ZeroLimit::Zero => ColumnOutcome::Settled(T::zero()),
            ZeroLimit::NonZero(n, l) => {
                ColumnOutcome::Fails(Witness::new(vec![n, k], l, "column settles at a nonzero value"))
            }
            ZeroLimit::Unknown => match unbounded_column(k, col, cfg) {
                Some(w) => ColumnOutcome::Fails(w),
                None => ColumnOutcome::Unsettled,
            },
        }
    })
}

/// `lim_n values[n]` exists; the evidence is the limit estimate.
pub fn sequence_converges<T: Scalar>(name: &str, values: &[T], cfg: &TruncationConfig<T>) -> ConditionVerdict<T> {
    let verdict = match stabilize::window_limit(values, cfg.window, &cfg.tol) {
        Some(l) => ConditionVerdict::holds(name, cfg).with_evidence(l),
        None => {
            let abs: Vec<T> = values.iter().map(|v| v.abs()).collect();
            let n = values.len() - 1;
            if stabilize::diverges(&stabilize::running_max(&abs), cfg.window, &cfg.tol) {
                ConditionVerdict::fails(
                    name,
                    Witness::new(vec![n], values[n].clone(), "grows without bound"),
                    cfg,
                )
            } else {
                ConditionVerdict::inconclusive(name, cfg)
                    .with_diagnostic(format!("last {} values disagree by more than tol", cfg.window))
            }
        }
    };
    verdict.with_trace(values.to_vec())
}

/// `lim_n values[n] = 0`.
pub fn sequence_vanishes<T: Scalar>(name: &str, values: &[T], cfg: &TruncationConfig<T>) -> ConditionVerdict<T> {
    let verdict = match stabilize::zero_limit(values, 0, cfg.window, &cfg.tol) {
        ZeroLimit::Zero => ConditionVerdict::holds(name, cfg).with_evidence(T::zero()),
        ZeroLimit::NonZero(n, l) => ConditionVerdict::fails(
            name,
            Witness::new(vec![n], l.clone(), "settles at a nonzero value"),
            cfg,
        )
        .with_evidence(l),
        ZeroLimit::Unknown => {
            let abs: Vec<T> = values.iter().map(|v| v.abs()).collect();
            let n = values.len() - 1;
            if stabilize::diverges(&stabilize::running_max(&abs), cfg.window, &cfg.tol) {
                ConditionVerdict::fails(
                    name,
                    Witness::new(vec![n], values[n].clone(), "grows without bound"),
                    cfg,
                )
            } else {
                ConditionVerdict::inconclusive(name, cfg).with_diagnostic("no zero limit detected within depth")
            }
        }
    };
    verdict.with_trace(values.to_vec())
}

/// `lim_n sum_k u_nk` exists.
pub fn row_sums_converge<T: Scalar>(name: &str, rows: &[Vec<T>], cfg: &TruncationConfig<T>) -> ConditionVerdict<T> {
    sequence_converges(name, &row_sums(rows), cfg)
}

/// `lim_n sum_k u_nk = 0`.
pub fn row_sums_vanish<T: Scalar>(name: &str, rows: &[Vec<T>], cfg: &TruncationConfig<T>) -> ConditionVerdict<T> {
    sequence_vanishes(name, &row_sums(rows), cfg)
}

/// `lim_n sum_k |u_nk| = sum_k |lim_n u_nk|`.
///
/// `L` is the settled limit of the absolute row sums, `S` the sum of
/// `|alpha_k|` over the judged columns. Holds when they agree within `tol`.
/// Fails when `S` exceeds `L`, or when the last row carries at least the
/// missing mass `L - S` in columns past the judged range, i.e. the mass
/// escapes to infinity along the rows.
pub fn abs_sum_interchange<T: Scalar>(name: &str, rows: &[Vec<T>], cfg: &TruncationConfig<T>) -> ConditionVerdict<T> {
    let tol = &cfg.tol;
    let abs_sums = abs_row_sums(rows);
    let Some(l) = stabilize::window_limit(&abs_sums, cfg.window, tol) else {
        return ConditionVerdict::inconclusive(name, cfg)
            .with_trace(abs_sums)
            .with_diagnostic("absolute row sums have not settled");
    };
    let cols = columns_converge(name, rows, cfg);
    if cols.status != crate::verdict::Status::Holds {
        return ConditionVerdict::inconclusive(name, cfg)
            .with_trace(abs_sums)
            .with_diagnostic("column limits have not settled");
    }
    let s = cols.trace.iter().fold(T::zero(), |acc, a| acc + a.abs());
    let judged = cols.trace.len();
    let gap = l.clone() - s.clone();
    let last = rows.len() - 1;
    let escaping = rows[last].iter().skip(judged).fold(T::zero(), |acc, v| acc + v.abs());
    let verdict = if gap.abs() <= *tol {
        ConditionVerdict::holds(name, cfg)
    } else if gap.is_negative() {
        ConditionVerdict::fails(
            name,
            Witness::new(
                vec![last],
                s.clone(),
                "sum of |column limits| exceeds the limit of absolute row sums",
            ),
            cfg,
        )
    } else if escaping >= gap.clone() - tol.clone() {
        ConditionVerdict::fails(
            name,
            Witness::new(
                vec![last],
                gap.clone(),
                "absolute mass escapes past the settled columns",
            ),
            cfg,
        )
    } else {
        ConditionVerdict::inconclusive(name, cfg).with_diagnostic(format!(
            "limit of absolute row sums {} differs from sum of |column limits| {}",
            l.render(),
            s.render()
        ))
    };
    verdict.with_evidence(l).with_trace(abs_sums)
}
