//! The Hausdorff measure of noncompactness of matrix operators from a
//! weighted-mean domain into `c0`, `c` or `linf`.
//!
//! With `||A||^(s) = sup_{n>s} ||A_n||*`, the measure `||L_A||_chi` equals
//! `lim_s ||A||^(s)` for the target `c0`, lies between half of it and the
//! limit for `c`, and is only bounded above by it for `linf`.

use serde::Serialize;

use crate::classes;
use crate::conditions;
use crate::config::TruncationConfig;
use crate::error::{Error, Result};
use crate::matrix::MatrixSpec;
use crate::scalar::Scalar;
use crate::sequence::Support;
use crate::space::Space;
use crate::stabilize;
use crate::verdict::{ConditionVerdict, Status};
use crate::weights::WeightPair;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    Compact,
    Noncompact,
    Inconclusive,
}

/// Lower and upper bounds on `||L_A||_chi`.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(bound = "T: Scalar")]
pub struct ChiBounds<T> {
    #[serde(with = "crate::scalar::serde_scalar")]
    pub lower: T,
    #[serde(with = "crate::scalar::serde_scalar")]
    pub upper: T,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(bound = "T: Scalar")]
pub struct SPoint<T> {
    pub s: usize,
    #[serde(with = "crate::scalar::serde_scalar")]
    pub value: T,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(bound = "T: Scalar")]
pub struct MncReport<T> {
    pub from: Space,
    pub target: Space,
    /// `(s, ||A||^(s))` for `s = 0..=M-W`, all at depth `M`.
    pub s_trace: Vec<SPoint<T>>,
    #[serde(with = "crate::scalar::serde_scalar")]
    pub limit_estimate: T,
    /// The last `W` values of the trace agree within `tol`.
    pub limit_stabilized: bool,
    pub bounds: ChiBounds<T>,
    pub classification: Classification,
    pub rank_shortcut_used: bool,
    pub rank: Option<usize>,
    pub config: TruncationConfig<T>,
    pub diagnostics: Vec<String>,
}

/// `max_m sum_{k<=m} |c_mk(A_n)|` for each row `n <= M`.
fn row_norms<T: Scalar>(profiles: &[Vec<T>]) -> Vec<T> {
    profiles.iter().map(|p| stabilize::argmax(p).1).collect()
}

/// `||A||^(s)` truncated to rows and columns `<= M`, with the same
/// stabilization verdict as [`crate::row_dual_bound`] restricted to rows `n > s`.
pub fn a_norm_s<T: Scalar>(
    a: &MatrixSpec<T>,
    w: &WeightPair<T>,
    s: usize,
    cfg: &TruncationConfig<T>,
) -> Result<ConditionVerdict<T>> {
    a_norm_from(a, w, s + 1, cfg)
}

/// The supremum over rows `n >= first_row`; `first_row = 0` excludes no
/// row at all.
pub fn a_norm_from<T: Scalar>(
    a: &MatrixSpec<T>,
    w: &WeightPair<T>,
    first_row: usize,
    cfg: &TruncationConfig<T>,
) -> Result<ConditionVerdict<T>> {
    if first_row > cfg.depth {
        return Ok(ConditionVerdict::holds("a_norm_s", cfg)
            .with_evidence(T::zero())
            .with_diagnostic("no rows left below depth"));
    }
    let profiles = classes::row_dual_profiles(a, w, cfg)?;
    Ok(conditions::table_sup("a_norm_s", &profiles, first_row, cfg))
}

/// `||A||^(s)` for `s = 0..=M-W`, from one pass over the rows.
pub fn s_trace<T: Scalar>(a: &MatrixSpec<T>, w: &WeightPair<T>, cfg: &TruncationConfig<T>) -> Result<Vec<T>> {
    Ok(trace_from_profiles(&classes::row_dual_profiles(a, w, cfg)?, cfg))
}

fn trace_from_profiles<T: Scalar>(profiles: &[Vec<T>], cfg: &TruncationConfig<T>) -> Vec<T> {
    let norms = row_norms(profiles);
    // suffix[i] = max(norms[i..])
    let mut suffix = vec![T::zero(); norms.len() + 1];
    for i in (0..norms.len()).rev() {
        suffix[i] = if norms[i] > suffix[i + 1] {
            norms[i].clone()
        } else {
            suffix[i + 1].clone()
        };
    }
    (0..=cfg.settled()).map(|s| suffix[s + 1].clone()).collect()
}

/// Rank of `A` when its structure pins it down exactly: constant rows have
/// rank at most 1, and finitely many nonzero rows that are each eventually
/// constant span a space that lives on finitely many columns.
pub fn rank_shortcut<T: Scalar>(a: &MatrixSpec<T>, cfg: &TruncationConfig<T>) -> Option<usize> {
    let st = a.structure();
    if st.constant_rows {
        return Some(usize::from(!a.row(0).is_identically_zero()));
    }
    let r = st.rows_eventually_zero?;
    let rows: Vec<_> = (0..r).map(|n| a.row(n)).collect();
    let mut width = 0;
    for row in &rows {
        let need = match row.support() {
            Support::Empty => 0,
            Support::UpTo(b) => b + 1,
            Support::Unbounded => row.constant_from()? + 1,
        };
        width = width.max(need);
    }
    let block: Vec<Vec<T>> = rows.iter().map(|row| row.prefix(width)).collect();
    Some(rank(block, &cfg.tol))
}

/// Row rank by Gaussian elimination; pivots must exceed `tol` in magnitude.
pub fn rank<T: Scalar>(mut m: Vec<Vec<T>>, tol: &T) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| m[i][c].abs() > *tol) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][c].clone();
        for i in rank + 1..m.len() {
            if m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone() / pivot.clone();
            for j in c..cols {
                let d = f.clone() * m[rank][j].clone();
                m[i][j] -= d;
            }
        }
        rank += 1;
    }
    rank
}

fn supported(from: Space, to: Space) -> Result<()> {
    use Space::*;
    match (from, to) {
        (N0 | N, C0 | C) | (N0 | N | Ninf, Linf) => Ok(()),
        _ => Err(Error::UnsupportedPair {
            from,
            to,
            reason: "the measure of noncompactness is estimated for (N0|N) into c0 or c, and (N0|N|Ninf) into linf",
        }),
    }
}

pub fn mnc_estimate<T: Scalar>(
    a: &MatrixSpec<T>,
    w: &WeightPair<T>,
    from: Space,
    to: Space,
    cfg: &TruncationConfig<T>,
) -> Result<MncReport<T>> {
    supported(from, to)?;
    let tol = &cfg.tol;
    let profiles = classes::row_dual_profiles(a, w, cfg)?;
    let bounded = conditions::table_sup("row_dual_bound", &profiles, 0, cfg);
    let trace = trace_from_profiles(&profiles, cfg);
    let limit = trace.last().cloned().expect("s ranges over at least 0..=1");
    let limit_stabilized = stabilize::window_limit(&trace, cfg.window, tol).is_some();
    let two = T::one() + T::one();
    let bounds = match to {
        Space::C0 => ChiBounds {
            lower: limit.clone(),
            upper: limit.clone(),
        },
        Space::C => ChiBounds {
            lower: limit.clone() / two,
            upper: limit.clone(),
        },
        _ => ChiBounds {
            lower: T::zero(),
            upper: limit.clone(),
        },
    };
    let mut diagnostics = Vec::new();
    if !limit_stabilized {
        diagnostics.push(format!(
            "last {} values of ||A||^(s) differ by more than tol",
            cfg.window
        ));
    }
    let rank = rank_shortcut(a, cfg);
    let unbounded = bounded.status == Status::Fails;
    if unbounded {
        diagnostics.push("row dual norms grow without bound, so L_A is not a bounded operator".into());
    }
    let (classification, rank_shortcut_used) = if limit_stabilized && limit <= *tol {
        (Classification::Compact, false)
    } else if let Some(r) = rank {
        if to != Space::Linf && limit_stabilized && bounds.lower > *tol {
            diagnostics.push(format!(
                "finite rank {r} conflicts with a positive lower bound; A is probably not in ({from},{to})"
            ));
        }
        (Classification::Compact, true)
    } else if to != Space::Linf && limit_stabilized && bounds.lower > *tol && !unbounded {
        (Classification::Noncompact, false)
    } else {
        (Classification::Inconclusive, false)
    };
    Ok(MncReport {
        from,
        target: to,
        s_trace: trace
            .into_iter()
            .enumerate()
            .map(|(s, value)| SPoint { s, value })
            .collect(),
        limit_estimate: limit,
        limit_stabilized,
        bounds,
        classification,
        rank_shortcut_used,
        rank,
        config: cfg.clone(),
        diagnostics,
    })
}
