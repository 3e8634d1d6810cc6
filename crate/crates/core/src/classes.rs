//! Membership of an infinite matrix in the classes `(X, Y)` between the
//! weighted-mean spaces and `c0`, `c`, `linf`.

use rayon::prelude::*;
use serde::Serialize;

use crate::conditions;
use crate::config::TruncationConfig;
use crate::duality::{self, DualConditionMatrix};
use crate::error::{Error, Result};
use crate::matrix::MatrixSpec;
use crate::scalar::Scalar;
use crate::sequence::{SequenceSpec, Support, Tail};
use crate::space::Space;
use crate::verdict::{ConditionVerdict, Status, Witness};
use crate::weights::WeightPair;

/// How the `A_n H R / q` conditions are read.
pub const TERMWISE_READING: &str =
    "read termwise: for every row n the sequence k -> a_nk H_k R_k / q_k must tend to 0 (termwise_vanish) or converge (termwise_converge)";

/// Absolute row sums of `C(A_n)` for every row: `profiles[n][m]` is
/// `sum_{k<=m} |c_mk(A_n)|`, `n, m <= M`. Rows are evaluated in parallel.
pub fn row_dual_profiles<T: Scalar>(
    a: &MatrixSpec<T>,
    w: &WeightPair<T>,
    cfg: &TruncationConfig<T>,
) -> Result<Vec<Vec<T>>> {
    let depth = cfg.depth;
    let structure = a.structure();
    let nonzero_rows = structure.rows_eventually_zero.map_or(depth + 1, |r| r.min(depth + 1));
    let any_support = (0..nonzero_rows).any(|n| a.row_support(n) != Support::Empty);
    if any_support {
        w.warm(depth)?;
    }
    let profile = |n: usize| DualConditionMatrix::new(w, &a.row(n)).abs_row_sums(depth);
    if structure.constant_rows {
        let p = profile(0)?;
        return Ok(vec![p; depth + 1]);
    }
    let mut out: Vec<Vec<T>> = (0..nonzero_rows).into_par_iter().map(profile).collect::<Result<_>>()?;
    out.resize(depth + 1, vec![T::zero(); depth + 1]);
    Ok(out)
}

/// Uniform bound on the dual norms of the rows: `sup_{n,m} sum_{k<=m} R_k |sum_{j=k}^{m} (-1)^(j-k) H_{j-k} a_nj / q_j| < infinity`.
pub fn row_dual_bound<T: Scalar>(
    a: &MatrixSpec<T>,
    w: &WeightPair<T>,
    cfg: &TruncationConfig<T>,
) -> Result<ConditionVerdict<T>> {
    Ok(conditions::table_sup(
        "row_dual_bound",
        &row_dual_profiles(a, w, cfg)?,
        0,
        cfg,
    ))
}

/// `||L_A|| = sup_n ||A_n||*`. A value rather than a yes/no question, so an
/// unsettled supremum is reported as Inconclusive, never as Fails.
pub fn operator_norm<T: Scalar>(
    a: &MatrixSpec<T>,
    w: &WeightPair<T>,
    cfg: &TruncationConfig<T>,
) -> Result<ConditionVerdict<T>> {
    let mut v = conditions::table_sup("operator_norm", &row_dual_profiles(a, w, cfg)?, 0, cfg);
    if v.status == Status::Fails {
        v.status = Status::Inconclusive;
        v.witness = None;
        v.diagnostics
            .push("row dual norms still growing linearly at depth".into());
    }
    Ok(v)
}

/// A question `A in (from, to)`, accepted only for the pairs that have a
/// characterization.
#[derive(Debug, Serialize)]
#[serde(bound = "T: Scalar")]
pub struct ClassQuery<T: Scalar> {
    pub matrix: MatrixSpec<T>,
    pub from: Space,
    pub to: Space,
    #[serde(skip)]
    pub weights: WeightPair<T>,
    pub config: TruncationConfig<T>,
}

impl<T: Scalar> Clone for ClassQuery<T> {
    fn clone(&self) -> Self {
        ClassQuery {
            matrix: self.matrix.clone(),
            from: self.from,
            to: self.to,
            weights: self.weights.clone(),
            config: self.config.clone(),
        }
    }
}

impl<T: Scalar> ClassQuery<T> {
    pub fn new(
        matrix: MatrixSpec<T>,
        from: Space,
        to: Space,
        weights: WeightPair<T>,
        config: TruncationConfig<T>,
    ) -> Result<Self> {
        supported_pair(from, to)?;
        config.validate()?;
        Ok(ClassQuery {
            matrix,
            from,
            to,
            weights,
            config,
        })
    }
}

fn supported_pair(from: Space, to: Space) -> Result<()> {
    use Space::*;
    let reason = match (from, to) {
        (N0 | N, C0 | C | Linf) | (Ninf, Linf) => return Ok(()),
        (C0 | C | Linf, C) => return Ok(()),
        (C0 | C, N0 | N) | (C0 | C | Linf, Ninf) => return Ok(()),
        (Ninf, C0 | C) => "maps from Ninf are characterized only into linf",
        (Linf, N0 | N) => "linf has no Schauder basis, so the basis-image conditions do not apply",
        (C0 | C | Linf, C0 | Linf) => "only the target c is characterized for sequence-space domains",
        _ => "no characterization between two weighted-mean domains",
    };
    Err(Error::UnsupportedPair { from, to, reason })
}

/// The sequence `k -> a_nk H_k R_k / q_k` for `k <= M`.
fn termwise_products<T: Scalar>(row: &SequenceSpec<T>, w: &WeightPair<T>, depth: usize) -> Result<Vec<T>> {
    let Some(hi) = row.support().clamp(depth) else {
        return Ok(vec![T::zero(); depth + 1]);
    };
    let mut out = vec![T::zero(); depth + 1];
    for (k, slot) in out.iter_mut().enumerate().take(hi + 1) {
        let a = row.eval(k);
        if !a.is_zero() {
            *slot = a * w.h(k)? * w.r(k)? / w.q(k)?;
        }
    }
    Ok(out)
}

/// Applies a per-sequence check to every row and combines the results: the
/// first failing row fails the whole, otherwise any doubt is doubt.
fn every_row<T: Scalar>(
    name: &str,
    rows: Vec<Vec<T>>,
    cfg: &TruncationConfig<T>,
    check: impl Fn(&[T]) -> ConditionVerdict<T>,
) -> ConditionVerdict<T> {
    let mut first_doubt = None;
    for (n, row) in rows.iter().enumerate() {
        let v = check(row);
        match v.status {
            Status::Fails => {
                let w = v.witness.expect("failing verdicts carry witnesses");
                let mut index = vec![n];
                index.extend(w.index);
                return ConditionVerdict::fails(name, Witness::new(index, w.value, w.note), cfg)
                    .with_flag(TERMWISE_READING);
            }
            Status::Inconclusive if first_doubt.is_none() => first_doubt = Some(n),
            _ => {}
        }
    }
    let v = match first_doubt {
        None => ConditionVerdict::holds(name, cfg),
        Some(n) => ConditionVerdict::inconclusive(name, cfg).with_diagnostic(format!("row {n} has not settled")),
    };
    v.with_flag(TERMWISE_READING)
}

fn termwise_condition<T: Scalar>(
    name: &str,
    a: &MatrixSpec<T>,
    w: &WeightPair<T>,
    cfg: &TruncationConfig<T>,
    vanish: bool,
) -> Result<ConditionVerdict<T>> {
    let rows: Vec<Vec<T>> = (0..=cfg.depth)
        .map(|n| termwise_products(&a.row(n), w, cfg.depth))
        .collect::<Result<_>>()?;
    Ok(every_row(name, rows, cfg, |seq| {
        if vanish {
            conditions::sequence_vanishes(name, seq, cfg)
        } else {
            conditions::sequence_converges(name, seq, cfg)
        }
    }))
}

/// Decides `A in (from, to)` for an accepted query.
///
/// Weighted-mean domain into `c0`, `c`, `linf`:
///
/// | pair         | conditions besides `row_dual_bound`                       |
/// |--------------|-----------------------------------------------------------|
/// | `Ninf, linf` | `termwise_vanish`                                         |
/// | `N, linf`    | `termwise_converge`                                       |
/// | `N0, linf`   |                                                           |
/// | `N0, c0`     | `columns_vanish`                                          |
/// | `N0, c`      | `columns_converge`                                        |
/// | `N, c0`      | `termwise_vanish`, `columns_vanish`, `row_sums_vanish`    |
/// | `N, c`       | `termwise_vanish`, `columns_converge`, `row_sums_converge`|
///
/// Sequence-space domains into `c` use the Toeplitz-type lemmas, and into a
/// weighted-mean domain go through [`domain_target_check`].
pub fn class_check<T: Scalar>(qy: &ClassQuery<T>) -> Result<ConditionVerdict<T>> {
    use Space::*;
    let (a, w, cfg) = (&qy.matrix, &qy.weights, &qy.config);
    supported_pair(qy.from, qy.to)?;
    let name = format!("class({},{})", qy.from, qy.to);
    match (qy.from, qy.to) {
        (C0 | C | Linf, C) => duality::toeplitz_check(a, qy.from, cfg).map(|mut v| {
            v.name = name;
            v
        }),
        (C0 | C | Linf, N0 | N | Ninf) => domain_target_check(a, qy.from, qy.to, w, cfg).map(|mut v| {
            v.name = name;
            v
        }),
        (from, to) => {
            let mut parts = vec![row_dual_bound(a, w, cfg)?];
            let rows = || a.block(cfg.depth, cfg.depth);
            match (from, to) {
                (Ninf, Linf) => parts.push(termwise_condition("termwise_vanish", a, w, cfg, true)?),
                (N, Linf) => parts.push(termwise_condition("termwise_converge", a, w, cfg, false)?),
                (N0, Linf) => {}
                (N0, C0) => parts.push(conditions::columns_vanish("columns_vanish", &rows(), cfg)),
                (N0, C) => parts.push(conditions::columns_converge("columns_converge", &rows(), cfg)),
                (N, C0) => {
                    let rows = rows();
                    parts.push(termwise_condition("termwise_vanish", a, w, cfg, true)?);
                    parts.push(conditions::columns_vanish("columns_vanish", &rows, cfg));
                    parts.push(conditions::row_sums_vanish("row_sums_vanish", &rows, cfg));
                }
                (N, C) => {
                    let rows = rows();
                    parts.push(termwise_condition("termwise_vanish", a, w, cfg, true)?);
                    parts.push(conditions::columns_converge("columns_converge", &rows, cfg));
                    parts.push(conditions::row_sums_converge("row_sums_converge", &rows, cfg));
                }
                _ => unreachable!("pair accepted by supported_pair"),
            }
            Ok(ConditionVerdict::all(name, parts, cfg))
        }
    }
}

/// The first `len` entries of `B_m = (1/R_m) sum_{n<=m} p_{m-n} q_n A_n`.
pub fn compose_row_prefix<T: Scalar>(a: &MatrixSpec<T>, w: &WeightPair<T>, m: usize, len: usize) -> Result<Vec<T>> {
    let mut out = vec![T::zero(); len];
    for n in 0..=m {
        let p = w.p(m - n)?;
        if p.is_zero() {
            continue;
        }
        let row = a.row(n);
        let Some(hi) = row.support().clamp(len.saturating_sub(1)) else {
            continue;
        };
        if len == 0 {
            break;
        }
        let f = p * w.q(n)?;
        for (k, slot) in out.iter_mut().enumerate().take(hi + 1) {
            let v = row.eval(k);
            if !v.is_zero() {
                *slot += f.clone() * v;
            }
        }
    }
    let r = w.r(m)?;
    Ok(out.into_iter().map(|v| v / r.clone()).collect())
}

/// Row `B_m` of `B = TA`, as a sequence.
///
/// Representable when every contributing row is eventually constant; rows
/// such as `Geometric(1/2)` are rejected with a precondition error (use
/// [`compose_row_prefix`] for a finite prefix instead).
pub fn compose_into_domain<T: Scalar>(a: &MatrixSpec<T>, w: &WeightPair<T>, m: usize) -> Result<SequenceSpec<T>> {
    let mut len = 0;
    let mut repeat = false;
    for n in 0..=m {
        if w.p(m - n)?.is_zero() {
            continue;
        }
        let row = a.row(n);
        match row.support() {
            Support::Empty => {}
            Support::UpTo(b) => len = len.max(b + 1),
            Support::Unbounded => match row.constant_from() {
                Some(c) => {
                    len = len.max(c + 1);
                    repeat = true;
                }
                None => {
                    return Err(Error::Precondition(format!(
                        "row {n} is not eventually constant, so B_{m} has no finite description"
                    )))
                }
            },
        }
    }
    let values = compose_row_prefix(a, w, m, len)?;
    Ok(SequenceSpec::Literal {
        values,
        tail: if repeat { Tail::RepeatLast } else { Tail::Zero },
    })
}

/// `B = TA` on rows and columns `0..=M`.
pub fn composed_table<T: Scalar>(
    a: &MatrixSpec<T>,
    w: &WeightPair<T>,
    cfg: &TruncationConfig<T>,
) -> Result<Vec<Vec<T>>> {
    let depth = cfg.depth;
    let block = a.block(depth, depth);
    w.warm(depth)?;
    (0..=depth)
        .into_par_iter()
        .map(|m| {
            let mut row = vec![T::zero(); depth + 1];
            for (n, an) in block.iter().enumerate().take(m + 1) {
                let p = w.p(m - n)?;
                if p.is_zero() || an.iter().all(|v| v.is_zero()) {
                    continue;
                }
                let f = p * w.q(n)?;
                for (slot, v) in row.iter_mut().zip(an) {
                    if !v.is_zero() {
                        *slot += f.clone() * v.clone();
                    }
                }
            }
            let r = w.r(m)?;
            Ok(row.into_iter().map(|v| v / r.clone()).collect())
        })
        .collect()
}

/// `A in (from, to)` for `from` in `{c0, c, linf}` and `to` a weighted-mean
/// domain, through `B = TA in (from, c0 | c | linf)`:
///
/// * `sup_m sum_k |b_mk| < infinity` for every target;
/// * `N0`: `lim_m b_mk = 0` for every `k`, plus `lim_m sum_k b_mk = 0` when `from = c`;
/// * `N`: `lim_m b_mk` exists for every `k`, plus a limit of the row sums when `from = c`.
pub fn domain_target_check<T: Scalar>(
    a: &MatrixSpec<T>,
    from: Space,
    to: Space,
    w: &WeightPair<T>,
    cfg: &TruncationConfig<T>,
) -> Result<ConditionVerdict<T>> {
    use Space::*;
    if !matches!((from, to), (C0 | C, N0 | N) | (C0 | C | Linf, Ninf)) {
        supported_pair(from, to)?;
        return Err(Error::UnsupportedPair {
            from,
            to,
            reason: "domain_target_check needs a sequence-space domain and a weighted-mean target",
        });
    }
    let rows = composed_table(a, w, cfg)?;
    let mut parts = vec![conditions::bounded_abs_row_sums("b_abs_row_sums_bounded", &rows, cfg)];
    match (to, from) {
        (N0, C) => {
            parts.push(conditions::columns_vanish("b_columns_vanish", &rows, cfg));
            parts.push(conditions::row_sums_vanish("b_row_sums_vanish", &rows, cfg));
        }
        (N0, _) => parts.push(conditions::columns_vanish("b_columns_vanish", &rows, cfg)),
        (N, C) => {
            parts.push(conditions::columns_converge("b_columns_converge", &rows, cfg));
            parts.push(conditions::row_sums_converge("b_row_sums_converge", &rows, cfg));
        }
        (N, _) => parts.push(conditions::columns_converge("b_columns_converge", &rows, cfg)),
        _ => {}
    }
    Ok(ConditionVerdict::all(format!("domain({from},{to})"), parts, cfg))
}
