//! Heuristics that turn finitely many terms of an infinite process into a
//! tri-state verdict.
//!
//! Nothing here proves anything about the infinite tail. Each rule states the
//! pattern it looks for over the truncated range, and callers report
//! `Inconclusive` when no rule fires.

use crate::scalar::Scalar;

/// Maximum of a truncated supremum and whether it already settled.
#[derive(Clone, Debug, PartialEq)]
pub struct SupProbe<T> {
    pub value: T,
    pub argmax: usize,
    pub stabilized: bool,
}

/// `max(values)` together with the settled-prefix test: the supremum is
/// considered stable when `values[..=settled]` already comes within `tol` of
/// the overall maximum.
pub fn sup_probe<T: Scalar>(values: &[T], settled: usize, tol: &T) -> SupProbe<T> {
    assert!(!values.is_empty(), "sup over an empty range");
    let (argmax, value) = argmax(values);
    let head = &values[..=settled.min(values.len() - 1)];
    let (_, head_max) = argmax_ref(head);
    let stabilized = head_max.clone() >= value.clone() - tol.clone();
    SupProbe {
        value,
        argmax,
        stabilized,
    }
}

fn argmax_ref<T: Scalar>(values: &[T]) -> (usize, &T) {
    let mut best = 0;
    for (i, v) in values.iter().enumerate().skip(1) {
        if *v > values[best] {
            best = i;
        }
    }
    (best, &values[best])
}

pub fn argmax<T: Scalar>(values: &[T]) -> (usize, T) {
    let (i, v) = argmax_ref(values);
    (i, v.clone())
}

/// Running maximum, `out[i] = max(values[..=i])`.
pub fn running_max<T: Scalar>(values: &[T]) -> Vec<T> {
    let mut out: Vec<T> = Vec::with_capacity(values.len());
    for v in values {
        let next = match out.last() {
            Some(prev) if prev >= v => prev.clone(),
            _ => v.clone(),
        };
        out.push(next);
    }
    out
}

/// Divergence rule for `sup < infinity` conditions, applied to a running
/// maximum `d[0..=M]`: the maximum is still rising across the last window,
/// and it rose at least as much over the second half of the range as over
/// the first half. Linear or faster growth trips it; bounded or
/// decelerating growth does not.
pub fn diverges<T: Scalar>(running: &[T], window: usize, tol: &T) -> bool {
    let m = running.len() - 1;
    if m < 2 || window > m {
        return false;
    }
    let h = m / 2;
    let still_rising = running[m].clone() - running[m - window].clone() > *tol;
    let late = running[m].clone() - running[h].clone();
    let early = running[h].clone() - running[0].clone();
    still_rising && late > *tol && late >= early - tol.clone()
}

/// Cauchy-window rule: the last `window` values differ pairwise by at most
/// `tol`. Returns the final value as the limit estimate.
pub fn window_limit<T: Scalar>(values: &[T], window: usize, tol: &T) -> Option<T> {
    if values.len() < window || window == 0 {
        return None;
    }
    let tail = &values[values.len() - window..];
    let mut lo = &tail[0];
    let mut hi = &tail[0];
    for v in tail {
        if v < lo {
            lo = v;
        }
        if v > hi {
            hi = v;
        }
    }
    if hi.clone() - lo.clone() <= *tol {
        tail.last().cloned()
    } else {
        None
    }
}

/// Reciprocal-decay rule: the products `(n + 1) |v_n|` show no sustained
/// growth in the sense of [`diverges`], so the samples sit under a slowly
/// growing multiple of `1/(n + 1)`. A sequence with a nonzero limit makes the
/// products grow linearly and never passes. `first_index` is the index `n`
/// of `values[0]`.
pub fn decays_reciprocally<T: Scalar>(values: &[T], first_index: usize, window: usize, tol: &T) -> bool {
    if values.len() < 4 {
        return false;
    }
    let weighted: Vec<T> = values
        .iter()
        .enumerate()
        .map(|(i, v)| T::from_usize_exact(first_index + i + 1) * v.abs())
        .collect();
    !diverges(&running_max(&weighted), window.min(values.len() - 1), tol)
}

/// Outcome of asking whether a sampled sequence tends to zero.
#[derive(Clone, Debug, PartialEq)]
pub enum ZeroLimit<T> {
    Zero,
    /// Settled at a nonzero value; `(offset into values, value)`.
    NonZero(usize, T),
    Unknown,
}

pub fn zero_limit<T: Scalar>(values: &[T], first_index: usize, window: usize, tol: &T) -> ZeroLimit<T> {
    if let Some(l) = window_limit(values, window, tol) {
        return if l.abs() <= *tol {
            ZeroLimit::Zero
        } else {
            ZeroLimit::NonZero(values.len() - 1, l)
        };
    }
    if decays_reciprocally(values, first_index, window, tol) {
        ZeroLimit::Zero
    } else {
        ZeroLimit::Unknown
    }
}

/// Limit estimate for a sampled sequence: a settled window, or zero when the
/// reciprocal-decay rule fires.
pub fn limit_estimate<T: Scalar>(values: &[T], first_index: usize, window: usize, tol: &T) -> Option<T> {
    window_limit(values, window, tol).or_else(|| decays_reciprocally(values, first_index, window, tol).then(T::zero))
}
