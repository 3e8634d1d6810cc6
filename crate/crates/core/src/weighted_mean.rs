//! The weighted-mean triangle `N(p,q)`, its inverse, and the norm of the
//! associated sequence spaces.

use crate::config::TruncationConfig;
use crate::error::Result;
use crate::scalar::Scalar;
use crate::sequence::{SequenceSpec, Support};
use crate::stabilize::{self, ZeroLimit};
use crate::verdict::{ConditionVerdict, Status, Witness};
use crate::weights::WeightPair;

/// The triangle with entries `t_nk = p_{n-k} q_k / R_n` for `k <= n`.
#[derive(Clone, Copy, Debug)]
pub struct WeightedMeanTriangle<'w, T> {
    pub weights: &'w WeightPair<T>,
}

/// The inverse triangle, `s_nk = (-1)^(n-k) H_{n-k} R_k / q_n` for `k <= n`.
#[derive(Clone, Copy, Debug)]
pub struct InverseTriangle<'w, T> {
    pub weights: &'w WeightPair<T>,
}

impl<'w, T: Scalar> WeightedMeanTriangle<'w, T> {
    pub fn new(weights: &'w WeightPair<T>) -> Self {
        WeightedMeanTriangle { weights }
    }

    pub fn entry(&self, n: usize, k: usize) -> Result<T> {
        if k > n {
            return Ok(T::zero());
        }
        let w = self.weights;
        Ok(w.p(n - k)? * w.q(k)? / w.r(n)?)
    }

    /// Rows and columns `0..m`.
    pub fn leading_block(&self, m: usize) -> Result<Vec<Vec<T>>> {
        block(m, |n, k| self.entry(n, k))
    }
}

impl<'w, T: Scalar> InverseTriangle<'w, T> {
    pub fn new(weights: &'w WeightPair<T>) -> Self {
        InverseTriangle { weights }
    }

    pub fn entry(&self, n: usize, k: usize) -> Result<T> {
        if k > n {
            return Ok(T::zero());
        }
        let w = self.weights;
        Ok(w.signed_h(n - k)? * w.r(k)? / w.q(n)?)
    }

    pub fn leading_block(&self, m: usize) -> Result<Vec<Vec<T>>> {
        block(m, |n, k| self.entry(n, k))
    }
}

fn block<T: Scalar>(m: usize, f: impl Fn(usize, usize) -> Result<T>) -> Result<Vec<Vec<T>>> {
    (0..m).map(|n| (0..m).map(|k| f(n, k)).collect()).collect()
}

/// `(1/R_n) sum_{k=from}^{n} p_{n-k} q_k x_k`, visiting only indices where
/// both `x_k` and `p_{n-k}` can be nonzero.
fn partial_mean<T: Scalar>(w: &WeightPair<T>, x: &SequenceSpec<T>, n: usize, from: usize) -> Result<T> {
    let r = w.r(n)?;
    let Some(hi) = x.support().clamp(n) else {
        return Ok(T::zero());
    };
    let lo = match w.p_spec().support() {
        Support::UpTo(b) => from.max(n.saturating_sub(b)),
        _ => from,
    };
    let mut acc = T::zero();
    for k in lo..=hi {
        let xk = x.eval(k);
        if xk.is_zero() {
            continue;
        }
        acc += w.p(n - k)? * w.q(k)? * xk;
    }
    Ok(acc / r)
}

/// `tau_n(x)`.
pub fn forward_transform<T: Scalar>(w: &WeightPair<T>, x: &SequenceSpec<T>, n: usize) -> Result<T> {
    partial_mean(w, x, n, 0)
}

/// `tau_0(x), ..., tau_{len-1}(x)`.
pub fn forward_prefix<T: Scalar>(w: &WeightPair<T>, x: &SequenceSpec<T>, len: usize) -> Result<Vec<T>> {
    (0..len).map(|n| forward_transform(w, x, n)).collect()
}

/// `x_k` recovered from its transform `tau`.
pub fn inverse_transform<T: Scalar>(w: &WeightPair<T>, tau: &SequenceSpec<T>, k: usize) -> Result<T> {
    let q = w.q(k)?;
    let Some(hi) = tau.support().clamp(k) else {
        return Ok(T::zero());
    };
    let mut acc = T::zero();
    for j in 0..=hi {
        let t = tau.eval(j);
        if t.is_zero() {
            continue;
        }
        acc += w.signed_h(k - j)? * w.r(j)? * t;
    }
    Ok(acc / q)
}

pub fn inverse_prefix<T: Scalar>(w: &WeightPair<T>, tau: &SequenceSpec<T>, len: usize) -> Result<Vec<T>> {
    (0..len).map(|k| inverse_transform(w, tau, k)).collect()
}

/// `sup_n |tau_n(x)|` over `n <= M`. Holds when the maximum is already
/// reached by `n = M - W`.
pub fn space_norm<T: Scalar>(
    w: &WeightPair<T>,
    x: &SequenceSpec<T>,
    cfg: &TruncationConfig<T>,
) -> Result<ConditionVerdict<T>> {
    let trace: Vec<T> = forward_prefix(w, x, cfg.depth + 1)?
        .into_iter()
        .map(|t| t.abs())
        .collect();
    let probe = stabilize::sup_probe(&trace, cfg.settled(), &cfg.tol);
    let verdict = if probe.stabilized {
        ConditionVerdict::holds("space_norm", cfg)
    } else {
        ConditionVerdict::inconclusive("space_norm", cfg).with_diagnostic(format!(
            "running max of |tau_n| still rising after n = {}; maximum at n = {}",
            cfg.settled(),
            probe.argmax
        ))
    };
    Ok(verdict.with_evidence(probe.value).with_trace(trace))
}

/// `|tau_n(x - x^[m])|` for `n = m+1 ..= m+depth`; the rows `n <= m` vanish.
pub fn section_tail_values<T: Scalar>(
    w: &WeightPair<T>,
    x: &SequenceSpec<T>,
    m: usize,
    depth: usize,
) -> Result<Vec<T>> {
    (m + 1..=m + depth)
        .map(|n| partial_mean(w, x, n, m + 1).map(|v| v.abs()))
        .collect()
}

/// `||x - x^[m]||`, approximated by the maximum over rows `m < n <= m + depth`.
pub fn section_tail_norm<T: Scalar>(w: &WeightPair<T>, x: &SequenceSpec<T>, m: usize, depth: usize) -> Result<T> {
    let values = section_tail_values(w, x, m, depth)?;
    Ok(stabilize::argmax(&values).1)
}

/// Section convergence `x^[m] -> x` in the weighted-mean norm, the AK
/// property of the null domain.
///
/// The trace is `m -> ||x - x^[m]||` for `m <= M`. Holds when the trace ends
/// non-increasing and either drops to `tol` or sits under a `C/(m+1)`
/// envelope. Fails when `|tau_n(x)|` stays away from zero over the last
/// window, since then `x` is not in the null domain at all. When `R_n`
/// shows no sustained growth the property is not guaranteed and the verdict
/// is Inconclusive.
pub fn ak_convergence_check<T: Scalar>(
    w: &WeightPair<T>,
    x: &SequenceSpec<T>,
    cfg: &TruncationConfig<T>,
) -> Result<ConditionVerdict<T>> {
    const NAME: &str = "ak_convergence";
    let (depth, window, tol) = (cfg.depth, cfg.window, &cfg.tol);
    let trace: Vec<T> = (0..=depth)
        .map(|m| section_tail_norm(w, x, m, depth))
        .collect::<Result<_>>()?;

    let r_values: Vec<T> = (0..=depth).map(|n| w.r(n)).collect::<Result<_>>()?;
    if !stabilize::diverges(&stabilize::running_max(&r_values), window, tol) {
        return Ok(ConditionVerdict::inconclusive(NAME, cfg)
            .with_trace(trace)
            .with_diagnostic(format!(
                "R_n shows no sustained growth up to n = {depth} (R_{depth} = {}); \
                 section convergence needs R_n -> infinity",
                r_values[depth].render()
            )));
    }

    let tau: Vec<T> = forward_prefix(w, x, depth + 1)?.into_iter().map(|t| t.abs()).collect();
    let tau_tail = &tau[depth - window..];
    let tau_stuck = tau_tail.windows(2).all(|p| p[1] >= p[0]) && tau_tail.iter().all(|t| t > tol);
    if tau_stuck {
        let witness = Witness::new(
            vec![depth],
            tau[depth].clone(),
            "|tau_n(x)| does not decrease toward 0, so x is outside the null domain",
        );
        return Ok(ConditionVerdict::fails(NAME, witness, cfg).with_trace(trace));
    }

    let tail = &trace[depth - window..];
    let settling = tail.windows(2).all(|p| p[1] <= p[0].clone() + tol.clone());
    let last = trace[depth].clone();
    let verdict = if settling && last <= *tol {
        ConditionVerdict::holds(NAME, cfg)
    } else if settling && stabilize::zero_limit(&trace, 0, window, tol) == ZeroLimit::Zero {
        ConditionVerdict::holds(NAME, cfg).with_diagnostic("trace decays like C/(m+1)")
    } else {
        ConditionVerdict::new(NAME, Status::Inconclusive, cfg)
            .with_diagnostic("section distances have not settled at 0 within depth")
    };
    Ok(verdict.with_evidence(last).with_trace(trace))
}
