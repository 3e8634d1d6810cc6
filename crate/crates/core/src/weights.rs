//! The weight sequences `p`, `q` and the quantities derived from them.

use std::sync::RwLock;

use crate::error::{Error, Result, Weight};
use crate::scalar::Scalar;
use crate::sequence::{SequenceSpec, Support};

/// The pair of weight sequences behind a weighted-mean transform.
///
/// Derived terms are memoized:
///
/// * `R_n = sum_{j=0}^{n} p_{n-j} q_j`, the row normalizer;
/// * `H_n`, the signed coefficients of the inverse of the lower-triangular
///   convolution by `p`: the inverse has entries `(-1)^(n-k) H_{n-k}`, so
///   `sum_{j=0}^{m} p_{m-j} (-1)^j H_j = 0` for `m >= 1` and `H_0 = 1/p_0`.
///
/// Signs are checked when a term is first read: `q_k > 0`, `p_0 > 0` and
/// `p_k >= 0`. The caches only ever grow and hold exactly what a sequential
/// computation would produce, so a `WeightPair` can be shared across threads.
#[derive(Debug)]
pub struct WeightPair<T> {
    p: SequenceSpec<T>,
    q: SequenceSpec<T>,
    r_cache: RwLock<Vec<T>>,
    h_cache: RwLock<Vec<T>>,
}

impl<T: Scalar> Clone for WeightPair<T> {
    fn clone(&self) -> Self {
        WeightPair {
            p: self.p.clone(),
            q: self.q.clone(),
            r_cache: RwLock::new(self.r_cache.read().expect("cache lock").clone()),
            h_cache: RwLock::new(self.h_cache.read().expect("cache lock").clone()),
        }
    }
}

impl<T: Scalar> PartialEq for WeightPair<T> {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.q == other.q
    }
}

impl<T: Scalar> WeightPair<T> {
    pub fn new(p: SequenceSpec<T>, q: SequenceSpec<T>) -> Self {
        WeightPair {
            p,
            q,
            r_cache: RwLock::new(Vec::new()),
            h_cache: RwLock::new(Vec::new()),
        }
    }

    /// `p = q = e`: the arithmetic (Cesaro) means.
    pub fn cesaro() -> Self {
        Self::new(SequenceSpec::ones(), SequenceSpec::ones())
    }

    pub fn p_spec(&self) -> &SequenceSpec<T> {
        &self.p
    }

    pub fn q_spec(&self) -> &SequenceSpec<T> {
        &self.q
    }

    pub fn p(&self, k: usize) -> Result<T> {
        let v = self.p.eval(k);
        let ok = if k == 0 { v.is_positive() } else { !v.is_negative() };
        if ok {
            Ok(v)
        } else {
            Err(Error::Positivity {
                weight: Weight::P,
                index: k,
                value: v.render(),
                requirement: if k == 0 { "p_0 > 0" } else { "p_k >= 0" },
            })
        }
    }

    pub fn q(&self, k: usize) -> Result<T> {
        let v = self.q.eval(k);
        if v.is_positive() {
            Ok(v)
        } else {
            Err(Error::Positivity {
                weight: Weight::Q,
                index: k,
                value: v.render(),
                requirement: "q_k > 0",
            })
        }
    }

    /// Indices `i` where `p_i` may be nonzero, bounded by `limit`.
    fn p_range(&self, limit: usize) -> std::ops::RangeInclusive<usize> {
        match self.p.support() {
            Support::UpTo(b) => 0..=b.min(limit),
            _ => 0..=limit,
        }
    }

    /// `R_n`.
    pub fn r(&self, n: usize) -> Result<T> {
        // closed forms that avoid materializing the whole prefix
        if let (SequenceSpec::Constant(_), SequenceSpec::Constant(_)) = (&self.p, &self.q) {
            let (p, q) = (self.p(0)?, self.q(0)?);
            return Ok(T::from_usize_exact(n + 1) * p * q);
        }
        if self.p.support().is_finite() {
            return self.r_direct(n);
        }
        if let Some(v) = self.r_cache.read().expect("cache lock").get(n) {
            return Ok(v.clone());
        }
        let mut cache = self.r_cache.write().expect("cache lock");
        while cache.len() <= n {
            let i = cache.len();
            let next = match (&self.p, cache.last()) {
                (SequenceSpec::Constant(_), Some(prev)) => prev.clone() + self.p(0)? * self.q(i)?,
                _ => self.r_direct(i)?,
            };
            cache.push(next);
        }
        Ok(cache[n].clone())
    }

    fn r_direct(&self, n: usize) -> Result<T> {
        let mut acc = T::zero();
        for i in self.p_range(n) {
            let p = self.p(i)?;
            if !p.is_zero() {
                acc += p * self.q(n - i)?;
            }
        }
        Ok(acc)
    }

    /// `H_n`, by the convolution recurrence
    /// `H_m = ((-1)^(m+1) / p_0) * sum_{j<m} (-1)^j p_{m-j} H_j`.
    pub fn h(&self, n: usize) -> Result<T> {
        if let Some(v) = self.h_cache.read().expect("cache lock").get(n) {
            return Ok(v.clone());
        }
        let mut cache = self.h_cache.write().expect("cache lock");
        let p0 = self.p(0)?;
        while cache.len() <= n {
            let m = cache.len();
            if m == 0 {
                cache.push(T::one() / p0.clone());
                continue;
            }
            let mut acc = T::zero();
            for i in self.p_range(m) {
                if i == 0 {
                    continue;
                }
                let p = self.p(i)?;
                if p.is_zero() {
                    continue;
                }
                let j = m - i;
                let term = p * cache[j].clone();
                if j.is_multiple_of(2) {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            let h = acc / p0.clone();
            cache.push(if m % 2 == 1 { h } else { -h });
        }
        Ok(cache[n].clone())
    }

    /// `(-1)^i H_i`, the coefficient that actually appears in the inverse.
    pub fn signed_h(&self, i: usize) -> Result<T> {
        let h = self.h(i)?;
        Ok(if i.is_multiple_of(2) { h } else { -h })
    }

    /// Fills both caches up to `n` so later readers never take the write lock.
    pub fn warm(&self, n: usize) -> Result<()> {
        self.r(n)?;
        self.h(n)?;
        Ok(())
    }
}
