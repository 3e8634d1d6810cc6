use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// How far infinite suprema and limits are explored.
///
/// `depth` (M) is the largest index visited, `window` (W) the number of
/// trailing indices that must agree before a value is called stable, and
/// `tol` the agreement tolerance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct TruncationConfig<T> {
    pub depth: usize,
    pub window: usize,
    #[serde(with = "crate::scalar::serde_scalar")]
    pub tol: T,
}

impl<T: Scalar> Default for TruncationConfig<T> {
    fn default() -> Self {
        TruncationConfig {
            depth: 64,
            window: 8,
            tol: T::default_tol(),
        }
    }
}

impl<T: Scalar> TruncationConfig<T> {
    pub fn new(depth: usize, window: usize, tol: T) -> Result<Self> {
        let cfg = TruncationConfig { depth, window, tol };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_depth(depth: usize) -> Result<Self> {
        let d = Self::default();
        Self::new(depth, d.window.min(depth.saturating_sub(1)).max(1), d.tol)
    }

    pub fn validate(&self) -> Result<()> {
        if self.window == 0 {
            return Err(Error::InvalidConfig("window must be positive".into()));
        }
        if self.window >= self.depth {
            return Err(Error::InvalidConfig(format!(
                "window ({}) must be smaller than depth ({})",
                self.window, self.depth
            )));
        }
        if self.tol.is_negative() {
            return Err(Error::InvalidConfig("tol must be nonnegative".into()));
        }
        Ok(())
    }

    /// Last index that still has a full window of indices after it.
    pub fn settled(&self) -> usize {
        self.depth - self.window
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use num_traits::Zero;

    #[test]
    fn defaults() {
        let c = TruncationConfig::<Rational>::default();
        assert_eq!((c.depth, c.window), (64, 8));
        assert!(c.tol.is_zero());
        assert_eq!(TruncationConfig::<f64>::default().tol, 1e-10);
    }

    #[test]
    fn window_must_be_below_depth() {
        assert!(TruncationConfig::new(8, 8, 0.0).is_err());
        assert!(TruncationConfig::new(8, 0, 0.0).is_err());
        assert!(TruncationConfig::new(8, 2, -1.0).is_err());
        assert!(TruncationConfig::new(9, 8, 0.0).is_ok());
    }
}
