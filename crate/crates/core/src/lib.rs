//! Weighted-mean `N(p,q)` summability.
//!
//! Triangle transforms and their inverses, norms on the weighted-mean
//! sequence spaces, beta-duals, matrix class characterizations and the
//! Hausdorff measure of noncompactness of matrix operators. Every infinite
//! quantity is explored to a finite depth and reported as a
//! [`ConditionVerdict`] that says whether the truncation settled.

pub mod classes;
pub mod conditions;
pub mod config;
pub mod duality;
pub mod error;
pub mod matrix;
pub mod noncompactness;
pub mod scalar;
pub mod sequence;
pub mod space;
pub mod stabilize;
pub mod verdict;
pub mod weighted_mean;
pub mod weights;

pub use classes::{class_check, compose_into_domain, domain_target_check, operator_norm, row_dual_bound, ClassQuery};
pub use config::TruncationConfig;
pub use duality::{
    attainment_witness, beta_dual_membership, c_entry, dual_norm, toeplitz_check, Attainment, DualConditionMatrix,
};
pub use error::{Error, Result, Weight};
pub use matrix::{MatrixSpec, RowTail, Structure};
pub use noncompactness::{a_norm_s, mnc_estimate, rank_shortcut, Classification, MncReport};
pub use scalar::{Mode, Rational, Scalar};
pub use sequence::{SequenceSpec, Support, Tail};
pub use space::Space;
pub use verdict::{ConditionVerdict, Status, Witness};
pub use weighted_mean::{
    ak_convergence_check, forward_transform, inverse_transform, space_norm, InverseTriangle, WeightedMeanTriangle,
};
pub use weights::WeightPair;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/weighted-means.md")]
    mod weighted_means {}
    #[doc = include_str!("../../../book/src/duality.md")]
    mod duality {}
    #[doc = include_str!("../../../book/src/matrix-classes.md")]
    mod matrix_classes {}
    #[doc = include_str!("../../../book/src/noncompactness.md")]
    mod noncompactness {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
