//! Estimation and confidence-width machinery: incremental ridge regression,
//! radius formulas for the bias-aware learner, the paired-difference norm
//! estimator, support thresholding and the initial phase length.

mod norm_estimate;
mod radius;
mod ridge;
mod support;
mod t0;

pub use norm_estimate::{initial_norm_estimate, norm_bound, NormEstimate};
pub use radius::{
    bias_bonus, bias_bonus_compact, k_compact, k_delta, m_delta, t_min, upsilon_delta, ConfidenceBall, RadiusParams,
    WidthRule,
};
pub use ridge::{ridge_solve, ridge_update, RidgeState, PSEUDO_RIDGE};
pub use support::{support_threshold, SupportEstimate};
pub use t0::{t0_root, theoretical_t0};
