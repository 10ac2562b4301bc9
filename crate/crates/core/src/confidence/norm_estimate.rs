use nalgebra::DVector;

use super::ridge::RidgeState;
use crate::error::{AlbError, Result};

/// Output of the paired-difference norm estimator.
#[derive(Debug, Clone, PartialEq)]
pub struct NormEstimate {
    /// Initial norm bound, never below 1.
    pub bound: f64,
    /// Unregularized least-squares fit on the differenced design.
    pub theta_ls: DVector<f64>,
}

/// `max(norm + √2·σ·√((d/τ)·ln(1/δ_s)), 1)`.
pub fn norm_bound(theta_norm: f64, sigma: f64, dim: usize, pairs: usize, delta_s: f64) -> f64 {
    let width = 2f64.sqrt() * sigma * (dim as f64 / pairs as f64 * (1.0 / delta_s).ln()).sqrt();
    (theta_norm + width).max(1.0)
}

/// Initial upper bound on ‖θ*‖ from `2τ` pulls of a single arm.
///
/// Consecutive pulls are differenced to cancel the arm bias, and the
/// differenced design is fit by ordinary least squares.
pub fn initial_norm_estimate(
    rewards: &[f64],
    contexts: &[DVector<f64>],
    sigma: f64,
    delta_s: f64,
) -> Result<NormEstimate> {
    if rewards.len() != contexts.len() {
        return Err(AlbError::DimensionMismatch { expected: rewards.len(), actual: contexts.len() });
    }
    if rewards.is_empty() || !rewards.len().is_multiple_of(2) {
        return Err(AlbError::contract(format!("need an even, nonzero number of samples, got {}", rewards.len())));
    }
    if !(delta_s > 0.0 && delta_s < 1.0) {
        return Err(AlbError::contract(format!("delta_s must lie in (0,1), got {delta_s}")));
    }
    let dim = contexts[0].len();
    let pairs = rewards.len() / 2;
    let mut ls = RidgeState::new(dim, 0.0)?;
    for j in 0..pairs {
        let y = rewards[2 * j] - rewards[2 * j + 1];
        let x = &contexts[2 * j] - &contexts[2 * j + 1];
        ls.update(&x, y)?;
    }
    let theta_ls = ls.solve().map_err(|e| match e {
        AlbError::Singular { rank, dim, .. } => AlbError::Singular {
            rank,
            dim,
            hint: format!("differenced design from tau = {pairs} pairs is rank deficient; increase tau"),
        },
        other => other,
    })?;
    let bound = norm_bound(theta_ls.norm(), sigma, dim, pairs, delta_s);
    Ok(NormEstimate { bound, theta_ls })
}
