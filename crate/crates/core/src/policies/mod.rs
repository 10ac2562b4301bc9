//! Decision rules: the bias-aware OFUL⁺ learner and its norm-adaptive
//! wrapper, continuum OFUL with dimension adaptation, the finite-arm ladder
//! variant, and UCB1 and oracle baselines.
//!
//! Every run function is deterministic given its environment: contexts,
//! noise, exploration arms and candidate draws are all keyed by round.

mod alb_dim;
mod alb_dim_finite;
mod alb_norm;
mod linucb;
mod oful_continuum;
mod oful_plus;
mod schedule;
mod ucb1;

use serde::{Deserialize, Serialize};

pub use alb_dim::{
    alb_dim_run, alb_dim_run_with, alb_dim_supports, dim_oracle_run, full_dim_run, AlbDimConfig, PhaseReport,
};
pub use alb_dim_finite::{
    alb_dim_finite_levels, alb_dim_finite_run, feature_scale, full_ladder_run, ladder_oracle_run, level_for,
};
pub use alb_norm::{alb_norm_run, alb_norm_run_with, norm_oracle_run, oful_plus_run, AlbNormConfig, EpochReport};
pub use linucb::LinUcb;
pub use oful_continuum::{oful_beta, oful_beta_with, oful_continuum_select, OfulContinuum, DEFAULT_CANDIDATES};
pub use oful_plus::{argmax, norm_refine, oful_plus_observe, oful_plus_select, OfulPlusState};
pub use schedule::{ceil_sqrt, dim_schedule, norm_schedule, DimPhase, NormEpoch, DELTA_FLOOR};
pub use ucb1::{ucb1_run, ucb1_select};

/// Which ground truth an oracle baseline is told.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleMode {
    /// OFUL⁺ with `b = max(‖θ*‖, 1)`.
    NormOracle,
    /// Inner learner restricted to the true support or ladder level.
    DimOracle,
}
