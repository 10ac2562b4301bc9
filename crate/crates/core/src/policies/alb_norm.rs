use nalgebra::DVector;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::confidence::{initial_norm_estimate, RadiusParams, WidthRule};
use crate::envs::ArmEnvironment;
use crate::error::{AlbError, Result};
use crate::trace::{RegretTrace, SnapshotValue};

use super::oful_plus::{norm_refine, OfulPlusState};
use super::schedule::norm_schedule;

/// Norm-adaptive learner settings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlbNormConfig {
    /// Number of differenced pairs in the initial exploration (`2τ` pulls).
    pub tau: usize,
    /// First epoch length.
    pub t1: u64,
    pub delta1: f64,
    pub delta_s: f64,
    /// Replaces the estimated initial bound; the exploration pulls still run.
    #[serde(default)]
    pub b1_override: Option<f64>,
    #[serde(default)]
    pub width: WidthRule,
}

impl AlbNormConfig {
    pub fn validate(&self, dim: usize) -> Result<()> {
        if self.tau < dim {
            return Err(AlbError::config("tau", format!("must be >= d = {dim}, got {}", self.tau)));
        }
        if self.t1 == 0 {
            return Err(AlbError::config("t1", "must be >= 1"));
        }
        for (name, v) in [("delta1", self.delta1), ("delta_s", self.delta_s)] {
            if !(v > 0.0 && v < 1.0) {
                return Err(AlbError::config(name, format!("must lie in (0,1), got {v}")));
            }
        }
        if let Some(b) = self.b1_override {
            if !(b > 0.0) || !b.is_finite() {
                return Err(AlbError::config("b1_override", format!("must be positive, got {b}")));
            }
        }
        Ok(())
    }
}

/// State handed to an epoch observer right after an epoch finishes.
#[derive(Debug)]
pub struct EpochReport<'a> {
    /// 1-based epoch index.
    pub index: usize,
    /// Bound used during the epoch.
    pub b: f64,
    pub delta: f64,
    /// Rounds actually played (the last epoch may be cut by the horizon).
    pub played: u64,
    pub state: &'a OfulPlusState,
}

fn radius_params<E: ArmEnvironment>(env: &E, b: f64, delta: f64, horizon: u64) -> RadiusParams {
    RadiusParams {
        b,
        delta,
        sigma: env.sigma(),
        rho_min: env.rho_min(),
        dim: env.dim(),
        arms: env.arms(),
        horizon: horizon.max(1),
    }
}

/// Plays `len` rounds of `state` starting at global round `start`.
fn play_epoch<E: ArmEnvironment>(
    env: &E,
    state: &mut OfulPlusState,
    start: u64,
    len: u64,
    trace: &mut RegretTrace,
) -> Result<()> {
    for round in start..start + len {
        let ctx = env.contexts(round);
        let arm = state.select(&ctx)?;
        let g = env.reward(round, &ctx, arm);
        state.observe(&ctx, arm, g)?;
        trace.push(env.instant_regret(&ctx, arm));
    }
    Ok(())
}

/// One pull per arm in order; returns the observed rewards. Stops early at
/// the horizon.
fn seed_pulls<E: ArmEnvironment>(env: &E, start: u64, horizon: u64, trace: &mut RegretTrace) -> Vec<f64> {
    let mut seeds = Vec::with_capacity(env.arms());
    for arm in 0..env.arms() {
        let round = start + arm as u64;
        if round >= horizon {
            break;
        }
        let ctx = env.contexts(round);
        seeds.push(env.reward(round, &ctx, arm));
        trace.push(env.instant_regret(&ctx, arm));
    }
    seeds
}

/// Norm-adaptive OFUL⁺ with doubling epochs.
///
/// Exploration and seeding rounds count toward `horizon`. The `rng` is the
/// policy's own randomness (choice of the exploration arm).
pub fn alb_norm_run<E: ArmEnvironment, R: Rng + ?Sized>(
    env: &E,
    cfg: &AlbNormConfig,
    horizon: u64,
    rng: &mut R,
) -> Result<RegretTrace> {
    alb_norm_run_with(env, cfg, horizon, rng, |_| {})
}

pub fn alb_norm_run_with<E, R, F>(
    env: &E,
    cfg: &AlbNormConfig,
    horizon: u64,
    rng: &mut R,
    mut observer: F,
) -> Result<RegretTrace>
where
    E: ArmEnvironment,
    R: Rng + ?Sized,
    F: FnMut(&EpochReport<'_>),
{
    cfg.validate(env.dim())?;
    let mut trace = RegretTrace::new("alb_norm");
    let explore_arm = rng.random_range(0..env.arms());
    let explore_len = (2 * cfg.tau as u64).min(horizon);
    let mut rewards = Vec::with_capacity(explore_len as usize);
    let mut contexts: Vec<DVector<f64>> = Vec::with_capacity(explore_len as usize);
    for round in 0..explore_len {
        let ctx = env.contexts(round);
        rewards.push(env.reward(round, &ctx, explore_arm));
        trace.push(env.instant_regret(&ctx, explore_arm));
        contexts.push(ctx[explore_arm].clone());
    }
    if explore_len < 2 * cfg.tau as u64 {
        return Ok(trace);
    }
    let mut b = match cfg.b1_override {
        Some(b) => b,
        None => initial_norm_estimate(&rewards, &contexts, env.sigma(), cfg.delta_s)?.bound,
    };

    let mut round = explore_len;
    let seeds = seed_pulls(env, round, horizon, &mut trace);
    round += seeds.len() as u64;
    if seeds.len() < env.arms() {
        return Ok(trace);
    }

    for epoch in norm_schedule(cfg.t1, cfg.delta1) {
        if round >= horizon {
            break;
        }
        trace.snapshot(epoch.index, SnapshotValue::Norm(b));
        let params = radius_params(env, b, epoch.delta, epoch.length);
        let mut state = OfulPlusState::with_seeds(params, cfg.width, &seeds)?;
        let played = epoch.length.min(horizon - round);
        play_epoch(env, &mut state, round, played, &mut trace)?;
        round += played;
        observer(&EpochReport { index: epoch.index, b, delta: epoch.delta, played, state: &state });
        b = norm_refine(state.ball());
    }
    Ok(trace)
}

/// Non-adaptive OFUL⁺ with a fixed bound `b`: one pull per arm, then a single
/// run over the rest of the horizon.
pub fn oful_plus_run<E: ArmEnvironment>(
    env: &E,
    b: f64,
    delta: f64,
    width: WidthRule,
    horizon: u64,
) -> Result<(RegretTrace, Option<OfulPlusState>)> {
    let mut trace = RegretTrace::new("oful_plus");
    let seeds = seed_pulls(env, 0, horizon, &mut trace);
    if seeds.len() < env.arms() {
        return Ok((trace, None));
    }
    let params = radius_params(env, b, delta, horizon);
    let mut state = OfulPlusState::with_seeds(params, width, &seeds)?;
    let k = env.arms() as u64;
    play_epoch(env, &mut state, k, horizon - k, &mut trace)?;
    Ok((trace, Some(state)))
}

/// OFUL⁺ told the true norm, floored at 1.
pub fn norm_oracle_run<E: ArmEnvironment>(
    env: &E,
    theta_norm: f64,
    delta: f64,
    width: WidthRule,
    horizon: u64,
) -> Result<RegretTrace> {
    let (mut trace, _) = oful_plus_run(env, theta_norm.max(1.0), delta, width, horizon)?;
    trace.algorithm = "norm_oracle".into();
    Ok(trace)
}
