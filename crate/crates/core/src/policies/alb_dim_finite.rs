use crate::confidence::{RidgeState, SupportEstimate};
use crate::envs::{ladder_level, ArmEnvironment, NestedEnv};
use crate::error::{AlbError, Result};
use crate::trace::{RegretTrace, SnapshotValue};

use super::alb_dim::{refit_support, AlbDimConfig};
use super::linucb::LinUcb;

/// Feature-norm scale `τ·√(2 ln(4TK/δ))`.
pub fn feature_scale(tau: f64, horizon: u64, arms: usize, delta: f64) -> Result<f64> {
    if !(tau > 0.0) {
        return Err(AlbError::contract(format!("tau must be positive, got {tau}")));
    }
    let arg = 4.0 * horizon as f64 * arms as f64 / delta;
    Ok(tau * (2.0 * arg.ln()).max(0.0).sqrt())
}

/// Ladder level covering an active set; level 1 when the set is empty.
pub fn level_for(ladder: &[usize], active: &SupportEstimate) -> usize {
    let needed = active.indices.iter().next_back().map_or(0, |j| j + 1);
    ladder_level(ladder, needed)
}

fn scale_for(env: &NestedEnv, cfg: &AlbDimConfig, horizon: u64) -> Result<f64> {
    feature_scale(env.instance.tau, horizon.max(1), env.arms(), cfg.delta)
}

/// Dimension-adaptive learner over a ladder of nested feature maps.
pub fn alb_dim_finite_run(env: &NestedEnv, cfg: &AlbDimConfig, horizon: u64) -> Result<RegretTrace> {
    cfg.validate()?;
    let d = env.dim();
    let ladder = &env.instance.ladder;
    let scale = scale_for(env, cfg, horizon)?;
    let mut trace = RegretTrace::new("alb_dim_finite");
    let mut store = RidgeState::new(d, 0.0)?;
    let mut active = SupportEstimate::full(d);
    for phase in cfg.phases() {
        if phase.start >= horizon {
            break;
        }
        let level = level_for(ladder, &active);
        trace.snapshot(phase.index, SnapshotValue::Ladder(level));
        let mut learner = LinUcb::new(ladder[level - 1], env.sigma(), phase.delta, scale)?;
        let block_end = phase.explore_start().min(horizon);
        for round in phase.start..block_end {
            let ctx = env.contexts(round);
            let arm = learner.select(&ctx)?;
            learner.observe(&ctx[arm], env.reward(round, &ctx, arm))?;
            trace.push(env.instant_regret(&ctx, arm));
        }
        let explore_end = phase.end().min(horizon);
        for round in block_end..explore_end {
            let ctx = env.contexts(round);
            let arm = env.explore_arm(round);
            store.update(&ctx[arm], env.reward(round, &ctx, arm))?;
            trace.push(env.instant_regret(&ctx, arm));
        }
        if explore_end < phase.end() {
            break;
        }
        active = refit_support(&store, cfg.threshold_base.powi(-(phase.index as i32 + 1)))?;
    }
    Ok(trace)
}

/// Ladder levels `M_0, …, M_phases` from the exploration blocks alone.
pub fn alb_dim_finite_levels(env: &NestedEnv, cfg: &AlbDimConfig, phases: usize) -> Result<Vec<usize>> {
    cfg.validate()?;
    let ladder = &env.instance.ladder;
    let mut store = RidgeState::new(env.dim(), 0.0)?;
    let mut out = vec![ladder.len()];
    for phase in cfg.phases().take(phases) {
        for round in phase.explore_start()..phase.end() {
            let ctx = env.contexts(round);
            let arm = env.explore_arm(round);
            store.update(&ctx[arm], env.reward(round, &ctx, arm))?;
        }
        let active = refit_support(&store, cfg.threshold_base.powi(-(phase.index as i32 + 1)))?;
        out.push(level_for(ladder, &active));
    }
    Ok(out)
}

fn fixed_level_run(env: &NestedEnv, cfg: &AlbDimConfig, level: usize, horizon: u64, name: &str) -> Result<RegretTrace> {
    cfg.validate()?;
    let scale = scale_for(env, cfg, horizon)?;
    let mut learner = LinUcb::new(env.instance.ladder[level - 1], env.sigma(), cfg.delta, scale)?;
    let mut trace = RegretTrace::new(name);
    for round in 0..horizon {
        let ctx = env.contexts(round);
        let arm = learner.select(&ctx)?;
        learner.observe(&ctx[arm], env.reward(round, &ctx, arm))?;
        trace.push(env.instant_regret(&ctx, arm));
    }
    Ok(trace)
}

/// Base learner on the largest map for the whole horizon.
pub fn full_ladder_run(env: &NestedEnv, cfg: &AlbDimConfig, horizon: u64) -> Result<RegretTrace> {
    fixed_level_run(env, cfg, env.instance.ladder.len(), horizon, "full_ladder")
}

/// Base learner on the true map for the whole horizon.
pub fn ladder_oracle_run(env: &NestedEnv, cfg: &AlbDimConfig, horizon: u64) -> Result<RegretTrace> {
    fixed_level_run(env, cfg, env.instance.true_level, horizon, "ladder_oracle")
}
