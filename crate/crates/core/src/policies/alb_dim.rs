use serde::{Deserialize, Serialize};

use crate::confidence::{support_threshold, RidgeState, SupportEstimate};
use crate::envs::{ContinuumEnv, Stream};
use crate::error::{AlbError, Result};
use crate::trace::{RegretTrace, SnapshotValue};

use super::oful_continuum::{OfulContinuum, DEFAULT_CANDIDATES};
use super::schedule::{dim_schedule, DimPhase};

fn default_threshold_base() -> f64 {
    2.0
}

fn default_candidates() -> usize {
    DEFAULT_CANDIDATES
}

/// Dimension-adaptive learner settings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlbDimConfig {
    /// Phase-0 regret block length.
    pub t0: u64,
    pub delta: f64,
    /// `C` in `ε_i = C^{-i}`.
    #[serde(default = "default_threshold_base")]
    pub threshold_base: f64,
    /// Uniform candidates per round for the continuum inner learner.
    #[serde(default = "default_candidates")]
    pub candidates: usize,
}

impl AlbDimConfig {
    pub fn new(t0: u64, delta: f64) -> Self {
        Self { t0, delta, threshold_base: 2.0, candidates: DEFAULT_CANDIDATES }
    }

    pub fn validate(&self) -> Result<()> {
        if self.t0 == 0 {
            return Err(AlbError::config("t0", "must be >= 1"));
        }
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return Err(AlbError::config("delta", format!("must lie in (0,1), got {}", self.delta)));
        }
        if !(self.threshold_base > 1.0) {
            return Err(AlbError::config("threshold_base", format!("must exceed 1, got {}", self.threshold_base)));
        }
        Ok(())
    }

    pub fn phases(&self) -> impl Iterator<Item = DimPhase> {
        dim_schedule(self.t0, self.delta, self.threshold_base)
    }
}

/// Least-squares refit of the exploration store, thresholded at `ε/2`.
pub(crate) fn refit_support(store: &RidgeState, epsilon: f64) -> Result<SupportEstimate> {
    support_threshold(&store.solve_with_fallback(), epsilon)
}

/// State reported after each completed phase.
#[derive(Debug)]
pub struct PhaseReport<'a> {
    pub phase: DimPhase,
    pub active: &'a SupportEstimate,
    /// Exploration samples gathered so far, all phases included.
    pub store_len: u64,
}

/// Dimension-adaptive OFUL over the unit ball.
pub fn alb_dim_run(env: &ContinuumEnv, cfg: &AlbDimConfig, horizon: u64) -> Result<RegretTrace> {
    alb_dim_run_with(env, cfg, horizon, |_| {})
}

pub fn alb_dim_run_with<F>(env: &ContinuumEnv, cfg: &AlbDimConfig, horizon: u64, mut observer: F) -> Result<RegretTrace>
where
    F: FnMut(&PhaseReport<'_>),
{
    cfg.validate()?;
    let d = env.dim();
    let sigma = env.instance.sigma;
    let mut trace = RegretTrace::new("alb_dim");
    let mut store = RidgeState::new(d, 0.0)?;
    let mut active = SupportEstimate::full(d);
    for phase in cfg.phases() {
        if phase.start >= horizon {
            break;
        }
        trace.snapshot(phase.index, SnapshotValue::Support(active.to_vec()));
        let mut learner = OfulContinuum::new(d, active.to_vec(), sigma, phase.delta, cfg.candidates)?;
        let block_end = phase.explore_start().min(horizon);
        for round in phase.start..block_end {
            let x = learner.select(&mut env.crn.rng(Stream::Policy, round, 0))?;
            let g = env.reward(round, &x);
            learner.observe(&x, g)?;
            trace.push(env.instance.instant_regret(&x));
        }
        let explore_end = phase.end().min(horizon);
        for round in block_end..explore_end {
            let x = env.explore_arm(round);
            store.update(&x, env.reward(round, &x))?;
            trace.push(env.instance.instant_regret(&x));
        }
        if explore_end < phase.end() {
            break;
        }
        active = refit_support(&store, cfg.threshold_base.powi(-(phase.index as i32 + 1)))?;
        observer(&PhaseReport { phase, active: &active, store_len: store.count() });
    }
    Ok(trace)
}

/// Active sets `D_0, …, D_phases` from the exploration blocks alone.
///
/// Exploration arms and noise are keyed by round, so this reproduces the
/// sets a full run would use without playing the regret blocks, which makes
/// late phases reachable.
pub fn alb_dim_supports(env: &ContinuumEnv, cfg: &AlbDimConfig, phases: usize) -> Result<Vec<SupportEstimate>> {
    cfg.validate()?;
    let d = env.dim();
    let mut store = RidgeState::new(d, 0.0)?;
    let mut out = vec![SupportEstimate::full(d)];
    for phase in cfg.phases().take(phases) {
        for round in phase.explore_start()..phase.end() {
            let x = env.explore_arm(round);
            store.update(&x, env.reward(round, &x))?;
        }
        out.push(refit_support(&store, cfg.threshold_base.powi(-(phase.index as i32 + 1)))?);
    }
    Ok(out)
}

fn restricted_run(
    env: &ContinuumEnv,
    active: Vec<usize>,
    delta: f64,
    candidates: usize,
    horizon: u64,
    name: &str,
) -> Result<RegretTrace> {
    let mut learner = OfulContinuum::new(env.dim(), active, env.instance.sigma, delta, candidates)?;
    let mut trace = RegretTrace::new(name);
    for round in 0..horizon {
        let x = learner.select(&mut env.crn.rng(Stream::Policy, round, 0))?;
        let g = env.reward(round, &x);
        learner.observe(&x, g)?;
        trace.push(env.instance.instant_regret(&x));
    }
    Ok(trace)
}

/// OFUL on every coordinate for the whole horizon.
pub fn full_dim_run(env: &ContinuumEnv, cfg: &AlbDimConfig, horizon: u64) -> Result<RegretTrace> {
    restricted_run(env, (0..env.dim()).collect(), cfg.delta, cfg.candidates, horizon, "oful")
}

/// OFUL restricted to the true support from the first round.
pub fn dim_oracle_run(env: &ContinuumEnv, cfg: &AlbDimConfig, horizon: u64) -> Result<RegretTrace> {
    restricted_run(env, env.instance.support(), cfg.delta, cfg.candidates, horizon, "dim_oracle")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::envs::{ContinuumInstance, Crn};
    use nalgebra::DVector;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn sparse_env(sigma: f64, seed: u64) -> ContinuumEnv {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let inst = ContinuumInstance::random_sparse(6, 2, 0.4, sigma, &mut rng).unwrap();
        ContinuumEnv::new(inst, Crn::new(seed))
    }

    fn small_cfg() -> AlbDimConfig {
        AlbDimConfig { candidates: 32, ..AlbDimConfig::new(16, 0.1) }
    }

    #[test]
    fn phase_lengths() {
        let p: Vec<_> = AlbDimConfig::new(100, 0.1).phases().take(3).collect();
        assert_eq!(p.iter().map(|p| p.regret_len).collect::<Vec<_>>(), vec![100, 2500, 62500]);
        assert_eq!(p.iter().map(|p| p.explore_len).collect::<Vec<_>>(), vec![10, 50, 250]);
    }

    #[test]
    fn noiseless_singleton_recovered() {
        let mut theta = DVector::zeros(4);
        theta[2] = 0.5;
        let env = ContinuumEnv::new(ContinuumInstance::new(theta, 0.0).unwrap(), Crn::new(1));
        let cfg = AlbDimConfig::new(16, 0.1);
        let sets = alb_dim_supports(&env, &cfg, 4).unwrap();
        for s in &sets[2..] {
            assert_eq!(s.to_vec(), vec![2]);
        }
    }

    #[test]
    fn arms_stay_on_active_set() {
        let env = sparse_env(0.1, 3);
        let cfg = small_cfg();
        let mut seen = Vec::new();
        let trace = alb_dim_run_with(&env, &cfg, 16 + 4 + 400 + 20 + 300, |r| seen.push(r.active.clone())).unwrap();
        assert_eq!(trace.rounds(), 740);
        assert_eq!(seen.len(), 2);
        // replay the second regret block and check confinement directly
        let phase1 = cfg.phases().nth(1).unwrap();
        let mut learner = OfulContinuum::new(6, seen[0].to_vec(), 0.1, phase1.delta, 32).unwrap();
        for round in phase1.start..phase1.start + 50 {
            let x = learner.select(&mut env.crn.rng(Stream::Policy, round, 0)).unwrap();
            for j in 0..6 {
                if !seen[0].indices.contains(&j) {
                    assert_eq!(x[j], 0.0);
                }
            }
            learner.observe(&x, env.reward(round, &x)).unwrap();
        }
    }

    #[test]
    fn trajectory_matches_full_run() {
        let env = sparse_env(0.2, 4);
        let cfg = small_cfg();
        let mut seen = Vec::new();
        alb_dim_run_with(&env, &cfg, 2000, |r| seen.push(r.active.clone())).unwrap();
        let sets = alb_dim_supports(&env, &cfg, seen.len()).unwrap();
        assert_eq!(&sets[1..], &seen[..]);
    }

    #[test]
    fn store_size_accumulates() {
        let env = sparse_env(0.2, 5);
        let cfg = small_cfg();
        let mut sizes = Vec::new();
        alb_dim_run_with(&env, &cfg, 2000, |r| sizes.push(r.store_len)).unwrap();
        assert_eq!(sizes, vec![4, 24]);
    }

    #[test]
    fn baselines_have_full_length() {
        let env = sparse_env(0.2, 6);
        let cfg = small_cfg();
        assert_eq!(full_dim_run(&env, &cfg, 50).unwrap().rounds(), 50);
        assert_eq!(dim_oracle_run(&env, &cfg, 50).unwrap().rounds(), 50);
    }
}
