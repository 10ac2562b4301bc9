use std::time::Instant;

use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::config::{ExperimentConfig, ExperimentKind};
use crate::corpus::{ingest_csv, kmeans_cluster, ClusteredArms, ClusteredEnv};
use crate::envs::{
    ContinuumEnv, ContinuumInstance, Crn, MixtureEnv, MixtureInstance, NestedEnv, NestedFiniteInstance, Stream,
};
use crate::error::{AlbError, Result};
use crate::policies::{
    alb_dim_finite_run, alb_dim_run, alb_norm_run, dim_oracle_run, full_dim_run, full_ladder_run, ladder_oracle_run,
    norm_oracle_run, oful_plus_run, ucb1_run,
};
use crate::trace::RegretTrace;

/// All traces of one experiment, ordered by trial and then by algorithm.
#[derive(Debug, Clone)]
pub struct ExperimentResult {
    pub config: ExperimentConfig,
    pub seeds: Vec<u64>,
    pub traces: Vec<RegretTrace>,
    pub wall_clock_secs: f64,
}

impl ExperimentResult {
    pub fn algorithms(&self) -> Vec<String> {
        let mut names: Vec<String> = Vec::new();
        for t in &self.traces {
            if !names.contains(&t.algorithm) {
                names.push(t.algorithm.clone());
            }
        }
        names
    }
}

/// Policy randomness that is not tied to a round.
fn policy_rng(crn: &Crn) -> ChaCha8Rng {
    crn.rng(Stream::Policy, u64::MAX, 0)
}

fn instance_rng(crn: &Crn) -> ChaCha8Rng {
    crn.rng(Stream::Instance, 0, 0)
}

fn cluster(cfg: &ExperimentConfig) -> Result<Option<ClusteredArms>> {
    let Some(rd) = cfg.realdata.as_ref().filter(|_| cfg.kind == ExperimentKind::Realdata) else {
        return Ok(None);
    };
    let crn = Crn::new(cfg.base_seed);
    let mut rng = instance_rng(&crn);
    let rows = ingest_csv(&rd.csv, &rd.ingest, &mut rng)?;
    Ok(Some(kmeans_cluster(&rows, rd.clusters, rd.max_iters, &mut rng)?))
}

fn trial_traces(cfg: &ExperimentConfig, trial: usize, clustered: Option<&ClusteredArms>) -> Result<Vec<RegretTrace>> {
    let seed = cfg.base_seed.wrapping_add(trial as u64);
    let crn = Crn::new(seed);
    let inst = &cfg.instance;
    let t = cfg.horizon;
    let missing = |f: &str| AlbError::config(f, "required for this experiment kind");
    let mut traces = match cfg.kind {
        ExperimentKind::Norm => {
            let n = cfg.norm.ok_or_else(|| missing("norm"))?;
            let mixture = MixtureInstance::random(
                inst.dim.ok_or_else(|| missing("instance.dim"))?,
                inst.arms.ok_or_else(|| missing("instance.arms"))?,
                inst.theta_norm.ok_or_else(|| missing("instance.theta_norm"))?,
                inst.sigma,
                inst.context_law,
                &mut instance_rng(&crn),
            )?;
            let theta_norm = mixture.theta_star.norm();
            let env = MixtureEnv::new(mixture, crn);
            let mut oful = oful_plus_run(&env, n.baseline_b, n.delta1, n.width, t)?.0;
            oful.algorithm = "oful_plus".into();
            vec![
                alb_norm_run(&env, &n.learner(), t, &mut policy_rng(&crn))?,
                oful,
                norm_oracle_run(&env, theta_norm, n.delta1, n.width, t)?,
            ]
        }
        ExperimentKind::DimContinuum => {
            let dc = cfg.dim.ok_or_else(|| missing("dim"))?;
            let world = ContinuumInstance::random_sparse(
                inst.dim.ok_or_else(|| missing("instance.dim"))?,
                inst.sparsity.ok_or_else(|| missing("instance.sparsity"))?,
                inst.gamma.ok_or_else(|| missing("instance.gamma"))?,
                inst.sigma,
                &mut instance_rng(&crn),
            )?;
            let env = ContinuumEnv::new(world, crn);
            vec![alb_dim_run(&env, &dc, t)?, full_dim_run(&env, &dc, t)?, dim_oracle_run(&env, &dc, t)?]
        }
        ExperimentKind::DimFinite => {
            let dc = cfg.dim.ok_or_else(|| missing("dim"))?;
            let world = NestedFiniteInstance::random(
                inst.ladder.clone().ok_or_else(|| missing("instance.ladder"))?,
                inst.true_level.ok_or_else(|| missing("instance.true_level"))?,
                inst.gamma.ok_or_else(|| missing("instance.gamma"))?,
                inst.arms.ok_or_else(|| missing("instance.arms"))?,
                inst.tau.ok_or_else(|| missing("instance.tau"))?,
                inst.sigma,
                &mut instance_rng(&crn),
            )?;
            let env = NestedEnv::new(world, crn);
            vec![alb_dim_finite_run(&env, &dc, t)?, full_ladder_run(&env, &dc, t)?, ladder_oracle_run(&env, &dc, t)?]
        }
        ExperimentKind::Realdata => {
            let n = cfg.norm.ok_or_else(|| missing("norm"))?;
            let arms = clustered.ok_or_else(|| missing("realdata"))?.clone();
            let env = ClusteredEnv::new(arms, inst.sigma, crn);
            let mut oful = oful_plus_run(&env, n.baseline_b, n.delta1, n.width, t)?.0;
            oful.algorithm = "oful_plus".into();
            vec![alb_norm_run(&env, &n.learner(), t, &mut policy_rng(&crn))?, oful, ucb1_run(&env, t)?]
        }
    };
    for tr in &mut traces {
        tr.trial = trial;
        tr.seed = seed;
    }
    Ok(traces)
}

/// Runs one trial on its own; clustering for real data is redone here.
pub fn run_trial(cfg: &ExperimentConfig, trial: usize) -> Result<Vec<RegretTrace>> {
    cfg.validate()?;
    trial_traces(cfg, trial, cluster(cfg)?.as_ref())
}

/// Runs every trial on `threads` workers. Output order and contents do not
/// depend on the thread count.
pub fn run_experiment(cfg: &ExperimentConfig, threads: usize) -> Result<ExperimentResult> {
    cfg.validate()?;
    let start = Instant::now();
    let clustered = cluster(cfg)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| AlbError::contract(format!("thread pool: {e}")))?;
    let per_trial: Vec<Vec<RegretTrace>> = pool.install(|| {
        (0..cfg.trials).into_par_iter().map(|trial| trial_traces(cfg, trial, clustered.as_ref())).collect::<Result<_>>()
    })?;
    Ok(ExperimentResult {
        config: cfg.clone(),
        seeds: cfg.seeds(),
        traces: per_trial.into_iter().flatten().collect(),
        wall_clock_secs: start.elapsed().as_secs_f64(),
    })
}
