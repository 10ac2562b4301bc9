//! Dimension adaptation on a sparse continuum bandit: prints the active set
//! after every phase and compares regret with full-dimension OFUL.

use alb::envs::{ContinuumEnv, ContinuumInstance, Crn, Stream};
use alb::policies::{alb_dim_run_with, dim_oracle_run, full_dim_run, AlbDimConfig};

fn main() -> alb::Result<()> {
    let crn = Crn::new(7);
    let world = ContinuumInstance::random_sparse(12, 3, 0.3, 0.1, &mut crn.rng(Stream::Instance, 0, 0))?;
    println!("true support {:?}", world.support());
    let env = ContinuumEnv::new(world, crn);
    let cfg = AlbDimConfig { candidates: 64, ..AlbDimConfig::new(50, 0.1) };
    let horizon = 20_000;

    let alb = alb_dim_run_with(&env, &cfg, horizon, |r| {
        println!(
            "phase {}: {} exploration samples so far, active set {:?}",
            r.phase.index,
            r.store_len,
            r.active.to_vec()
        );
    })?;
    let full = full_dim_run(&env, &cfg, horizon)?;
    let oracle = dim_oracle_run(&env, &cfg, horizon)?;
    for t in [&alb, &full, &oracle] {
        println!("{:<10} final regret {:.1}", t.algorithm, t.final_regret());
    }
    Ok(())
}
