//! Norm adaptation on a mixture bandit whose initial bound is 100x too large.
//!
//! Run with `cargo run --release --example norm_adaptation`.

use alb::confidence::WidthRule;
use alb::envs::{ContextLaw, Crn, MixtureEnv, MixtureInstance, Stream};
use alb::policies::{alb_norm_run_with, norm_oracle_run, oful_plus_run, AlbNormConfig};

fn main() -> alb::Result<()> {
    let crn = Crn::new(42);
    let sigma = 0.5f64.sqrt();
    let world = MixtureInstance::random(20, 20, 0.1, sigma, ContextLaw::StandardNormal, &mut crn.rng(Stream::Instance, 0, 0))?;
    let theta_norm = world.theta_star.norm();
    let env = MixtureEnv::new(world, crn);
    let width = WidthRule::Compact { c: 1.0 };
    let cfg = AlbNormConfig { tau: 20, t1: 100, delta1: 0.1, delta_s: 0.1, b1_override: Some(10.0), width };
    let horizon = 20_000;

    println!("true norm {theta_norm:.3}");
    let alb = alb_norm_run_with(&env, &cfg, horizon, &mut crn.rng(Stream::Policy, u64::MAX, 0), |r| {
        println!("epoch {:>2}: b = {:>7.3}, delta = {:.4}, rounds {}", r.index, r.b, r.delta, r.played);
    })?;
    let (oful, _) = oful_plus_run(&env, 10.0, 0.1, width, horizon)?;
    let oracle = norm_oracle_run(&env, theta_norm, 0.1, width, horizon)?;
    for t in [&alb, &oful, &oracle] {
        println!("{:<12} final regret {:.1}", t.algorithm, t.final_regret());
    }
    Ok(())
}
