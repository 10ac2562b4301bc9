//! Empirical coverage of the bias-aware confidence ball and of the initial
//! norm bound.

use alb::confidence::{initial_norm_estimate, k_delta, WidthRule};
use alb::envs::{ArmEnvironment, ContextLaw, Crn, MixtureEnv, MixtureInstance, Stream};
use alb::policies::oful_plus_run;

fn main() -> alb::Result<()> {
    let trials = 100;
    let (mut inside, mut safe) = (0, 0);
    let mut worst_ratio = 0.0f64;
    for trial in 0..trials {
        let crn = Crn::new(trial);
        let world = MixtureInstance::random(5, 5, 1.0, 0.5, ContextLaw::StandardNormal, &mut crn.rng(Stream::Instance, 0, 0))?;
        let theta = world.theta_star.clone();
        let env = MixtureEnv::new(world, crn);

        let (_, state) = oful_plus_run(&env, 1.0, 0.05, WidthRule::Explicit, 2000)?;
        let state = state.expect("horizon exceeds the arm count");
        let err = (state.ridge().estimate()? - &theta).norm();
        let radius = k_delta(1.0, state.ridge().count(), state.params());
        inside += (err <= radius) as usize;
        worst_ratio = worst_ratio.max(err / radius);

        // 2τ pulls of arm 0 feed the paired-difference estimator
        let (mut rewards, mut contexts) = (Vec::new(), Vec::new());
        for round in 0..20 {
            let ctx = env.contexts(round);
            rewards.push(env.reward(round, &ctx, 0));
            contexts.push(ctx[0].clone());
        }
        safe += (initial_norm_estimate(&rewards, &contexts, 0.5, 0.1)?.bound >= theta.norm()) as usize;
    }
    println!("ball covers theta* in {inside}/{trials} runs (largest error/radius {worst_ratio:.3})");
    println!("initial bound >= |theta*| in {safe}/{trials} runs");
    Ok(())
}
