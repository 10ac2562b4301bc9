//! Model selection over a ladder of nested feature maps with finitely many
//! arms. The truth lives on the smallest map.

use alb::envs::{Crn, NestedEnv, NestedFiniteInstance, Stream};
use alb::policies::{alb_dim_finite_levels, alb_dim_finite_run, full_ladder_run, ladder_oracle_run, AlbDimConfig};

fn main() -> alb::Result<()> {
    let crn = Crn::new(3);
    let world =
        NestedFiniteInstance::random(vec![5, 10, 20], 1, 0.25, 10, 20f64.sqrt(), 0.25, &mut crn.rng(Stream::Instance, 0, 0))?;
    let env = NestedEnv::new(world, crn);
    let cfg = AlbDimConfig::new(100, 0.1);

    let levels = alb_dim_finite_levels(&env, &cfg, 6)?;
    println!("selected level per phase: {levels:?} (truth: 1)");

    let horizon = 30_000;
    for t in [
        alb_dim_finite_run(&env, &cfg, horizon)?,
        full_ladder_run(&env, &cfg, horizon)?,
        ladder_oracle_run(&env, &cfg, horizon)?,
    ] {
        println!("{:<15} final regret {:.1}", t.algorithm, t.final_regret());
    }
    Ok(())
}
