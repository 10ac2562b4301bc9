//! Ratings CSV to clustered arms to a norm-adaptive run.
//!
//! A synthetic file on the 0..4 rating scale stands in for a real ratings
//! table. Pass an output directory as the first argument to keep the files.

use std::path::PathBuf;

use alb::corpus::{ingest_csv, kmeans_cluster, read_arms_csv, synthetic_ratings, write_arms_csv, write_ratings_csv};
use alb::corpus::{ClusteredEnv, IngestOptions};
use alb::envs::{ArmEnvironment, Crn, Stream};
use alb::policies::{alb_norm_run, oful_plus_run, ucb1_run, AlbNormConfig};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> alb::Result<()> {
    let dir = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(|| std::env::temp_dir().join("alb_realdata"));
    std::fs::create_dir_all(&dir).map_err(|e| alb::AlbError::Io { path: dir.clone(), source: e })?;
    let mut rng = ChaCha8Rng::seed_from_u64(11);

    let ratings = dir.join("ratings.csv");
    write_ratings_csv(&synthetic_ratings(5000, 30, &mut rng), &ratings)?;
    let opts = IngestOptions { row_limit: Some(2000), col_limit: Some(10), ..IngestOptions::default() };
    let rows = ingest_csv(&ratings, &opts, &mut rng)?;
    let arms = kmeans_cluster(&rows, 40, 100, &mut rng)?;
    println!("{} rows, {} arms, distortion {:.2}", rows.len(), arms.k(), arms.distortion());

    let arms_csv = dir.join("arms.csv");
    write_arms_csv(&arms, &arms_csv)?;
    let env = ClusteredEnv::new(read_arms_csv(&arms_csv)?, 0.5, Crn::new(11));
    println!("rho_min of the centroids {:.4}", env.rho_min());

    let horizon = 20_000;
    let cfg = AlbNormConfig {
        tau: 10,
        t1: 100,
        delta1: 0.1,
        delta_s: 0.1,
        b1_override: Some(10.0),
        width: alb::confidence::WidthRule::Compact { c: 1.0 },
    };
    let alb = alb_norm_run(&env, &cfg, horizon, &mut Crn::new(11).rng(Stream::Policy, u64::MAX, 0))?;
    let (oful, _) = oful_plus_run(&env, 10.0, 0.1, cfg.width, horizon)?;
    let ucb = ucb1_run(&env, horizon)?;
    let bounds: Vec<String> = alb.snapshots.iter().map(|s| format!("{:.2}", s.value.scalar())).collect();
    println!("norm bounds per epoch: {}", bounds.join(" "));
    for t in [&alb, &oful, &ucb] {
        println!("{:<10} final regret {:.1}", t.algorithm, t.final_regret());
    }
    println!("files in {}", dir.display());
    Ok(())
}
