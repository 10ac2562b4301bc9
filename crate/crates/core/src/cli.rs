//! Command implementations behind the `alb` binary. Each returns the text it
//! reports so that callers decide where it goes.

use std::path::{Path, PathBuf};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::confidence::theoretical_t0;
use crate::corpus::{ingest_csv, kmeans_cluster, write_arms_csv, IngestOptions};
use crate::error::{AlbError, Result};
use crate::harness::{aggregate_by_algorithm, run_experiment, write_traces, ExperimentConfig, Manifest};
use crate::plot::{plot_csv, PlotKind};
use crate::policies::feature_scale;

/// Action set used by [`cmd_t0`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum T0Mode {
    /// Unit ball, scale 1.
    Continuum,
    /// Finitely many arms, scaled by the feature bound.
    Finite { tau: f64, horizon: u64, arms: usize },
}

/// Runs every trial of a config and writes the trace files into `out_dir`.
/// Returns the manifest and one summary line per algorithm.
pub fn cmd_run(config_path: &Path, out_dir: &Path, threads: usize) -> Result<(Manifest, Vec<String>)> {
    let cfg = ExperimentConfig::load(config_path)?;
    let result = run_experiment(&cfg, threads)?;
    let aggregates = aggregate_by_algorithm(&result.traces)?;
    let manifest = write_traces(&result, &aggregates, out_dir)?;
    let lines = manifest
        .summary
        .iter()
        .map(|s| format!("{:<14} final regret {:.3} ± {:.3}", s.algorithm, s.final_mean, s.final_std))
        .collect();
    Ok((manifest, lines))
}

/// Initial phase length for uniform-sphere exploration in dimension `dim`.
pub fn cmd_t0(dim: usize, delta: f64, sigma: f64, mode: T0Mode) -> Result<u64> {
    if dim == 0 {
        return Err(AlbError::config("d", "must be >= 1"));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(AlbError::config("delta", format!("must lie in (0,1), got {delta}")));
    }
    if !(sigma >= 0.0) || !sigma.is_finite() {
        return Err(AlbError::config("sigma", format!("must be finite and >= 0, got {sigma}")));
    }
    let scale = match mode {
        T0Mode::Continuum => 1.0,
        T0Mode::Finite { tau, horizon, arms } => {
            if horizon == 0 || arms == 0 {
                return Err(AlbError::config("T/K", "must both be >= 1"));
            }
            feature_scale(tau, horizon, arms, delta)?
        }
    };
    let lambda = 1.0 / dim as f64;
    theoretical_t0(dim, delta, sigma, lambda, lambda, scale)
}

/// Clusters a ratings CSV into `k` arms and writes `arms.csv`. A directory
/// `out` receives `arms.csv` inside it. Returns the written path.
pub fn cmd_cluster(csv: &Path, k: usize, out: &Path, opts: &IngestOptions, seed: u64) -> Result<PathBuf> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows = ingest_csv(csv, opts, &mut rng)?;
    let arms = kmeans_cluster(&rows, k, 100, &mut rng)?;
    let path = if out.is_dir() { out.join("arms.csv") } else { out.to_path_buf() };
    write_arms_csv(&arms, &path)?;
    Ok(path)
}

/// Renders a `regret.csv` or `snapshots.csv` file to SVG.
pub fn cmd_plot(csv: &Path, out_svg: &Path, kind: PlotKind) -> Result<()> {
    plot_csv(csv, out_svg, kind).map(|_| ())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn t0_noiseless_two_dim() {
        assert_eq!(cmd_t0(2, 0.1, 0.0, T0Mode::Continuum).unwrap(), 29635);
    }

    #[test]
    fn finite_mode_with_unit_scale_matches_continuum() {
        // b(δ) = τ√(2 ln(4TK/δ)) = 1
        let (horizon, arms, delta) = (100u64, 10usize, 0.1);
        let tau = 1.0 / (2.0 * (4.0 * 1000.0f64 / delta).ln()).sqrt();
        let finite = cmd_t0(2, delta, 0.0, T0Mode::Finite { tau, horizon, arms }).unwrap();
        assert_eq!(finite, cmd_t0(2, delta, 0.0, T0Mode::Continuum).unwrap());
    }

    #[test]
    fn doubling_dimension_increases() {
        let mut prev = 0;
        for d in [1, 2, 4, 8, 16, 32] {
            let v = cmd_t0(d, 0.1, 0.5, T0Mode::Continuum).unwrap();
            assert!(v > prev);
            prev = v;
        }
    }

    #[test]
    fn bad_ranges_are_user_errors() {
        for e in [cmd_t0(0, 0.1, 0.0, T0Mode::Continuum), cmd_t0(2, 1.5, 0.0, T0Mode::Continuum)] {
            assert!(e.unwrap_err().is_user_error());
        }
    }
}
