use crate::error::{AlbError, Result};
use crate::trace::RegretTrace;

/// Pointwise mean and sample standard deviation of several curves.
#[derive(Debug, Clone, PartialEq)]
pub struct Aggregate {
    pub algorithm: String,
    pub mean: Vec<f64>,
    pub std: Vec<f64>,
}

/// Mean and `n − 1` standard deviation per round; zero spread for a single
/// trace.
pub fn aggregate(traces: &[&RegretTrace]) -> Result<(Vec<f64>, Vec<f64>)> {
    let Some(first) = traces.first() else {
        return Ok((Vec::new(), Vec::new()));
    };
    let len = first.cum_regret.len();
    if let Some(bad) = traces.iter().find(|t| t.cum_regret.len() != len) {
        return Err(AlbError::DimensionMismatch { expected: len, actual: bad.cum_regret.len() });
    }
    let n = traces.len() as f64;
    let mut mean = vec![0.0; len];
    let mut std = vec![0.0; len];
    for r in 0..len {
        // Welford for stability on long cumulative sums
        let (mut m, mut s) = (0.0, 0.0);
        for (k, t) in traces.iter().enumerate() {
            let x = t.cum_regret[r];
            let delta = x - m;
            m += delta / (k + 1) as f64;
            s += delta * (x - m);
        }
        mean[r] = m;
        std[r] = if traces.len() > 1 { (s / (n - 1.0)).sqrt() } else { 0.0 };
    }
    Ok((mean, std))
}

/// Groups traces by algorithm in first-appearance order and aggregates each.
pub fn aggregate_by_algorithm(traces: &[RegretTrace]) -> Result<Vec<Aggregate>> {
    let mut names: Vec<&str> = Vec::new();
    for t in traces {
        if !names.contains(&t.algorithm.as_str()) {
            names.push(&t.algorithm);
        }
    }
    names
        .into_iter()
        .map(|name| {
            let group: Vec<&RegretTrace> = traces.iter().filter(|t| t.algorithm == name).collect();
            let (mean, std) = aggregate(&group)?;
            Ok(Aggregate { algorithm: name.to_string(), mean, std })
        })
        .collect()
}
