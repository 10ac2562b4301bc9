use crate::envs::ArmEnvironment;
use crate::error::{AlbError, Result};
use crate::trace::RegretTrace;

use super::oful_plus::argmax;

/// `argmax_i mean_i + σ·√(2 ln t / n_i)`, lowest index on ties.
pub fn ucb1_select(means: &[f64], counts: &[u64], t: u64, sigma: f64) -> Result<usize> {
    if means.len() != counts.len() {
        return Err(AlbError::DimensionMismatch { expected: means.len(), actual: counts.len() });
    }
    if let Some(i) = counts.iter().position(|&n| n == 0) {
        return Err(AlbError::contract(format!("arm {i} has zero pulls")));
    }
    let log_t = (t.max(1) as f64).ln();
    let index: Vec<f64> =
        means.iter().zip(counts).map(|(m, &n)| m + sigma * (2.0 * log_t / n as f64).sqrt()).collect();
    Ok(argmax(&index))
}

/// Context-blind UCB1 on a finite-armed world: one pull per arm, then the
/// index rule.
pub fn ucb1_run<E: ArmEnvironment>(env: &E, horizon: u64) -> Result<RegretTrace> {
    let k = env.arms();
    let mut trace = RegretTrace::new("ucb1");
    let mut means = vec![0.0; k];
    let mut counts = vec![0u64; k];
    for round in 0..horizon {
        let ctx = env.contexts(round);
        let arm = if (round as usize) < k { round as usize } else { ucb1_select(&means, &counts, round + 1, env.sigma())? };
        let g = env.reward(round, &ctx, arm);
        counts[arm] += 1;
        means[arm] += (g - means[arm]) / counts[arm] as f64;
        trace.push(env.instant_regret(&ctx, arm));
    }
    Ok(trace)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equal_counts_pick_best_mean() {
        assert_eq!(ucb1_select(&[0.1, 0.7, 0.3], &[5, 5, 5], 15, 1.0).unwrap(), 1);
    }

    #[test]
    fn larger_bonus_wins_on_equal_means() {
        assert_eq!(ucb1_select(&[0.5, 0.5], &[10, 1], 100, 1.0).unwrap(), 1);
    }

    #[test]
    fn scripted_state_matches_direct_index() {
        let means = [0.2, 0.9, -0.1, 0.6, 0.4];
        let counts = [3u64, 40, 1, 12, 7];
        let t = 63u64;
        let sigma = 0.5;
        let idx: Vec<f64> = (0..5).map(|i| means[i] + sigma * (2.0 * (t as f64).ln() / counts[i] as f64).sqrt()).collect();
        let best = (0..5).max_by(|a, b| idx[*a].partial_cmp(&idx[*b]).unwrap()).unwrap();
        assert_eq!(ucb1_select(&means, &counts, t, sigma).unwrap(), best);
    }

    #[test]
    fn zero_count_rejected() {
        assert!(ucb1_select(&[0.0, 1.0], &[1, 0], 3, 1.0).is_err());
    }

    #[test]
    fn ties_take_lowest_index() {
        assert_eq!(ucb1_select(&[0.5, 0.5, 0.5], &[2, 2, 2], 6, 1.0).unwrap(), 0);
    }
}
