use nalgebra::DVector;

use crate::confidence::{ConfidenceBall, RadiusParams, RidgeState, WidthRule};
use crate::error::{AlbError, Result};

/// Index of the largest entry; ties go to the lowest index.
pub fn argmax(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, v) in values.iter().enumerate().skip(1) {
        if *v > values[best] {
            best = i;
        }
    }
    best
}

/// Bias-aware optimistic learner over an ℓ₂ confidence ball.
///
/// Keeps per-arm empirical means for the biases and a ridge fit (λ = 1) of
/// the bias-corrected residuals `g − μ̃` for the shared parameter.
#[derive(Debug, Clone)]
pub struct OfulPlusState {
    params: RadiusParams,
    width: WidthRule,
    pulls: Vec<u64>,
    means: Vec<f64>,
    ridge: RidgeState,
    ball: ConfidenceBall,
    round: u64,
}

impl OfulPlusState {
    pub fn new(params: RadiusParams, width: WidthRule) -> Result<Self> {
        params.validate()?;
        let ridge = RidgeState::new(params.dim, 1.0)?;
        let ball = ConfidenceBall::new(DVector::zeros(params.dim), width.radius(params.b, 1, &params))?;
        Ok(Self { pulls: vec![0; params.arms], means: vec![0.0; params.arms], params, width, ridge, ball, round: 0 })
    }

    /// Starts with one recorded pull per arm and an empty ridge.
    pub fn with_seeds(params: RadiusParams, width: WidthRule, seeds: &[f64]) -> Result<Self> {
        if seeds.len() != params.arms {
            return Err(AlbError::DimensionMismatch { expected: params.arms, actual: seeds.len() });
        }
        let mut s = Self::new(params, width)?;
        s.pulls.fill(1);
        s.means.copy_from_slice(seeds);
        Ok(s)
    }

    pub fn params(&self) -> &RadiusParams {
        &self.params
    }

    pub fn ball(&self) -> &ConfidenceBall {
        &self.ball
    }

    pub fn ridge(&self) -> &RidgeState {
        &self.ridge
    }

    pub fn pulls(&self) -> &[u64] {
        &self.pulls
    }

    pub fn means(&self) -> &[f64] {
        &self.means
    }

    pub fn round(&self) -> u64 {
        self.round
    }

    pub fn optimistic_mean(&self, arm: usize) -> Result<f64> {
        self.width.optimistic_mean(self.means[arm], self.pulls[arm], &self.params)
    }

    /// Per-arm index `μ̃_i + ⟨α_i, θ̂⟩ + radius·‖α_i‖`.
    pub fn indices(&self, contexts: &[DVector<f64>]) -> Result<Vec<f64>> {
        if contexts.len() != self.params.arms {
            return Err(AlbError::DimensionMismatch { expected: self.params.arms, actual: contexts.len() });
        }
        contexts
            .iter()
            .enumerate()
            .map(|(i, a)| {
                if self.pulls[i] == 0 {
                    return Err(AlbError::contract(format!("arm {i} has not been pulled; seed every arm first")));
                }
                Ok(self.optimistic_mean(i)? + self.ball.optimistic_value(a))
            })
            .collect()
    }

    pub fn select(&self, contexts: &[DVector<f64>]) -> Result<usize> {
        Ok(argmax(&self.indices(contexts)?))
    }

    /// Records a pull. The ridge sees `(α_arm, reward − μ̃_arm)` with the
    /// optimistic mean taken before this reward is absorbed.
    pub fn observe(&mut self, contexts: &[DVector<f64>], arm: usize, reward: f64) -> Result<()> {
        if arm >= self.params.arms {
            return Err(AlbError::contract(format!("arm {arm} out of range")));
        }
        let corrected = if self.pulls[arm] > 0 { Some(reward - self.optimistic_mean(arm)?) } else { None };
        let n = self.pulls[arm] + 1;
        self.means[arm] += (reward - self.means[arm]) / n as f64;
        self.pulls[arm] = n;
        if let Some(y) = corrected {
            self.ridge.update(&contexts[arm], y)?;
        }
        self.round += 1;
        self.refresh_ball()
    }

    fn refresh_ball(&mut self) -> Result<()> {
        let center = self.ridge.estimate()?;
        let radius = self.width.radius(self.params.b, self.ridge.count().max(1), &self.params);
        self.ball = ConfidenceBall::new(center, radius)?;
        Ok(())
    }
}

pub fn oful_plus_select(state: &OfulPlusState, contexts: &[DVector<f64>]) -> Result<usize> {
    state.select(contexts)
}

pub fn oful_plus_observe(state: &mut OfulPlusState, contexts: &[DVector<f64>], arm: usize, reward: f64) -> Result<()> {
    state.observe(contexts, arm, reward)
}

/// Refined norm bound `max_{θ ∈ ball} ‖θ‖`.
pub fn norm_refine(ball: &ConfidenceBall) -> f64 {
    ball.max_norm()
}
