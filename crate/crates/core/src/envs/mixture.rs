use nalgebra::DVector;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::{sample_gaussian, sample_uniform_sphere, ArmEnvironment, Crn, Stream};
use crate::error::{AlbError, Result};

/// Per-arm context distribution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum ContextLaw {
    #[default]
    StandardNormal,
    UniformSphere,
}

impl ContextLaw {
    /// Smallest eigenvalue of `E[α αᵀ]`.
    pub fn rho_min(self, dim: usize) -> f64 {
        match self {
            ContextLaw::StandardNormal => 1.0,
            ContextLaw::UniformSphere => 1.0 / dim as f64,
        }
    }

    pub fn sample<R: Rng + ?Sized>(self, dim: usize, rng: &mut R) -> DVector<f64> {
        match self {
            ContextLaw::StandardNormal => sample_gaussian(dim, 1.0, rng),
            ContextLaw::UniformSphere => sample_uniform_sphere(dim, rng),
        }
    }
}

/// K-armed mixture world: arm `i` pays `μ_i + ⟨α_i, θ*⟩ + η`.
#[derive(Debug, Clone, PartialEq)]
pub struct MixtureInstance {
    pub theta_star: DVector<f64>,
    pub biases: Vec<f64>,
    pub sigma: f64,
    pub context_law: ContextLaw,
    pub rho_min: f64,
}

impl MixtureInstance {
    pub fn new(theta_star: DVector<f64>, biases: Vec<f64>, sigma: f64, context_law: ContextLaw) -> Result<Self> {
        if biases.is_empty() {
            return Err(AlbError::contract("mixture instance needs at least one arm"));
        }
        if let Some(b) = biases.iter().find(|b| !(b.abs() <= 1.0)) {
            return Err(AlbError::contract(format!("arm bias {b} outside [-1, 1]")));
        }
        if !(sigma >= 0.0) {
            return Err(AlbError::contract("noise scale must be nonnegative"));
        }
        let rho_min = context_law.rho_min(theta_star.len());
        Ok(Self { theta_star, biases, sigma, context_law, rho_min })
    }

    /// θ* uniform in direction with norm `theta_norm`; biases `U[-1, 1]`.
    pub fn random<R: Rng + ?Sized>(
        dim: usize,
        arms: usize,
        theta_norm: f64,
        sigma: f64,
        context_law: ContextLaw,
        rng: &mut R,
    ) -> Result<Self> {
        let theta = sample_uniform_sphere(dim, rng) * theta_norm;
        let biases = (0..arms).map(|_| rng.random_range(-1.0..=1.0)).collect();
        Self::new(theta, biases, sigma, context_law)
    }

    pub fn arms(&self) -> usize {
        self.biases.len()
    }

    pub fn dim(&self) -> usize {
        self.theta_star.len()
    }

    pub fn sample_contexts<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<DVector<f64>> {
        (0..self.arms()).map(|_| self.context_law.sample(self.dim(), rng)).collect()
    }

    pub fn mean(&self, contexts: &[DVector<f64>], arm: usize) -> f64 {
        self.biases[arm] + contexts[arm].dot(&self.theta_star)
    }

    pub fn pull<R: Rng + ?Sized>(&self, contexts: &[DVector<f64>], arm: usize, rng: &mut R) -> Result<f64> {
        if arm >= self.arms() {
            return Err(AlbError::contract(format!("arm {arm} out of range for {} arms", self.arms())));
        }
        Ok(self.mean(contexts, arm) + self.sigma * rng.sample::<f64, _>(StandardNormal))
    }

    pub fn instant_regret(&self, contexts: &[DVector<f64>], arm: usize) -> f64 {
        let best = (0..self.arms()).map(|a| self.mean(contexts, a)).fold(f64::NEG_INFINITY, f64::max);
        (best - self.mean(contexts, arm)).max(0.0)
    }
}

/// A mixture instance bound to counter-keyed randomness.
#[derive(Debug, Clone)]
pub struct MixtureEnv {
    pub instance: MixtureInstance,
    pub crn: Crn,
}

impl MixtureEnv {
    pub fn new(instance: MixtureInstance, crn: Crn) -> Self {
        Self { instance, crn }
    }
}

impl ArmEnvironment for MixtureEnv {
    fn arms(&self) -> usize {
        self.instance.arms()
    }

    fn dim(&self) -> usize {
        self.instance.dim()
    }

    fn sigma(&self) -> f64 {
        self.instance.sigma
    }

    fn rho_min(&self) -> f64 {
        self.instance.rho_min
    }

    fn contexts(&self, round: u64) -> Vec<DVector<f64>> {
        self.instance.sample_contexts(&mut self.crn.rng(Stream::Context, round, 0))
    }

    fn mean(&self, contexts: &[DVector<f64>], arm: usize) -> f64 {
        self.instance.mean(contexts, arm)
    }

    fn noise(&self, round: u64, arm: usize) -> f64 {
        self.instance.sigma * self.crn.rng(Stream::Noise, round, arm as u64).sample::<f64, _>(StandardNormal)
    }
}
