//! Simulated ground-truth worlds with oracle pseudo-regret.

mod continuum;
mod crn;
mod mixture;
mod nested;
mod sphere;

use nalgebra::DVector;

pub use continuum::{ContinuumEnv, ContinuumInstance};
pub use crn::{Crn, Stream};
pub use mixture::{ContextLaw, MixtureEnv, MixtureInstance};
pub use nested::{ladder_level, NestedEnv, NestedFiniteInstance};
pub use sphere::{sample_gaussian, sample_uniform_sphere};

/// A finite-armed world whose per-round contexts and noise are addressed by
/// round index, so that several policies can be replayed against the same
/// randomness.
pub trait ArmEnvironment: Sync {
    fn arms(&self) -> usize;
    fn dim(&self) -> usize;
    /// Noise scale σ reported to learners.
    fn sigma(&self) -> f64;
    /// Context covariance floor reported to learners.
    fn rho_min(&self) -> f64;
    fn contexts(&self, round: u64) -> Vec<DVector<f64>>;
    /// Mean reward of `arm` under `contexts`.
    fn mean(&self, contexts: &[DVector<f64>], arm: usize) -> f64;
    /// Noise draw at `(round, arm)`.
    fn noise(&self, round: u64, arm: usize) -> f64;

    fn reward(&self, round: u64, contexts: &[DVector<f64>], arm: usize) -> f64 {
        self.mean(contexts, arm) + self.noise(round, arm)
    }

    fn instant_regret(&self, contexts: &[DVector<f64>], arm: usize) -> f64 {
        let best = (0..self.arms()).map(|a| self.mean(contexts, a)).fold(f64::NEG_INFINITY, f64::max);
        (best - self.mean(contexts, arm)).max(0.0)
    }
}
