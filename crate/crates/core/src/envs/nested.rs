use nalgebra::DVector;
use rand::Rng;
use rand_distr::StandardNormal;

use super::continuum::sparse_vector;
use super::{sample_gaussian, ArmEnvironment, Crn, Stream};
use crate::error::{AlbError, Result};

/// Finite-armed contextual bandit with nested feature maps.
///
/// The largest map draws `φ^M(x, a) ~ N(0, τ²/d · I)` per round and arm; the
/// map at ladder level `m` is the first `d_m` coordinates of it.
#[derive(Debug, Clone, PartialEq)]
pub struct NestedFiniteInstance {
    pub ladder: Vec<usize>,
    pub theta_star: DVector<f64>,
    /// 1-based ladder level holding the support of θ*.
    pub true_level: usize,
    pub arms: usize,
    pub tau: f64,
    pub sigma: f64,
}

impl NestedFiniteInstance {
    pub fn new(ladder: Vec<usize>, theta_star: DVector<f64>, arms: usize, tau: f64, sigma: f64) -> Result<Self> {
        if ladder.is_empty() || ladder.windows(2).any(|w| w[0] >= w[1]) || ladder[0] == 0 {
            return Err(AlbError::contract(format!("ladder {ladder:?} must be strictly increasing and positive")));
        }
        let d = *ladder.last().unwrap();
        if theta_star.len() != d {
            return Err(AlbError::DimensionMismatch { expected: d, actual: theta_star.len() });
        }
        if arms == 0 || !(tau > 0.0) {
            return Err(AlbError::contract("need at least one arm and tau > 0"));
        }
        let last_nonzero = theta_star.iter().rposition(|v| *v != 0.0).map_or(0, |j| j + 1);
        let true_level = ladder_level(&ladder, last_nonzero);
        Ok(Self { ladder, theta_star, true_level, arms, tau, sigma })
    }

    /// θ* whose first `d_{m*}` coordinates are nonzero with minimum magnitude
    /// `gamma`.
    pub fn random<R: Rng + ?Sized>(
        ladder: Vec<usize>,
        true_level: usize,
        gamma: f64,
        arms: usize,
        tau: f64,
        sigma: f64,
        rng: &mut R,
    ) -> Result<Self> {
        if true_level == 0 || true_level > ladder.len() {
            return Err(AlbError::contract(format!("true level {true_level} outside 1..={}", ladder.len())));
        }
        let d = *ladder.last().unwrap();
        let positions: Vec<usize> = (0..ladder[true_level - 1]).collect();
        let theta = sparse_vector(d, &positions, gamma, rng)?;
        Self::new(ladder, theta, arms, tau, sigma)
    }

    pub fn dim(&self) -> usize {
        *self.ladder.last().unwrap()
    }

    pub fn features<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<DVector<f64>> {
        let scale = self.tau / (self.dim() as f64).sqrt();
        (0..self.arms).map(|_| sample_gaussian(self.dim(), scale, rng)).collect()
    }

    /// First `d_m` coordinates, for 1-based level `m`.
    pub fn truncate(&self, phi: &DVector<f64>, level: usize) -> DVector<f64> {
        phi.rows(0, self.ladder[level - 1]).into_owned()
    }

    pub fn mean(&self, phi: &DVector<f64>) -> f64 {
        phi.dot(&self.theta_star)
    }
}

/// Smallest 1-based ladder level whose dimension covers the first `needed`
/// coordinates, i.e. `inf{m : d_m ≥ needed}`; level 1 when `needed = 0`.
pub fn ladder_level(ladder: &[usize], needed: usize) -> usize {
    ladder.iter().position(|&d| d >= needed).map_or(ladder.len(), |m| m + 1)
}

/// A nested instance bound to counter-keyed features and noise.
#[derive(Debug, Clone)]
pub struct NestedEnv {
    pub instance: NestedFiniteInstance,
    pub crn: Crn,
}

impl NestedEnv {
    pub fn new(instance: NestedFiniteInstance, crn: Crn) -> Self {
        Self { instance, crn }
    }

    /// Uniform exploration arm for `round`.
    pub fn explore_arm(&self, round: u64) -> usize {
        self.crn.rng(Stream::Explore, round, 0).random_range(0..self.instance.arms)
    }
}

impl ArmEnvironment for NestedEnv {
    fn arms(&self) -> usize {
        self.instance.arms
    }

    fn dim(&self) -> usize {
        self.instance.dim()
    }

    fn sigma(&self) -> f64 {
        self.instance.sigma
    }

    fn rho_min(&self) -> f64 {
        self.instance.tau * self.instance.tau / self.instance.dim() as f64
    }

    fn contexts(&self, round: u64) -> Vec<DVector<f64>> {
        self.instance.features(&mut self.crn.rng(Stream::Context, round, 0))
    }

    fn mean(&self, contexts: &[DVector<f64>], arm: usize) -> f64 {
        self.instance.mean(&contexts[arm])
    }

    fn noise(&self, round: u64, arm: usize) -> f64 {
        self.instance.sigma * self.crn.rng(Stream::Noise, round, arm as u64).sample::<f64, _>(StandardNormal)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn ladder_lookup() {
        assert_eq!(ladder_level(&[4, 8, 16], 8), 2);
        assert_eq!(ladder_level(&[4, 8, 16], 3), 1);
        assert_eq!(ladder_level(&[4, 8, 16], 0), 1);
        assert_eq!(ladder_level(&[4, 8, 16], 16), 3);
    }

    #[test]
    fn nesting_holds_for_every_feature() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let inst = NestedFiniteInstance::random(vec![5, 10, 20], 1, 0.25, 4, 1.0, 0.1, &mut rng).unwrap();
        assert_eq!(inst.true_level, 1);
        assert!(inst.theta_star.rows(5, 15).iter().all(|v| *v == 0.0));
        let env = NestedEnv::new(inst, Crn::new(8));
        for round in 0..25 {
            for phi in env.contexts(round) {
                for m in 1..3 {
                    let lo = env.instance.truncate(&phi, m);
                    let hi = env.instance.truncate(&phi, m + 1);
                    assert_eq!(lo.as_slice(), &hi.as_slice()[..lo.len()]);
                }
            }
        }
    }

    #[test]
    fn rejects_bad_ladder() {
        assert!(NestedFiniteInstance::new(vec![5, 5], DVector::zeros(5), 2, 1.0, 0.1).is_err());
    }
}
