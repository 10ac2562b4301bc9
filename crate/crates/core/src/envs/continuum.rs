use nalgebra::DVector;
use rand::seq::index::sample as sample_indices;
use rand::Rng;
use rand_distr::StandardNormal;

use super::{sample_uniform_sphere, Crn, Stream};
use crate::error::{AlbError, Result};

/// Sparse linear bandit over the unit ball: arm `x` pays `⟨x, θ*⟩ + η`.
#[derive(Debug, Clone, PartialEq)]
pub struct ContinuumInstance {
    pub theta_star: DVector<f64>,
    pub d_star: usize,
    pub gamma: f64,
    pub sigma: f64,
}

impl ContinuumInstance {
    pub fn new(theta_star: DVector<f64>, sigma: f64) -> Result<Self> {
        if theta_star.norm() > 1.0 + 1e-12 {
            return Err(AlbError::contract(format!("‖θ*‖ = {} exceeds 1", theta_star.norm())));
        }
        let nonzero: Vec<f64> = theta_star.iter().filter(|v| **v != 0.0).map(|v| v.abs()).collect();
        let gamma = nonzero.iter().copied().fold(f64::INFINITY, f64::min);
        Ok(Self {
            d_star: nonzero.len(),
            gamma: if nonzero.is_empty() { 0.0 } else { gamma },
            theta_star,
            sigma,
        })
    }

    /// `d_star` nonzeros at random positions with random signs. One
    /// coordinate has magnitude exactly `gamma`, the rest are uniform in
    /// `[gamma, u]` with `u` chosen so that `‖θ*‖ ≤ 1`.
    pub fn random_sparse<R: Rng + ?Sized>(
        dim: usize,
        d_star: usize,
        gamma: f64,
        sigma: f64,
        rng: &mut R,
    ) -> Result<Self> {
        if d_star == 0 || d_star > dim {
            return Err(AlbError::contract(format!("sparsity {d_star} must lie in 1..={dim}")));
        }
        let mut positions = sample_indices(rng, dim, d_star).into_vec();
        positions.sort_unstable();
        let theta = sparse_vector(dim, &positions, gamma, rng)?;
        Self::new(theta, sigma)
    }

    pub fn dim(&self) -> usize {
        self.theta_star.len()
    }

    pub fn support(&self) -> Vec<usize> {
        self.theta_star.iter().enumerate().filter(|(_, v)| **v != 0.0).map(|(j, _)| j).collect()
    }

    /// `θ*/‖θ*‖`, or zero when `θ* = 0`.
    pub fn best_arm(&self) -> DVector<f64> {
        let n = self.theta_star.norm();
        if n == 0.0 {
            DVector::zeros(self.dim())
        } else {
            &self.theta_star / n
        }
    }

    pub fn mean(&self, x: &DVector<f64>) -> f64 {
        x.dot(&self.theta_star)
    }

    pub fn pull<R: Rng + ?Sized>(&self, x: &DVector<f64>, rng: &mut R) -> f64 {
        self.mean(x) + self.sigma * rng.sample::<f64, _>(StandardNormal)
    }

    /// `‖θ*‖ − ⟨x, θ*⟩` for `x` in the unit ball.
    pub fn instant_regret(&self, x: &DVector<f64>) -> f64 {
        (self.theta_star.norm() - self.mean(x)).max(0.0)
    }
}

pub(super) fn sparse_vector<R: Rng + ?Sized>(
    dim: usize,
    positions: &[usize],
    gamma: f64,
    rng: &mut R,
) -> Result<DVector<f64>> {
    let k = positions.len();
    if !(gamma > 0.0) || gamma * gamma * k as f64 > 1.0 {
        return Err(AlbError::contract(format!("gamma {gamma} incompatible with {k} nonzeros and ‖θ*‖ ≤ 1")));
    }
    let upper = if k > 1 { ((1.0 - gamma * gamma) / (k - 1) as f64).sqrt().min(1.0).max(gamma) } else { gamma };
    let mut theta = DVector::zeros(dim);
    for (n, &j) in positions.iter().enumerate() {
        let mag = if n == 0 || upper <= gamma { gamma } else { rng.random_range(gamma..=upper) };
        let sign = if rng.random::<bool>() { 1.0 } else { -1.0 };
        theta[j] = sign * mag;
    }
    Ok(theta)
}

/// A continuum instance bound to counter-keyed noise and exploration draws.
#[derive(Debug, Clone)]
pub struct ContinuumEnv {
    pub instance: ContinuumInstance,
    pub crn: Crn,
}

impl ContinuumEnv {
    pub fn new(instance: ContinuumInstance, crn: Crn) -> Self {
        Self { instance, crn }
    }

    pub fn dim(&self) -> usize {
        self.instance.dim()
    }

    pub fn noise(&self, round: u64) -> f64 {
        self.instance.sigma * self.crn.rng(Stream::Noise, round, 0).sample::<f64, _>(StandardNormal)
    }

    pub fn reward(&self, round: u64, x: &DVector<f64>) -> f64 {
        self.instance.mean(x) + self.noise(round)
    }

    /// Uniform-sphere exploration arm for `round`.
    pub fn explore_arm(&self, round: u64) -> DVector<f64> {
        sample_uniform_sphere(self.dim(), &mut self.crn.rng(Stream::Explore, round, 0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn sparse_instance_invariants() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let inst = ContinuumInstance::random_sparse(50, 5, 0.2, 0.5, &mut rng).unwrap();
            assert!(inst.theta_star.norm() <= 1.0 + 1e-12);
            assert_eq!(inst.d_star, 5);
            assert!((inst.gamma - 0.2).abs() < 1e-15);
            assert_eq!(inst.support().len(), 5);
        }
    }

    #[test]
    fn extremal_regret() {
        let inst = ContinuumInstance::new(DVector::from_vec(vec![0.3, 0.0, -0.4]), 0.0).unwrap();
        let best = inst.best_arm();
        assert!(inst.instant_regret(&best).abs() < 1e-15);
        assert!((inst.instant_regret(&(-best)) - 1.0).abs() < 1e-12);
        assert_eq!(inst.gamma, 0.3);
        assert_eq!(inst.d_star, 2);
    }

    #[test]
    fn rejects_long_theta() {
        assert!(ContinuumInstance::new(DVector::from_vec(vec![1.0, 0.1]), 0.0).is_err());
    }
}
