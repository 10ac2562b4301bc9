use nalgebra::DVector;

use crate::confidence::RidgeState;
use crate::error::{AlbError, Result};

use super::oful_continuum::oful_beta_with;
use super::oful_plus::argmax;

/// Ellipsoid-index learner for finite arms on the first `dim` feature
/// coordinates, with features divided by `scale`.
///
/// Scaling by `1/scale` keeps feature norms below one with high probability,
/// so the parameter bound in the width becomes `scale`.
#[derive(Debug, Clone)]
pub struct LinUcb {
    ridge: RidgeState,
    sigma: f64,
    delta: f64,
    scale: f64,
}

impl LinUcb {
    pub fn new(dim: usize, sigma: f64, delta: f64, scale: f64) -> Result<Self> {
        if !(scale > 0.0) {
            return Err(AlbError::contract(format!("feature scale must be positive, got {scale}")));
        }
        Ok(Self { ridge: RidgeState::new(dim, 1.0)?, sigma, delta, scale })
    }

    pub fn dim(&self) -> usize {
        self.ridge.dim()
    }

    pub fn ridge(&self) -> &RidgeState {
        &self.ridge
    }

    pub fn beta(&self) -> f64 {
        oful_beta_with(self.sigma, self.dim(), self.ridge.count(), self.delta, 1.0, self.scale)
    }

    fn view(&self, phi: &DVector<f64>) -> Result<DVector<f64>> {
        if phi.len() < self.dim() {
            return Err(AlbError::DimensionMismatch { expected: self.dim(), actual: phi.len() });
        }
        Ok(phi.rows(0, self.dim()) / self.scale)
    }

    pub fn indices(&self, features: &[DVector<f64>]) -> Result<Vec<f64>> {
        let theta = self.ridge.estimate()?;
        let beta = self.beta();
        features
            .iter()
            .map(|phi| {
                let x = self.view(phi)?;
                Ok(x.dot(&theta) + beta * self.ridge.inverse_norm_sq(&x)?.max(0.0).sqrt())
            })
            .collect()
    }

    pub fn select(&self, features: &[DVector<f64>]) -> Result<usize> {
        Ok(argmax(&self.indices(features)?))
    }

    pub fn observe(&mut self, phi: &DVector<f64>, reward: f64) -> Result<()> {
        let x = self.view(phi)?;
        self.ridge.update(&x, reward)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truncates_and_scales() {
        let mut l = LinUcb::new(2, 0.1, 0.1, 2.0).unwrap();
        l.observe(&DVector::from_vec(vec![2.0, 0.0, 9.0]), 1.0).unwrap();
        assert_eq!(l.ridge().gram()[(0, 0)], 2.0);
        assert_eq!(l.ridge().moment()[0], 1.0);
    }

    #[test]
    fn learns_the_better_arm() {
        let mut l = LinUcb::new(2, 0.0, 0.1, 1.0).unwrap();
        let f = [DVector::from_vec(vec![1.0, 0.0]), DVector::from_vec(vec![0.0, 1.0])];
        for _ in 0..200 {
            let a = l.select(&f).unwrap();
            l.observe(&f[a], if a == 1 { 1.0 } else { 0.2 }).unwrap();
        }
        assert_eq!(l.select(&f).unwrap(), 1);
    }

    #[test]
    fn short_features_rejected() {
        let l = LinUcb::new(3, 0.1, 0.1, 1.0).unwrap();
        assert!(l.select(&[DVector::zeros(2)]).is_err());
    }
}
