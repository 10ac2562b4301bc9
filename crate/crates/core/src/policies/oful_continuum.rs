use nalgebra::{DMatrix, DVector};
use rand::Rng;

use crate::confidence::RidgeState;
use crate::envs::sample_uniform_sphere;
use crate::error::{AlbError, Result};

use super::oful_plus::argmax;

/// Default number of uniform candidates per round.
pub const DEFAULT_CANDIDATES: usize = 512;

/// Self-normalized ellipsoid width with `λ = 1`, `S = 1`:
/// `σ·√(2 ln(1/δ) + k·ln(1 + t/(λk))) + √λ·S`.
pub fn oful_beta(sigma: f64, dim: usize, t: u64, delta: f64) -> f64 {
    oful_beta_with(sigma, dim, t, delta, 1.0, 1.0)
}

pub fn oful_beta_with(sigma: f64, dim: usize, t: u64, delta: f64, lambda: f64, norm_bound: f64) -> f64 {
    if dim == 0 {
        return lambda.sqrt() * norm_bound;
    }
    let k = dim as f64;
    sigma * (2.0 * (1.0 / delta).ln() + k * (1.0 + t as f64 / (lambda * k)).ln()).sqrt() + lambda.sqrt() * norm_bound
}

/// Maximizes `⟨x, θ̂⟩ + β·‖x‖_{V⁻¹}` over the greedy direction `θ̂/‖θ̂‖` and
/// `candidates` uniform unit vectors. Ties go to the earlier candidate, so
/// the greedy direction wins when it is optimal.
pub fn oful_continuum_select<R: Rng + ?Sized>(
    ridge: &RidgeState,
    beta: f64,
    candidates: usize,
    rng: &mut R,
) -> Result<DVector<f64>> {
    if !(beta >= 0.0) {
        return Err(AlbError::contract(format!("beta must be >= 0, got {beta}")));
    }
    let k = ridge.dim();
    if k == 0 {
        return Ok(DVector::zeros(0));
    }
    let theta = ridge.estimate()?;
    let theta_norm = theta.norm();
    let mut cols: Vec<DVector<f64>> = Vec::with_capacity(candidates + 1);
    if theta_norm > 0.0 {
        cols.push(&theta / theta_norm);
    }
    for _ in 0..candidates {
        cols.push(sample_uniform_sphere(k, rng));
    }
    if cols.is_empty() {
        cols.push(sample_uniform_sphere(k, rng));
    }
    let x = DMatrix::from_columns(&cols);
    let owned;
    let inv = match ridge.inverse() {
        Some(inv) => inv,
        None => {
            owned = ridge.gram().clone().try_inverse().ok_or_else(|| AlbError::Singular {
                rank: ridge.gram().rank(1e-10),
                dim: k,
                hint: "continuum OFUL needs a positive regularizer".into(),
            })?;
            &owned
        }
    };
    let vx = inv * &x;
    let index: Vec<f64> = (0..x.ncols())
        .map(|j| {
            let col = x.column(j);
            col.dot(&theta) + beta * col.dot(&vx.column(j)).max(0.0).sqrt()
        })
        .collect();
    Ok(cols.swap_remove(argmax(&index)))
}

/// OFUL over the unit ball restricted to a fixed set of coordinates.
#[derive(Debug, Clone)]
pub struct OfulContinuum {
    dim: usize,
    active: Vec<usize>,
    ridge: RidgeState,
    sigma: f64,
    delta: f64,
    candidates: usize,
}

impl OfulContinuum {
    pub fn new(dim: usize, active: Vec<usize>, sigma: f64, delta: f64, candidates: usize) -> Result<Self> {
        if active.iter().any(|&j| j >= dim) {
            return Err(AlbError::contract(format!("active coordinates {active:?} exceed dimension {dim}")));
        }
        let ridge = RidgeState::new(active.len(), 1.0)?;
        Ok(Self { dim, active, ridge, sigma, delta, candidates })
    }

    pub fn full(dim: usize, sigma: f64, delta: f64, candidates: usize) -> Result<Self> {
        Self::new(dim, (0..dim).collect(), sigma, delta, candidates)
    }

    pub fn active(&self) -> &[usize] {
        &self.active
    }

    pub fn ridge(&self) -> &RidgeState {
        &self.ridge
    }

    pub fn beta(&self) -> f64 {
        oful_beta(self.sigma, self.active.len(), self.ridge.count(), self.delta)
    }

    /// Full-dimension arm with zeros off the active set.
    pub fn select<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<DVector<f64>> {
        let x = oful_continuum_select(&self.ridge, self.beta(), self.candidates, rng)?;
        Ok(self.embed(&x))
    }

    pub fn observe(&mut self, arm: &DVector<f64>, reward: f64) -> Result<()> {
        if arm.len() != self.dim {
            return Err(AlbError::DimensionMismatch { expected: self.dim, actual: arm.len() });
        }
        let x = DVector::from_iterator(self.active.len(), self.active.iter().map(|&j| arm[j]));
        self.ridge.update(&x, reward)
    }

    fn embed(&self, x: &DVector<f64>) -> DVector<f64> {
        let mut out = DVector::zeros(self.dim);
        for (v, &j) in x.iter().zip(&self.active) {
            out[j] = *v;
        }
        out
    }
}
