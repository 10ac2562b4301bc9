//! Confidence widths for the bias-aware optimistic learner.
//!
//! Two families are provided. The explicit family carries no free
//! constants: `t_min`, `m_delta`, `upsilon_delta`, `k_delta` and
//! `bias_bonus`. The compact family scales the same quantities by a single
//! user constant `c`:
//!
//! ```text
//! μ̃  = ḡ + c (σ + b) √(d/n · ln(1/δ))
//! K   = c (σ√d + b) / (ρ_min √t) · √ln(K T̃ / δ)
//! ```
//!
//! [`WidthRule`] selects between them.

use nalgebra::DVector;
use serde::{Deserialize, Serialize};

use crate::error::{AlbError, Result};

/// Inputs shared by every radius formula.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadiusParams {
    /// Current norm bound `b`.
    pub b: f64,
    /// Slack δ in (0, 1).
    pub delta: f64,
    /// Sub-Gaussian noise scale σ.
    pub sigma: f64,
    /// Context covariance floor ρ_min.
    pub rho_min: f64,
    pub dim: usize,
    pub arms: usize,
    /// Epoch length T̃.
    pub horizon: u64,
}

impl RadiusParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return Err(AlbError::contract(format!("delta must lie in (0,1), got {}", self.delta)));
        }
        if !(self.rho_min > 0.0) {
            return Err(AlbError::contract(format!("rho_min must be positive, got {}", self.rho_min)));
        }
        if self.dim == 0 || self.arms == 0 || self.horizon == 0 {
            return Err(AlbError::contract("dim, arms and horizon must be positive"));
        }
        if !(self.b >= 0.0) || !(self.sigma >= 0.0) {
            return Err(AlbError::contract("b and sigma must be nonnegative"));
        }
        Ok(())
    }

    fn log_2kt(&self) -> f64 {
        (2.0 * self.arms as f64 * self.horizon as f64 / self.delta).ln()
    }
}

/// `(16/ρ² + 8/(3ρ)) · ln(2 d T̃ / δ)`.
pub fn t_min(p: &RadiusParams) -> f64 {
    let rho = p.rho_min;
    (16.0 / (rho * rho) + 8.0 / (3.0 * rho)) * (2.0 * p.dim as f64 * p.horizon as f64 / p.delta).ln()
}

/// `b + √(2σ² (d/2 · ln(1 + t/d) + ln(1/δ)))`.
pub fn m_delta(b: f64, t: u64, p: &RadiusParams) -> f64 {
    let d = p.dim as f64;
    let inner = d / 2.0 * (1.0 + t as f64 / d).ln() + (1.0 / p.delta).ln();
    b + (2.0 * p.sigma * p.sigma * inner).sqrt()
}

/// `(10/3)(b + 2 + σ√(1 + 2L)) · [L + √(tL + L²)]` with `L = ln(2K T̃/δ)`.
pub fn upsilon_delta(b: f64, t: u64, p: &RadiusParams) -> f64 {
    let l = p.log_2kt();
    let t = t as f64;
    10.0 / 3.0 * (b + 2.0 + p.sigma * (1.0 + 2.0 * l).sqrt()) * (l + (t * l + l * l).sqrt())
}

/// Piecewise confidence radius. For `t < T_min` it is `M + Υ`; otherwise the
/// scaled branch `M/√(1+ρt/2) + Υ/(1+ρt/2)` (the boundary `t = T_min` takes
/// the scaled branch).
pub fn k_delta(b: f64, t: u64, p: &RadiusParams) -> f64 {
    let m = m_delta(b, t, p);
    let u = upsilon_delta(b, t, p);
    if (t as f64) < t_min(p) {
        m + u
    } else {
        let s = 1.0 + p.rho_min * t as f64 / 2.0;
        m / s.sqrt() + u / s
    }
}

/// Optimistic arm mean `μ̃` for an arm with empirical mean `mean` over
/// `pulls` observations.
pub fn bias_bonus(mean: f64, pulls: u64, p: &RadiusParams) -> Result<f64> {
    if pulls == 0 {
        return Err(AlbError::contract("bias bonus needs at least one pull of the arm"));
    }
    let n = pulls as f64;
    let k = p.arms as f64;
    let log_term = 1.0 + 2.0 * (k * (1.0 + n).sqrt() / p.delta).ln();
    let noise = p.sigma * ((1.0 + n) / (n * n) * log_term).sqrt();
    let norm = p.b * (2.0 * p.dim as f64 / n * (1.0 / p.delta).ln()).sqrt();
    Ok(mean + noise + norm)
}

/// Compact optimistic mean `ḡ + c(σ + b)√(d/n · ln(1/δ))`.
pub fn bias_bonus_compact(mean: f64, pulls: u64, c: f64, p: &RadiusParams) -> Result<f64> {
    if pulls == 0 {
        return Err(AlbError::contract("bias bonus needs at least one pull of the arm"));
    }
    let width = (p.dim as f64 / pulls as f64 * (1.0 / p.delta).ln()).sqrt();
    Ok(mean + c * (p.sigma + p.b) * width)
}

/// Compact radius `c(σ√d + b)/(ρ_min √t) · √ln(K T̃/δ)`.
pub fn k_compact(b: f64, t: u64, c: f64, p: &RadiusParams) -> f64 {
    let t = t.max(1) as f64;
    let d = p.dim as f64;
    let l = (p.arms as f64 * p.horizon as f64 / p.delta).ln().max(0.0);
    c * (p.sigma * d.sqrt() + b) / (p.rho_min * t.sqrt()) * l.sqrt()
}

/// Which width family an optimistic learner uses.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum WidthRule {
    /// Constant-free explicit forms.
    #[default]
    Explicit,
    /// Compact forms scaled by `c`.
    Compact { c: f64 },
}

impl WidthRule {
    pub fn optimistic_mean(&self, mean: f64, pulls: u64, p: &RadiusParams) -> Result<f64> {
        match *self {
            WidthRule::Explicit => bias_bonus(mean, pulls, p),
            WidthRule::Compact { c } => bias_bonus_compact(mean, pulls, c, p),
        }
    }

    pub fn radius(&self, b: f64, t: u64, p: &RadiusParams) -> f64 {
        match *self {
            WidthRule::Explicit => k_delta(b, t.max(1), p),
            WidthRule::Compact { c } => k_compact(b, t, c, p),
        }
    }
}

/// ℓ₂ ball `{θ : ‖θ − center‖ ≤ radius}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfidenceBall {
    pub center: DVector<f64>,
    pub radius: f64,
}

impl ConfidenceBall {
    pub fn new(center: DVector<f64>, radius: f64) -> Result<Self> {
        if !(radius >= 0.0) {
            return Err(AlbError::contract(format!("radius must be nonnegative, got {radius}")));
        }
        Ok(Self { center, radius })
    }

    pub fn contains(&self, theta: &DVector<f64>) -> bool {
        (theta - &self.center).norm() <= self.radius
    }

    /// `max_{θ ∈ ball} ⟨x, θ⟩`.
    pub fn optimistic_value(&self, x: &DVector<f64>) -> f64 {
        x.dot(&self.center) + self.radius * x.norm()
    }

    /// `max_{θ ∈ ball} ‖θ‖ = ‖center‖ + radius`.
    pub fn max_norm(&self) -> f64 {
        self.center.norm() + self.radius
    }
}
