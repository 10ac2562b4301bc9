use crate::error::{AlbError, Result};

/// Smallest initial phase length `T₀` with
/// `√T₀ ≥ scale · max(32σ²/λ_min² · ln(2d/δ), (4/3)(6λ_max + λ_min)(d + λ_max)/λ_min² · ln(2d/δ))`.
///
/// `scale` is 1 for the continuum action set and the feature scaling `b(δ)`
/// for finitely many arms. For uniform-sphere exploration `λ_min = λ_max = 1/d`.
pub fn theoretical_t0(dim: usize, delta: f64, sigma: f64, lambda_min: f64, lambda_max: f64, scale: f64) -> Result<u64> {
    if !(lambda_min > 0.0) || lambda_max < lambda_min {
        return Err(AlbError::contract(format!(
            "need 0 < lambda_min <= lambda_max, got {lambda_min} and {lambda_max}"
        )));
    }
    if !(delta > 0.0 && delta < 1.0) || dim == 0 || !(scale > 0.0) {
        return Err(AlbError::contract("need delta in (0,1), dim >= 1 and scale > 0"));
    }
    let root = t0_root(dim, delta, sigma, lambda_min, lambda_max, scale);
    Ok((root * root).ceil() as u64)
}

/// The right-hand side bound on `√T₀`.
pub fn t0_root(dim: usize, delta: f64, sigma: f64, lambda_min: f64, lambda_max: f64, scale: f64) -> f64 {
    let log = (2.0 * dim as f64 / delta).ln();
    let lmin2 = lambda_min * lambda_min;
    let noise = 32.0 * sigma * sigma / lmin2 * log;
    let design = 4.0 / 3.0 * (6.0 * lambda_max + lambda_min) * (dim as f64 + lambda_max) / lmin2 * log;
    scale * noise.max(design)
}
