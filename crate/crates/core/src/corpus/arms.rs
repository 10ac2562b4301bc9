use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use nalgebra::{DMatrix, DVector};
use rand_distr::{Distribution, StandardNormal};

use super::ClusteredArms;
use crate::envs::{ArmEnvironment, Crn, Stream};
use crate::error::{AlbError, Result};

/// Floor on the reported context covariance eigenvalue.
pub const RHO_FLOOR: f64 = 1e-6;

/// Clustered pseudo-arms as a bandit: arm `i` always shows context
/// `centroid_i` and pays `arm_means[i]` plus Gaussian noise.
#[derive(Debug, Clone)]
pub struct ClusteredEnv {
    pub arms: ClusteredArms,
    pub sigma: f64,
    pub crn: Crn,
    rho_min: f64,
}

impl ClusteredEnv {
    pub fn new(arms: ClusteredArms, sigma: f64, crn: Crn) -> Self {
        let rho_min = centroid_rho_min(&arms.centroids);
        Self { arms, sigma, crn, rho_min }
    }
}

/// Smallest eigenvalue of `(1/K) Σ c cᵀ`, floored at [`RHO_FLOOR`].
pub(crate) fn centroid_rho_min(centroids: &[DVector<f64>]) -> f64 {
    let d = centroids.first().map_or(0, |c| c.len());
    if d == 0 {
        return RHO_FLOOR;
    }
    let mut m = DMatrix::zeros(d, d);
    for c in centroids {
        m.ger(1.0 / centroids.len() as f64, c, c, 1.0);
    }
    m.symmetric_eigenvalues().min().max(RHO_FLOOR)
}

impl ArmEnvironment for ClusteredEnv {
    fn arms(&self) -> usize {
        self.arms.k()
    }

    fn dim(&self) -> usize {
        self.arms.dim()
    }

    fn sigma(&self) -> f64 {
        self.sigma
    }

    fn rho_min(&self) -> f64 {
        self.rho_min
    }

    fn contexts(&self, _round: u64) -> Vec<DVector<f64>> {
        self.arms.centroids.clone()
    }

    fn mean(&self, _contexts: &[DVector<f64>], arm: usize) -> f64 {
        self.arms.arm_means[arm]
    }

    fn noise(&self, round: u64, arm: usize) -> f64 {
        let z: f64 = StandardNormal.sample(&mut self.crn.rng(Stream::Noise, round, arm as u64));
        self.sigma * z
    }
}

/// Writes `arm,mean_reward,centroid_0,…,centroid_{d−1}`.
pub fn write_arms_csv(arms: &ClusteredArms, path: &Path) -> Result<()> {
    let file = File::create(path).map_err(|e| AlbError::io(path, e))?;
    let mut w = BufWriter::new(file);
    let mut header = String::from("arm,mean_reward");
    for j in 0..arms.dim() {
        header.push_str(&format!(",centroid_{j}"));
    }
    let mut body = header + "\n";
    for (i, (c, m)) in arms.centroids.iter().zip(&arms.arm_means).enumerate() {
        body.push_str(&format!("{i},{m}"));
        for v in c.iter() {
            body.push_str(&format!(",{v}"));
        }
        body.push('\n');
    }
    w.write_all(body.as_bytes()).and_then(|_| w.flush()).map_err(|e| AlbError::io(path, e))
}

/// Reads a file produced by [`write_arms_csv`]; the assignment is not stored
/// and comes back empty.
pub fn read_arms_csv(path: &Path) -> Result<ClusteredArms> {
    let mut reader = csv::Reader::from_path(path).map_err(|e| AlbError::Schema(format!("{}: {e}", path.display())))?;
    let headers = reader.headers().map_err(|e| AlbError::Schema(e.to_string()))?.clone();
    if headers.get(0) != Some("arm") || headers.get(1) != Some("mean_reward") {
        return Err(AlbError::Schema(format!("{}: expected header `arm,mean_reward,centroid_*`", path.display())));
    }
    let mut centroids = Vec::new();
    let mut arm_means = Vec::new();
    for (i, rec) in reader.records().enumerate() {
        let rec = rec.map_err(|e| AlbError::Schema(e.to_string()))?;
        let nums = rec
            .iter()
            .enumerate()
            .map(|(c, v)| {
                v.parse::<f64>().map_err(|_| AlbError::Parse { row: i + 2, column: c, message: format!("`{v}`") })
            })
            .collect::<Result<Vec<f64>>>()?;
        arm_means.push(nums[1]);
        centroids.push(DVector::from_row_slice(&nums[2..]));
    }
    Ok(ClusteredArms { centroids, arm_means, assignment: Vec::new(), history: Vec::new() })
}
