use std::collections::BTreeSet;

use nalgebra::DVector;
use serde::{Deserialize, Serialize};

use crate::error::{AlbError, Result};

/// Coordinates kept by magnitude thresholding.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SupportEstimate {
    pub indices: BTreeSet<usize>,
    pub threshold: f64,
}

impl SupportEstimate {
    pub fn full(dim: usize) -> Self {
        Self { indices: (0..dim).collect(), threshold: 0.0 }
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.indices.iter().copied().collect()
    }

    /// `|`-joined sorted indices, e.g. `0|3|7`.
    pub fn serialize_indices(&self) -> String {
        self.indices.iter().map(|i| i.to_string()).collect::<Vec<_>>().join("|")
    }
}

/// Keeps `{j : |θ̂_j| ≥ ε/2}`.
pub fn support_threshold(theta_hat: &DVector<f64>, epsilon: f64) -> Result<SupportEstimate> {
    if !(epsilon > 0.0) {
        return Err(AlbError::contract(format!("threshold epsilon must be positive, got {epsilon}")));
    }
    let threshold = epsilon / 2.0;
    let indices = theta_hat.iter().enumerate().filter(|(_, v)| v.abs() >= threshold).map(|(j, _)| j).collect();
    Ok(SupportEstimate { indices, threshold })
}
