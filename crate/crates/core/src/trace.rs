//! Per-run regret curves and epoch snapshots.

use serde::{Deserialize, Serialize};

/// What an algorithm believed about the problem complexity during one epoch.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum SnapshotValue {
    /// Norm bound `b_i`.
    Norm(f64),
    /// Active coordinate set `D_i`.
    Support(Vec<usize>),
    /// 1-based ladder level `M_i`.
    Ladder(usize),
}

impl SnapshotValue {
    pub fn kind(&self) -> &'static str {
        match self {
            SnapshotValue::Norm(_) => "b",
            SnapshotValue::Support(_) => "support",
            SnapshotValue::Ladder(_) => "ladder",
        }
    }

    /// Scalar used for plotting: the bound, the support size or the level.
    pub fn scalar(&self) -> f64 {
        match self {
            SnapshotValue::Norm(b) => *b,
            SnapshotValue::Support(s) => s.len() as f64,
            SnapshotValue::Ladder(m) => *m as f64,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Snapshot {
    pub epoch: usize,
    pub value: SnapshotValue,
}

/// Cumulative pseudo-regret of one algorithm on one trial.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegretTrace {
    pub algorithm: String,
    pub trial: usize,
    pub seed: u64,
    /// Entry `t` is the regret accumulated over rounds `1..=t+1`.
    pub cum_regret: Vec<f64>,
    pub snapshots: Vec<Snapshot>,
}

impl RegretTrace {
    pub fn new(algorithm: impl Into<String>) -> Self {
        Self { algorithm: algorithm.into(), trial: 0, seed: 0, cum_regret: Vec::new(), snapshots: Vec::new() }
    }

    pub fn rounds(&self) -> u64 {
        self.cum_regret.len() as u64
    }

    pub fn final_regret(&self) -> f64 {
        self.cum_regret.last().copied().unwrap_or(0.0)
    }

    /// Adds one round of instantaneous regret.
    pub fn push(&mut self, instant: f64) {
        let prev = self.final_regret();
        self.cum_regret.push(prev + instant.max(0.0));
    }

    pub fn snapshot(&mut self, epoch: usize, value: SnapshotValue) {
        self.snapshots.push(Snapshot { epoch, value });
    }
}
