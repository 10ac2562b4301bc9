//! Model-selection linear bandits.
//!
//! Two successive-refinement learners adapt to unknown problem complexity:
//! a norm-adaptive learner for K-armed bandits with per-arm biases and a
//! shared linear term, and a dimension-adaptive learner for sparse linear
//! bandits (continuum and finite-armed). Around them sit simulated
//! environments with paired random streams, a seeded multi-trial harness, a
//! CSV clustering pipeline and an SVG plotter.

// `!(x > 0.0)` is used on purpose so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod confidence;
pub mod corpus;
pub mod envs;
pub mod error;
pub mod harness;
pub mod plot;
pub mod policies;
pub mod trace;

pub use error::{AlbError, Result};
pub use trace::{RegretTrace, Snapshot, SnapshotValue};
