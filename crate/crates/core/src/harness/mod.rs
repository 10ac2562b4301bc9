//! Seeded multi-trial experiments: configuration, paired-seed execution,
//! aggregation and trace files.

mod config;
mod io;
mod run;
mod stats;

pub use config::{DimSection, ExperimentConfig, ExperimentKind, InstanceConfig, NormSection, RealDataSection};
pub use io::{format_sig, read_regret_csv, read_snapshots_csv, read_traces, write_traces, Manifest, SummaryRow};
pub use run::{run_experiment, run_trial, ExperimentResult};
pub use stats::{aggregate, aggregate_by_algorithm, Aggregate};
