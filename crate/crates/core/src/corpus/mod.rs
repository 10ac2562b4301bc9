//! Offline rating data turned into a K-armed bandit: CSV ingestion with
//! seeded subsampling, k-means clustering of the rows into pseudo-arms, and
//! an environment serving cluster centroids as fixed contexts.

mod arms;
mod ingest;
mod kmeans;
mod synthetic;

pub use arms::{read_arms_csv, write_arms_csv, ClusteredEnv};
pub use ingest::{ingest_csv, IngestOptions, RatedRow};
pub use kmeans::{kmeans_cluster, ClusteredArms};
pub use synthetic::{synthetic_ratings, write_ratings_csv};
