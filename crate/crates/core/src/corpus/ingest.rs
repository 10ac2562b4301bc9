use std::path::Path;

use rand::seq::index::sample;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{AlbError, Result};

/// One rating and its feature vector.
#[derive(Debug, Clone, PartialEq)]
pub struct RatedRow {
    pub reward: f64,
    pub features: Vec<f64>,
}

/// Column selection and subsampling limits for [`ingest_csv`].
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IngestOptions {
    #[serde(default)]
    pub reward_col: usize,
    /// Candidate feature columns; every other column when absent.
    #[serde(default)]
    pub feature_cols: Option<Vec<usize>>,
    #[serde(default)]
    pub row_limit: Option<usize>,
    #[serde(default)]
    pub col_limit: Option<usize>,
    #[serde(default)]
    pub has_header: bool,
}

/// Sorted uniform subset of `0..n` of size `limit`, or everything.
fn keep<R: Rng + ?Sized>(n: usize, limit: Option<usize>, rng: &mut R) -> Vec<usize> {
    match limit {
        Some(k) if k < n => {
            let mut idx = sample(rng, n, k).into_vec();
            idx.sort_unstable();
            idx
        }
        _ => (0..n).collect(),
    }
}

/// Reads numeric rows, keeping a seeded uniform subset of rows and feature
/// columns in their original order.
///
/// Errors carry 1-based file line numbers and 0-based column indices.
pub fn ingest_csv<R: Rng + ?Sized>(path: &Path, opts: &IngestOptions, rng: &mut R) -> Result<Vec<RatedRow>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(opts.has_header)
        .flexible(true)
        .from_path(path)
        .map_err(|e| csv_error(path, e))?;
    let mut records = Vec::new();
    for rec in reader.records() {
        records.push(rec.map_err(|e| csv_error(path, e))?);
    }
    let width = records.first().map_or(0, |r| r.len());
    let candidates: Vec<usize> = match &opts.feature_cols {
        Some(cols) => cols.clone(),
        None => (0..width).filter(|&c| c != opts.reward_col).collect(),
    };
    // rows are drawn before columns so that the row subset does not depend
    // on the column limit
    let rows = keep(records.len(), opts.row_limit, rng);
    let cols: Vec<usize> = keep(candidates.len(), opts.col_limit, rng).into_iter().map(|i| candidates[i]).collect();
    let header_offset = 1 + opts.has_header as usize;

    let mut out = Vec::with_capacity(rows.len());
    for &r in &rows {
        let rec = &records[r];
        let line = r + header_offset;
        let cell = |c: usize| -> Result<f64> {
            let raw = rec
                .get(c)
                .ok_or_else(|| AlbError::Schema(format!("line {line} has {} columns, column {c} requested", rec.len())))?;
            raw.trim().parse::<f64>().map_err(|_| AlbError::Parse {
                row: line,
                column: c,
                message: format!("`{raw}` is not a number"),
            })
        };
        let reward = cell(opts.reward_col)?;
        let features = cols.iter().map(|&c| cell(c)).collect::<Result<Vec<_>>>()?;
        out.push(RatedRow { reward, features });
    }
    Ok(out)
}

fn csv_error(path: &Path, e: csv::Error) -> AlbError {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => AlbError::io(path, io),
        other => AlbError::Schema(format!("{}: {other:?}", path.display())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::io::Write;

    fn file(contents: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(contents.as_bytes()).unwrap();
        f
    }

    #[test]
    fn parses_rows_verbatim() {
        let f = file("1,0.5,2\n0,1.5,-1\n4,0,0\n");
        let rows = ingest_csv(f.path(), &IngestOptions::default(), &mut ChaCha8Rng::seed_from_u64(0)).unwrap();
        assert_eq!(rows.len(), 3);
        assert_eq!(rows[1], RatedRow { reward: 0.0, features: vec![1.5, -1.0] });
    }

    #[test]
    fn row_limit_is_seeded() {
        let f = file("0,1\n1,2\n2,3\n3,4\n");
        let opts = IngestOptions { row_limit: Some(2), ..Default::default() };
        let a = ingest_csv(f.path(), &opts, &mut ChaCha8Rng::seed_from_u64(5)).unwrap();
        let b = ingest_csv(f.path(), &opts, &mut ChaCha8Rng::seed_from_u64(5)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 2);
        assert!(a[0].reward < a[1].reward);
    }

    #[test]
    fn parse_error_has_coordinates() {
        let f = file("r,a,b\n1,2,3\n1,x,3\n");
        let opts = IngestOptions { has_header: true, ..Default::default() };
        match ingest_csv(f.path(), &opts, &mut ChaCha8Rng::seed_from_u64(0)).unwrap_err() {
            AlbError::Parse { row, column, .. } => assert_eq!((row, column), (3, 1)),
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn missing_column_is_schema_error() {
        let f = file("1,2\n1,2\n");
        let opts = IngestOptions { feature_cols: Some(vec![1, 4]), ..Default::default() };
        assert!(matches!(
            ingest_csv(f.path(), &opts, &mut ChaCha8Rng::seed_from_u64(0)).unwrap_err(),
            AlbError::Schema(_)
        ));
    }

    #[test]
    fn column_limit_keeps_order() {
        let f = file("9,0,1,2,3,4,5\n");
        let opts = IngestOptions { col_limit: Some(3), ..Default::default() };
        let rows = ingest_csv(f.path(), &opts, &mut ChaCha8Rng::seed_from_u64(1)).unwrap();
        assert_eq!(rows[0].features.len(), 3);
        assert!(rows[0].features.windows(2).all(|w| w[0] < w[1]));
    }
}
