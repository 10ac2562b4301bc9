use std::collections::BTreeMap;
use std::fs;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::config::ExperimentConfig;
use super::run::ExperimentResult;
use super::stats::Aggregate;
use crate::error::{AlbError, Result};
use crate::trace::{RegretTrace, Snapshot, SnapshotValue};

pub const REGRET_HEADER: &str = "round,algorithm,trial,cum_regret";
pub const SNAPSHOT_HEADER: &str = "epoch,algorithm,trial,kind,value";

/// Decimal rendering with 10 significant digits and no trailing zeros.
pub fn format_sig(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let magnitude = v.abs().log10().floor() as i32;
    let decimals = (9 - magnitude).max(0) as usize;
    let mut s = format!("{v:.decimals$}");
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    s
}

fn snapshot_value(v: &SnapshotValue) -> String {
    match v {
        SnapshotValue::Norm(b) => format_sig(*b),
        SnapshotValue::Support(s) => s.iter().map(|j| j.to_string()).collect::<Vec<_>>().join("|"),
        SnapshotValue::Ladder(m) => m.to_string(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub algorithm: String,
    pub final_mean: f64,
    pub final_std: f64,
}

/// Run record written next to the trace files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub version: String,
    pub config: ExperimentConfig,
    pub base_seed: u64,
    pub seeds: Vec<u64>,
    pub wall_clock_secs: f64,
    pub algorithms: Vec<String>,
    pub summary: Vec<SummaryRow>,
}

fn write_file(path: &Path, body: &str) -> Result<()> {
    let file = fs::File::create(path).map_err(|e| AlbError::io(path, e))?;
    let mut w = BufWriter::new(file);
    w.write_all(body.as_bytes()).and_then(|_| w.flush()).map_err(|e| AlbError::io(path, e))
}

pub(crate) fn regret_csv(traces: &[RegretTrace]) -> String {
    let mut out = String::from(REGRET_HEADER);
    out.push('\n');
    for t in traces {
        for (r, v) in t.cum_regret.iter().enumerate() {
            out.push_str(&format!("{},{},{},{}\n", r + 1, t.algorithm, t.trial, format_sig(*v)));
        }
    }
    out
}

pub(crate) fn snapshots_csv(traces: &[RegretTrace]) -> String {
    let mut out = String::from(SNAPSHOT_HEADER);
    out.push('\n');
    for t in traces {
        for s in &t.snapshots {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                s.epoch,
                t.algorithm,
                t.trial,
                s.value.kind(),
                snapshot_value(&s.value)
            ));
        }
    }
    out
}

/// Writes `regret.csv`, `snapshots.csv` and `manifest.json` into `dir`,
/// creating it if needed.
pub fn write_traces(result: &ExperimentResult, aggregates: &[Aggregate], dir: &Path) -> Result<Manifest> {
    fs::create_dir_all(dir).map_err(|e| AlbError::io(dir, e))?;
    write_file(&dir.join("regret.csv"), &regret_csv(&result.traces))?;
    write_file(&dir.join("snapshots.csv"), &snapshots_csv(&result.traces))?;
    let manifest = Manifest {
        version: env!("CARGO_PKG_VERSION").to_string(),
        config: result.config.clone(),
        base_seed: result.config.base_seed,
        seeds: result.seeds.clone(),
        wall_clock_secs: result.wall_clock_secs,
        algorithms: result.algorithms(),
        summary: aggregates
            .iter()
            .map(|a| SummaryRow {
                algorithm: a.algorithm.clone(),
                final_mean: a.mean.last().copied().unwrap_or(0.0),
                final_std: a.std.last().copied().unwrap_or(0.0),
            })
            .collect(),
    };
    let json = serde_json::to_string_pretty(&manifest).map_err(|e| AlbError::Schema(e.to_string()))?;
    write_file(&dir.join("manifest.json"), &(json + "\n"))?;
    Ok(manifest)
}

fn open_csv(path: &Path, header: &str) -> Result<csv::Reader<fs::File>> {
    let file = fs::File::open(path).map_err(|e| AlbError::io(path, e))?;
    let mut reader = csv::ReaderBuilder::new().has_headers(true).from_reader(file);
    let found = reader.headers().map_err(|e| AlbError::Schema(format!("{}: {e}", path.display())))?;
    let found = found.iter().collect::<Vec<_>>().join(",");
    if found != header {
        return Err(AlbError::Schema(format!("{}: header `{found}`, expected `{header}`", path.display())));
    }
    Ok(reader)
}

fn field<T: std::str::FromStr>(rec: &csv::StringRecord, line: usize, column: usize) -> Result<T> {
    let raw = rec.get(column).ok_or_else(|| AlbError::Schema(format!("line {line} is missing column {column}")))?;
    raw.parse().map_err(|_| AlbError::Parse { row: line, column, message: format!("`{raw}`") })
}

/// Regret curves keyed by `(algorithm, trial)` in file order.
pub fn read_regret_csv(path: &Path) -> Result<Vec<RegretTrace>> {
    let mut reader = open_csv(path, REGRET_HEADER)?;
    let mut traces: Vec<RegretTrace> = Vec::new();
    for (i, rec) in reader.records().enumerate() {
        let line = i + 2;
        let rec = rec.map_err(|e| AlbError::Schema(format!("{}: {e}", path.display())))?;
        let round: usize = field(&rec, line, 0)?;
        let algorithm = rec.get(1).unwrap_or_default();
        let trial: usize = field(&rec, line, 2)?;
        let value: f64 = field(&rec, line, 3)?;
        let same = traces.last().is_some_and(|t| t.algorithm == algorithm && t.trial == trial);
        if !same {
            let mut t = RegretTrace::new(algorithm);
            t.trial = trial;
            traces.push(t);
        }
        let t = traces.last_mut().expect("pushed above");
        if round != t.cum_regret.len() + 1 {
            return Err(AlbError::Parse { row: line, column: 0, message: format!("round {round} out of sequence") });
        }
        t.cum_regret.push(value);
    }
    Ok(traces)
}

/// Snapshots keyed by `(algorithm, trial)`.
pub fn read_snapshots_csv(path: &Path) -> Result<BTreeMap<(String, usize), Vec<Snapshot>>> {
    let mut reader = open_csv(path, SNAPSHOT_HEADER)?;
    let mut out: BTreeMap<(String, usize), Vec<Snapshot>> = BTreeMap::new();
    for (i, rec) in reader.records().enumerate() {
        let line = i + 2;
        let rec = rec.map_err(|e| AlbError::Schema(format!("{}: {e}", path.display())))?;
        let epoch: usize = field(&rec, line, 0)?;
        let algorithm = rec.get(1).unwrap_or_default().to_string();
        let trial: usize = field(&rec, line, 2)?;
        let raw = rec.get(4).unwrap_or_default();
        let value = match rec.get(3).unwrap_or_default() {
            "b" => SnapshotValue::Norm(field(&rec, line, 4)?),
            "ladder" => SnapshotValue::Ladder(field(&rec, line, 4)?),
            "support" if raw.is_empty() => SnapshotValue::Support(Vec::new()),
            "support" => SnapshotValue::Support(
                raw.split('|')
                    .map(|s| s.parse().map_err(|_| AlbError::Parse { row: line, column: 4, message: format!("`{raw}`") }))
                    .collect::<Result<_>>()?,
            ),
            other => {
                return Err(AlbError::Parse { row: line, column: 3, message: format!("unknown kind `{other}`") })
            }
        };
        out.entry((algorithm, trial)).or_default().push(Snapshot { epoch, value });
    }
    Ok(out)
}

/// Rebuilds traces from a run directory, seeds included when a manifest is
/// present.
pub fn read_traces(dir: &Path) -> Result<Vec<RegretTrace>> {
    let mut traces = read_regret_csv(&dir.join("regret.csv"))?;
    let mut snaps = read_snapshots_csv(&dir.join("snapshots.csv"))?;
    let manifest_path = dir.join("manifest.json");
    let seeds = if manifest_path.exists() {
        let text = fs::read_to_string(&manifest_path).map_err(|e| AlbError::io(&manifest_path, e))?;
        let m: Manifest = serde_json::from_str(&text).map_err(|e| AlbError::Schema(e.to_string()))?;
        m.seeds
    } else {
        Vec::new()
    };
    for t in &mut traces {
        t.snapshots = snaps.remove(&(t.algorithm.clone(), t.trial)).unwrap_or_default();
        t.seed = seeds.get(t.trial).copied().unwrap_or(0);
    }
    Ok(traces)
}
