use std::fs;

use alb::cli::cmd_run;
use alb::harness::{
    aggregate_by_algorithm, read_regret_csv, read_snapshots_csv, read_traces, run_experiment, write_traces,
    ExperimentConfig, ExperimentResult,
};
use alb::plot::{plot_csv, PlotKind};
use alb::AlbError;

fn small() -> ExperimentConfig {
    ExperimentConfig::load(concat!(env!("CARGO_MANIFEST_DIR"), "/configs/norm_small.cfg").as_ref()).unwrap()
}

fn files(dir: &std::path::Path) -> Vec<Vec<u8>> {
    ["regret.csv", "snapshots.csv"].iter().map(|f| fs::read(dir.join(f)).unwrap()).collect()
}

#[test]
fn bundled_config_writes_all_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = concat!(env!("CARGO_MANIFEST_DIR"), "/configs/norm_small.cfg");
    let (manifest, lines) = cmd_run(cfg.as_ref(), dir.path(), 1).unwrap();
    for f in ["regret.csv", "snapshots.csv", "manifest.json"] {
        assert!(dir.path().join(f).is_file(), "{f} missing");
    }
    assert_eq!(lines.len(), 3);
    assert_eq!(manifest.seeds, vec![7, 8, 9]);
    assert_eq!(manifest.algorithms, vec!["alb_norm", "oful_plus", "norm_oracle"]);
}

#[test]
fn thread_count_does_not_change_bytes() {
    let cfg = concat!(env!("CARGO_MANIFEST_DIR"), "/configs/norm_small.cfg");
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    cmd_run(cfg.as_ref(), a.path(), 1).unwrap();
    cmd_run(cfg.as_ref(), b.path(), 8).unwrap();
    assert_eq!(files(a.path()), files(b.path()));
}

#[test]
fn read_then_rewrite_is_byte_identical() {
    let cfg = small();
    let result = run_experiment(&cfg, 1).unwrap();
    let agg = aggregate_by_algorithm(&result.traces).unwrap();
    let first = tempfile::tempdir().unwrap();
    write_traces(&result, &agg, first.path()).unwrap();

    let traces = read_traces(first.path()).unwrap();
    assert_eq!(traces.len(), result.traces.len());
    for (back, orig) in traces.iter().zip(&result.traces) {
        assert_eq!((back.algorithm.as_str(), back.trial, back.seed), (orig.algorithm.as_str(), orig.trial, orig.seed));
        assert_eq!(back.snapshots.len(), orig.snapshots.len());
        for (x, y) in back.cum_regret.iter().zip(&orig.cum_regret) {
            assert!((x - y).abs() <= 1e-9 * y.abs().max(1.0));
        }
    }
    let second = tempfile::tempdir().unwrap();
    let again = ExperimentResult { traces, ..result };
    write_traces(&again, &agg, second.path()).unwrap();
    assert_eq!(files(first.path()), files(second.path()));
}

#[test]
fn wrong_header_is_a_schema_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("regret.csv");
    fs::write(&path, "round,algo,trial,regret\n1,a,0,0.5\n").unwrap();
    assert!(matches!(read_regret_csv(&path), Err(AlbError::Schema(_))));
    assert!(matches!(plot_csv(&path, &dir.path().join("x.svg"), PlotKind::Regret), Err(AlbError::Schema(_))));
    fs::write(&path, "epoch,algorithm,trial,kind,value\n1,a,0,b,abc\n").unwrap();
    assert!(matches!(read_snapshots_csv(&path), Err(AlbError::Parse { row: 2, column: 4, .. })));
}

#[test]
fn headered_empty_csv_plots_axes_only() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("regret.csv");
    fs::write(&csv, "round,algorithm,trial,cum_regret\n").unwrap();
    let svg = plot_csv(&csv, &dir.path().join("out.svg"), PlotKind::Regret).unwrap();
    assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
    assert!(svg.contains(r#"class="axes""#));
    assert!(!svg.contains("<polyline"));
    let snaps = dir.path().join("snapshots.csv");
    fs::write(&snaps, "epoch,algorithm,trial,kind,value\n").unwrap();
    assert!(!plot_csv(&snaps, &dir.path().join("s.svg"), PlotKind::Snapshot).unwrap().contains("<polyline"));
}

#[test]
fn single_trace_polyline_ends_at_last_value() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("regret.csv");
    fs::write(&csv, "round,algorithm,trial,cum_regret\n1,solo,0,0.25\n2,solo,0,0.75\n3,solo,0,1.125\n").unwrap();
    let svg = plot_csv(&csv, &dir.path().join("out.svg"), PlotKind::Regret).unwrap();
    let lines: Vec<&str> = svg.lines().filter(|l| l.starts_with("<polyline")).collect();
    assert_eq!(lines.len(), 1);
    assert!(lines[0].contains(r#"data-last="1.125""#));
}

#[test]
fn three_algorithms_three_legend_entries() {
    let dir = tempfile::tempdir().unwrap();
    let result = run_experiment(&small(), 1).unwrap();
    write_traces(&result, &aggregate_by_algorithm(&result.traces).unwrap(), dir.path()).unwrap();
    let a = plot_csv(&dir.path().join("regret.csv"), &dir.path().join("a.svg"), PlotKind::Regret).unwrap();
    let b = plot_csv(&dir.path().join("regret.csv"), &dir.path().join("b.svg"), PlotKind::Regret).unwrap();
    assert_eq!(a, b);
    let legend = a.split(r#"class="legend""#).nth(1).unwrap();
    for name in ["alb_norm", "oful_plus", "norm_oracle"] {
        assert!(legend.contains(&format!(">{name}</text>")));
    }
    assert_eq!(legend.matches("<text").count(), 3);
}

#[test]
fn d50_k75_config_orders_alb_norm_below_oful_plus() {
    let cfg = concat!(env!("CARGO_MANIFEST_DIR"), "/configs/norm_d50_k75.cfg");
    let dir = tempfile::tempdir().unwrap();
    let (manifest, _) = cmd_run(cfg.as_ref(), dir.path(), 1).unwrap();
    let mean = |name: &str| manifest.summary.iter().find(|s| s.algorithm == name).unwrap().final_mean;
    println!("alb_norm {:.1}, oful_plus {:.1}", mean("alb_norm"), mean("oful_plus"));
    assert_eq!(manifest.seeds.len(), 25);
    assert!(mean("alb_norm") < mean("oful_plus"));
}
