//! Runs the bundled small config through the harness and renders both SVG
//! panels. Pass an output directory as the first argument.

use std::path::PathBuf;

use alb::cli::{cmd_plot, cmd_run};
use alb::harness::read_traces;
use alb::plot::PlotKind;

fn main() -> alb::Result<()> {
    let out = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(|| std::env::temp_dir().join("alb_plot"));
    let cfg = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("configs/norm_small.cfg");
    let (manifest, lines) = cmd_run(&cfg, &out, 2)?;
    for line in lines {
        println!("{line}");
    }
    println!("{} trials, seeds {:?}", manifest.seeds.len(), manifest.seeds);
    cmd_plot(&out.join("regret.csv"), &out.join("regret.svg"), PlotKind::Regret)?;
    cmd_plot(&out.join("snapshots.csv"), &out.join("snapshots.svg"), PlotKind::Snapshot)?;
    let traces = read_traces(&out)?;
    println!("read back {} traces; wrote {}/regret.svg and snapshots.svg", traces.len(), out.display());
    Ok(())
}
