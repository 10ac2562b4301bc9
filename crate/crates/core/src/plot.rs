//! Deterministic SVG rendering of regret curves and per-epoch snapshots.
//!
//! Output depends only on the input data: colors follow first-appearance
//! order and every coordinate is printed with fixed precision.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use crate::error::{AlbError, Result};
use crate::harness::{aggregate_by_algorithm, format_sig, read_regret_csv, read_snapshots_csv};
use crate::trace::RegretTrace;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 500.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 170.0;
const TOP: f64 = 20.0;
const BOTTOM: f64 = 50.0;
/// Points per drawn curve; the final point is always kept.
pub const MAX_POINTS: usize = 1000;
const PALETTE: [&str; 8] = ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlotKind {
    Regret,
    Snapshot,
}

impl FromStr for PlotKind {
    type Err = AlbError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "regret" => Ok(PlotKind::Regret),
            "snapshot" => Ok(PlotKind::Snapshot),
            other => Err(AlbError::config("kind", format!("expected `regret` or `snapshot`, got `{other}`"))),
        }
    }
}

/// One named curve with an optional symmetric band.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub name: String,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub band: Option<Vec<f64>>,
}

/// Stable color for the `i`-th series.
pub fn color(i: usize) -> &'static str {
    PALETTE[i % PALETTE.len()]
}

/// Indices kept when thinning `n` points to at most `max`; always includes
/// the first and last.
pub fn downsample_indices(n: usize, max: usize) -> Vec<usize> {
    if n <= max || max < 2 {
        return (0..n).collect();
    }
    let mut out: Vec<usize> = (0..max).map(|k| k * (n - 1) / (max - 1)).collect();
    out.dedup();
    out
}

struct Frame {
    x_max: f64,
    y_min: f64,
    y_max: f64,
}

impl Frame {
    fn fit(series: &[Series]) -> Self {
        let (mut x_max, mut y_min, mut y_max) = (1.0f64, 0.0f64, 0.0f64);
        for s in series {
            for (i, (&x, &y)) in s.x.iter().zip(&s.y).enumerate() {
                let w = s.band.as_ref().map_or(0.0, |b| b[i]);
                x_max = x_max.max(x);
                y_max = y_max.max(y + w);
                y_min = y_min.min(y - w);
            }
        }
        if y_max <= y_min {
            y_max = y_min + 1.0;
        }
        Self { x_max, y_min, y_max }
    }

    fn px(&self, x: f64) -> f64 {
        LEFT + x / self.x_max * (WIDTH - LEFT - RIGHT)
    }

    fn py(&self, y: f64) -> f64 {
        HEIGHT - BOTTOM - (y - self.y_min) / (self.y_max - self.y_min) * (HEIGHT - TOP - BOTTOM)
    }
}

fn axes(out: &mut String, frame: &Frame, x_label: &str, y_label: &str) {
    let (x0, x1) = (LEFT, WIDTH - RIGHT);
    let (y0, y1) = (HEIGHT - BOTTOM, TOP);
    let _ = writeln!(out, r##"<g class="axes" stroke="#000" stroke-width="1">"##);
    let _ = writeln!(out, r#"<line x1="{x0:.2}" y1="{y0:.2}" x2="{x1:.2}" y2="{y0:.2}"/>"#);
    let _ = writeln!(out, r#"<line x1="{x0:.2}" y1="{y0:.2}" x2="{x0:.2}" y2="{y1:.2}"/>"#);
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, r#"<g class="ticks" font-family="sans-serif" font-size="11">"#);
    for k in 0..=4 {
        let f = k as f64 / 4.0;
        let xv = f * frame.x_max;
        let yv = frame.y_min + f * (frame.y_max - frame.y_min);
        let (px, py) = (frame.px(xv), frame.py(yv));
        let _ = writeln!(out, r##"<line x1="{px:.2}" y1="{y0:.2}" x2="{px:.2}" y2="{:.2}" stroke="#000"/>"##, y0 + 4.0);
        let _ = writeln!(
            out,
            r#"<text x="{px:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            y0 + 16.0,
            format_sig(round4(xv))
        );
        let _ = writeln!(out, r##"<line x1="{:.2}" y1="{py:.2}" x2="{x0:.2}" y2="{py:.2}" stroke="#000"/>"##, x0 - 4.0);
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
            x0 - 6.0,
            py + 4.0,
            format_sig(round4(yv))
        );
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(
        out,
        r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="13" text-anchor="middle">{x_label}</text>"#,
        (x0 + x1) / 2.0,
        HEIGHT - 10.0
    );
    let _ = writeln!(
        out,
        r#"<text transform="translate(16,{:.2}) rotate(-90)" font-family="sans-serif" font-size="13" text-anchor="middle">{y_label}</text>"#,
        (y0 + y1) / 2.0
    );
}

fn round4(v: f64) -> f64 {
    // tick labels only need a few digits
    let scale = 10f64.powi(4 - v.abs().max(1e-12).log10().ceil() as i32);
    (v * scale).round() / scale
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// Renders series as an SVG document. `step` draws piecewise-constant curves.
pub fn render_svg(series: &[Series], x_label: &str, y_label: &str, step: bool) -> String {
    let frame = Frame::fit(series);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(out, r##"<rect width="100%" height="100%" fill="#fff"/>"##);
    axes(&mut out, &frame, x_label, y_label);
    for (i, s) in series.iter().enumerate() {
        let c = color(i);
        let keep = downsample_indices(s.x.len(), MAX_POINTS);
        if let Some(band) = &s.band {
            let upper = keep.iter().map(|&k| (frame.px(s.x[k]), frame.py(s.y[k] + band[k])));
            let lower = keep.iter().rev().map(|&k| (frame.px(s.x[k]), frame.py(s.y[k] - band[k])));
            let pts: Vec<String> = upper.chain(lower).map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
            if !pts.is_empty() {
                let _ = writeln!(
                    out,
                    r#"<polygon class="band" fill="{c}" fill-opacity="0.2" stroke="none" points="{}"/>"#,
                    pts.join(" ")
                );
            }
        }
        let mut pts = Vec::with_capacity(keep.len() * 2);
        for (j, &k) in keep.iter().enumerate() {
            let (x, y) = (frame.px(s.x[k]), frame.py(s.y[k]));
            if step && j > 0 {
                pts.push(format!("{x:.2},{:.2}", frame.py(s.y[keep[j - 1]])));
            }
            pts.push(format!("{x:.2},{y:.2}"));
        }
        let last = s.y.last().map_or_else(|| "0".into(), |v| format_sig(*v));
        let _ = writeln!(
            out,
            r#"<polyline class="curve" data-series="{}" data-last="{last}" fill="none" stroke="{c}" stroke-width="1.5" points="{}"/>"#,
            escape(&s.name),
            pts.join(" ")
        );
    }
    let _ = writeln!(out, r#"<g class="legend" font-family="sans-serif" font-size="12">"#);
    for (i, s) in series.iter().enumerate() {
        let y = TOP + 10.0 + 18.0 * i as f64;
        let x = WIDTH - RIGHT + 15.0;
        let _ = writeln!(
            out,
            r#"<line x1="{x:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="{}" stroke-width="3"/>"#,
            x + 20.0,
            color(i)
        );
        let _ = writeln!(out, r#"<text x="{:.2}" y="{:.2}">{}</text>"#, x + 26.0, y + 4.0, escape(&s.name));
    }
    let _ = writeln!(out, "</g>");
    out.push_str("</svg>\n");
    out
}

/// Mean cumulative regret per algorithm with a ±1 std band.
pub fn regret_series(traces: &[RegretTrace]) -> Result<Vec<Series>> {
    Ok(aggregate_by_algorithm(traces)?
        .into_iter()
        .map(|a| Series {
            name: a.algorithm,
            x: (1..=a.mean.len()).map(|r| r as f64).collect(),
            y: a.mean,
            band: Some(a.std),
        })
        .collect())
}

/// Running sums of snapshot scalars for one algorithm.
struct EpochSums {
    name: String,
    /// `(epoch, sum, count)` in first-seen order.
    cells: Vec<(usize, f64, usize)>,
}

/// Mean snapshot scalar per epoch for each algorithm.
pub fn snapshot_series(traces: &[RegretTrace]) -> Vec<Series> {
    let mut groups: Vec<EpochSums> = Vec::new();
    for t in traces.iter().filter(|t| !t.snapshots.is_empty()) {
        let pos = match groups.iter().position(|g| g.name == t.algorithm) {
            Some(p) => p,
            None => {
                groups.push(EpochSums { name: t.algorithm.clone(), cells: Vec::new() });
                groups.len() - 1
            }
        };
        let cells = &mut groups[pos].cells;
        for s in &t.snapshots {
            match cells.iter_mut().find(|c| c.0 == s.epoch) {
                Some(c) => {
                    c.1 += s.value.scalar();
                    c.2 += 1;
                }
                None => cells.push((s.epoch, s.value.scalar(), 1)),
            }
        }
    }
    groups
        .into_iter()
        .map(|g| {
            let mut pts: Vec<(f64, f64)> = g.cells.iter().map(|&(e, s, n)| (e as f64, s / n as f64)).collect();
            pts.sort_by(|a, b| a.0.total_cmp(&b.0));
            Series { name: g.name, x: pts.iter().map(|p| p.0).collect(), y: pts.iter().map(|p| p.1).collect(), band: None }
        })
        .collect()
}

/// Reads a trace CSV of the given kind and writes the SVG to `out_svg`.
pub fn plot_csv(csv: &Path, out_svg: &Path, kind: PlotKind) -> Result<String> {
    let svg = match kind {
        PlotKind::Regret => {
            let traces = read_regret_csv(csv)?;
            render_svg(&regret_series(&traces)?, "round", "cumulative regret", false)
        }
        PlotKind::Snapshot => {
            let traces: Vec<RegretTrace> = read_snapshots_csv(csv)?
                .into_iter()
                .map(|((algorithm, trial), snapshots)| RegretTrace {
                    trial,
                    snapshots,
                    ..RegretTrace::new(algorithm)
                })
                .collect();
            render_svg(&snapshot_series(&traces), "epoch", "estimate", true)
        }
    };
    fs::write(out_svg, &svg).map_err(|e| AlbError::io(out_svg, e))?;
    Ok(svg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trace::SnapshotValue;

    fn trace(name: &str, trial: usize, vals: &[f64]) -> RegretTrace {
        RegretTrace { trial, cum_regret: vals.to_vec(), ..RegretTrace::new(name) }
    }

    fn polylines(svg: &str) -> Vec<&str> {
        svg.lines().filter(|l| l.starts_with("<polyline")).collect()
    }

    #[test]
    fn empty_input_draws_axes_only() {
        let svg = render_svg(&[], "round", "regret", false);
        assert!(svg.starts_with("<svg") && svg.ends_with("</svg>\n"));
        assert!(svg.contains(r#"class="axes""#));
        assert!(polylines(&svg).is_empty());
    }

    #[test]
    fn single_curve_ends_at_last_value() {
        let t = trace("a", 0, &[0.5, 1.0, 2.5]);
        let series = regret_series(&[t]).unwrap();
        let svg = render_svg(&series, "round", "regret", false);
        let lines = polylines(&svg);
        assert_eq!(lines.len(), 1);
        assert!(lines[0].contains(r#"data-last="2.5""#));
        // largest value sits on the top edge of the plot area
        let last = lines[0].rsplit(' ').next().unwrap().trim_end_matches("\"/>");
        let y: f64 = last.split(',').nth(1).unwrap().parse().unwrap();
        assert_eq!(y, TOP);
    }

    #[test]
    fn legend_and_colors_follow_first_appearance() {
        let traces: Vec<_> = ["x", "y", "z"].iter().map(|n| trace(n, 0, &[1.0, 2.0])).collect();
        let svg = render_svg(&regret_series(&traces).unwrap(), "r", "c", false);
        let legend = svg.split(r#"class="legend""#).nth(1).unwrap();
        assert_eq!(legend.matches("<text").count(), 3);
        for (i, l) in polylines(&svg).iter().enumerate() {
            assert!(l.contains(&format!(r#"stroke="{}""#, color(i))));
        }
        assert_eq!(svg, render_svg(&regret_series(&traces).unwrap(), "r", "c", false));
    }

    #[test]
    fn downsampling_keeps_endpoints() {
        let k = downsample_indices(10_001, 1000);
        assert!(k.len() <= 1000);
        assert_eq!((k[0], *k.last().unwrap()), (0, 10_000));
        assert_eq!(downsample_indices(5, 1000), vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn snapshot_means_per_epoch() {
        let mut a = RegretTrace::new("alb_norm");
        a.snapshot(1, SnapshotValue::Norm(4.0));
        a.snapshot(2, SnapshotValue::Norm(2.0));
        let mut b = RegretTrace { trial: 1, ..RegretTrace::new("alb_norm") };
        b.snapshot(1, SnapshotValue::Norm(2.0));
        b.snapshot(2, SnapshotValue::Norm(1.0));
        let s = snapshot_series(&[a, b]);
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].x, vec![1.0, 2.0]);
        assert_eq!(s[0].y, vec![3.0, 1.5]);
    }

    #[test]
    fn kind_parsing() {
        assert_eq!("regret".parse::<PlotKind>().unwrap(), PlotKind::Regret);
        assert!("bars".parse::<PlotKind>().is_err());
    }
}
