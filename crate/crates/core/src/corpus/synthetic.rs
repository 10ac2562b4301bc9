use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use rand::Rng;
use rand_distr::StandardNormal;

use super::RatedRow;
use crate::error::{AlbError, Result};

/// Ratings on the `{0, 1, 2, 3, 4}` scale from a latent linear score.
///
/// Features are standard normal; the rating is `2 + ⟨w, x⟩ + noise`
/// rounded and clipped, with `w` drawn once per call.
pub fn synthetic_ratings<R: Rng + ?Sized>(rows: usize, dim: usize, rng: &mut R) -> Vec<RatedRow> {
    let w: Vec<f64> = (0..dim).map(|_| rng.sample::<f64, _>(StandardNormal) / (dim as f64).sqrt()).collect();
    (0..rows)
        .map(|_| {
            let features: Vec<f64> = (0..dim).map(|_| rng.sample(StandardNormal)).collect();
            let score: f64 = features.iter().zip(&w).map(|(x, w)| x * w).sum::<f64>() + 0.5 * rng.sample::<f64, _>(StandardNormal);
            RatedRow { reward: (2.0 + score).round().clamp(0.0, 4.0), features }
        })
        .collect()
}

/// Headerless `rating,f_0,…` file.
pub fn write_ratings_csv(rows: &[RatedRow], path: &Path) -> Result<()> {
    let file = File::create(path).map_err(|e| AlbError::io(path, e))?;
    let mut w = BufWriter::new(file);
    for r in rows {
        let mut line = format!("{}", r.reward);
        for v in &r.features {
            line.push_str(&format!(",{v:.6}"));
        }
        line.push('\n');
        w.write_all(line.as_bytes()).map_err(|e| AlbError::io(path, e))?;
    }
    w.flush().map_err(|e| AlbError::io(path, e))
}
