use serde::{Deserialize, Serialize};

/// Smallest slack handed to a learner.
pub const DELTA_FLOOR: f64 = 1e-12;

/// One epoch of the doubling schedule used by norm adaptation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormEpoch {
    /// 1-based epoch index.
    pub index: usize,
    pub length: u64,
    pub delta: f64,
}

/// `T_{i+1} = 2 T_i`, `δ_{i+1} = δ_i / 2`.
pub fn norm_schedule(t1: u64, delta1: f64) -> impl Iterator<Item = NormEpoch> {
    (1usize..).map(move |index| {
        let shift = (index - 1).min(62) as u32;
        NormEpoch {
            index,
            length: t1.saturating_mul(1u64 << shift),
            delta: (delta1 / 2f64.powi(shift as i32)).max(DELTA_FLOOR),
        }
    })
}

/// One phase of the dimension-adaptive schedule.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DimPhase {
    /// 0-based phase index.
    pub index: usize,
    /// Regret-minimization block length `25^i T₀`.
    pub regret_len: u64,
    /// Exploration block length `5^i ⌈√T₀⌉`.
    pub explore_len: u64,
    /// Threshold scale `ε_i = C^{-i}`.
    pub epsilon: f64,
    pub delta: f64,
    /// First round (0-based) of the phase.
    pub start: u64,
}

impl DimPhase {
    pub fn end(&self) -> u64 {
        self.start.saturating_add(self.regret_len).saturating_add(self.explore_len)
    }

    pub fn explore_start(&self) -> u64 {
        self.start.saturating_add(self.regret_len)
    }
}

/// `⌈√T₀⌉` without floating-point rounding surprises.
pub fn ceil_sqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while r * r < n {
        r += 1;
    }
    r
}

pub fn dim_schedule(t0: u64, delta: f64, threshold_base: f64) -> impl Iterator<Item = DimPhase> {
    let root = ceil_sqrt(t0);
    let mut start = 0u64;
    (0usize..).map(move |index| {
        let i = index.min(60) as u32;
        let phase = DimPhase {
            index,
            regret_len: 25u64.checked_pow(i).and_then(|p| p.checked_mul(t0)).unwrap_or(u64::MAX),
            explore_len: 5u64.checked_pow(i).and_then(|p| p.checked_mul(root)).unwrap_or(u64::MAX),
            epsilon: threshold_base.powi(-(index as i32)),
            delta: (delta / 2f64.powi(index as i32)).max(DELTA_FLOOR),
            start,
        };
        start = phase.end();
        phase
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn doubling_schedule() {
        let e: Vec<_> = norm_schedule(100, 0.1).take(4).collect();
        assert_eq!(e.iter().map(|e| e.length).collect::<Vec<_>>(), vec![100, 200, 400, 800]);
        assert_eq!(e.iter().map(|e| e.delta).collect::<Vec<_>>(), vec![0.1, 0.05, 0.025, 0.0125]);
        for w in e.windows(2) {
            assert_eq!(w[1].length, 2 * w[0].length);
            assert_eq!(w[1].delta, w[0].delta / 2.0);
        }
    }

    #[test]
    fn dimension_schedule() {
        let p: Vec<_> = dim_schedule(100, 0.1, 2.0).take(3).collect();
        assert_eq!(p.iter().map(|p| p.regret_len).collect::<Vec<_>>(), vec![100, 2500, 62500]);
        assert_eq!(p.iter().map(|p| p.explore_len).collect::<Vec<_>>(), vec![10, 50, 250]);
        assert_eq!(p[1].start, 110);
        assert_eq!(p[2].start, 110 + 2550);
        for (i, ph) in dim_schedule(37, 0.2, 3.0).take(8).enumerate() {
            assert_eq!(ph.regret_len, 25u64.pow(i as u32) * 37);
            assert_eq!(ph.explore_len, 5u64.pow(i as u32) * 7);
            assert_eq!(ph.epsilon, 3f64.powi(-(i as i32)));
            assert_eq!(ph.delta, 0.2 / 2f64.powi(i as i32));
        }
    }

    #[test]
    fn ceil_sqrt_exact() {
        assert_eq!(ceil_sqrt(100), 10);
        assert_eq!(ceil_sqrt(101), 11);
        assert_eq!(ceil_sqrt(1), 1);
        assert_eq!(ceil_sqrt(29635), 173);
    }

    #[test]
    fn delta_floor_applies() {
        let last = norm_schedule(1, 0.1).nth(80).unwrap();
        assert_eq!(last.delta, DELTA_FLOOR);
    }
}
