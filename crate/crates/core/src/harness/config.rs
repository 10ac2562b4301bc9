use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::confidence::WidthRule;
use crate::corpus::IngestOptions;
use crate::envs::ContextLaw;
use crate::error::{AlbError, Result};
use crate::policies::{AlbDimConfig, AlbNormConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentKind {
    Norm,
    DimContinuum,
    DimFinite,
    Realdata,
}

/// Ground-truth world. Which fields are required depends on the kind.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arms: Option<usize>,
    pub sigma: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta_norm: Option<f64>,
    #[serde(default)]
    pub context_law: ContextLaw,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sparsity: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ladder: Option<Vec<usize>>,
    /// 1-based ladder level holding the support.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub true_level: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau: Option<f64>,
}

/// Norm-adaptive learner plus the fixed bound given to the non-adaptive
/// baseline.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NormSection {
    pub tau: usize,
    pub t1: u64,
    pub delta1: f64,
    pub delta_s: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b1_override: Option<f64>,
    pub baseline_b: f64,
    #[serde(default)]
    pub width: WidthRule,
}

impl NormSection {
    pub fn learner(&self) -> AlbNormConfig {
        AlbNormConfig {
            tau: self.tau,
            t1: self.t1,
            delta1: self.delta1,
            delta_s: self.delta_s,
            b1_override: self.b1_override,
            width: self.width,
        }
    }
}

pub type DimSection = AlbDimConfig;

fn default_max_iters() -> usize {
    100
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RealDataSection {
    /// Rating file; relative paths resolve against the config file.
    pub csv: PathBuf,
    pub clusters: usize,
    #[serde(default = "default_max_iters")]
    pub max_iters: usize,
    #[serde(default)]
    pub ingest: IngestOptions,
}

/// One experiment: a world, the learners to compare and the trial layout.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub kind: ExperimentKind,
    pub trials: usize,
    pub base_seed: u64,
    pub horizon: u64,
    pub instance: InstanceConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub norm: Option<NormSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<DimSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub realdata: Option<RealDataSection>,
}

fn need<T: Copy>(v: Option<T>, field: &str) -> Result<T> {
    v.ok_or_else(|| AlbError::config(field, "required for this experiment kind"))
}

fn positive(v: f64, field: &str) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(AlbError::config(field, format!("must be positive, got {v}")))
    }
}

fn prefixed(e: AlbError, section: &str) -> AlbError {
    match e {
        AlbError::Config { field, message } => AlbError::Config { field: format!("{section}.{field}"), message },
        other => other,
    }
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(text).map_err(|e| {
            let field = e.span().map_or_else(|| "<root>".to_string(), |s| format!("bytes {}..{}", s.start, s.end));
            AlbError::config(field, e.message().to_string())
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| AlbError::config("<root>", e.to_string()))
    }

    /// Reads and validates a config file, resolving the rating file path
    /// against the config's directory.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| AlbError::io(path, e))?;
        let mut cfg = Self::from_toml(&text)?;
        if let (Some(rd), Some(dir)) = (cfg.realdata.as_mut(), path.parent()) {
            if rd.csv.is_relative() {
                rd.csv = dir.join(&rd.csv);
            }
        }
        Ok(cfg)
    }

    pub fn seeds(&self) -> Vec<u64> {
        (0..self.trials as u64).map(|t| self.base_seed.wrapping_add(t)).collect()
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(AlbError::config("trials", "must be >= 1"));
        }
        if self.horizon == 0 {
            return Err(AlbError::config("horizon", "must be >= 1"));
        }
        let inst = &self.instance;
        if !(inst.sigma >= 0.0) {
            return Err(AlbError::config("instance.sigma", format!("must be >= 0, got {}", inst.sigma)));
        }
        match self.kind {
            ExperimentKind::Norm => {
                let d = need(inst.dim, "instance.dim")?;
                let k = need(inst.arms, "instance.arms")?;
                let norm = need(inst.theta_norm, "instance.theta_norm")?;
                if d == 0 || k == 0 {
                    return Err(AlbError::config("instance.dim", "dimension and arm count must be >= 1"));
                }
                if norm < 0.0 {
                    return Err(AlbError::config("instance.theta_norm", "must be >= 0"));
                }
                let n = need(self.norm, "norm")?;
                self.check_norm(&n, d, k)?;
            }
            ExperimentKind::DimContinuum => {
                let d = need(inst.dim, "instance.dim")?;
                let s = need(inst.sparsity, "instance.sparsity")?;
                let g = need(inst.gamma, "instance.gamma")?;
                if s == 0 || s > d {
                    return Err(AlbError::config("instance.sparsity", format!("must lie in 1..={d}")));
                }
                if !(g > 0.0 && g * g * s as f64 <= 1.0) {
                    return Err(AlbError::config("instance.gamma", "need gamma > 0 and sparsity·gamma² <= 1"));
                }
                need(self.dim, "dim")?.validate().map_err(|e| prefixed(e, "dim"))?;
            }
            ExperimentKind::DimFinite => {
                let ladder = inst.ladder.as_ref().ok_or_else(|| AlbError::config("instance.ladder", "required"))?;
                if ladder.is_empty() || ladder[0] == 0 || ladder.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(AlbError::config("instance.ladder", "must be strictly increasing and positive"));
                }
                let m = need(inst.true_level, "instance.true_level")?;
                if m == 0 || m > ladder.len() {
                    return Err(AlbError::config("instance.true_level", format!("must lie in 1..={}", ladder.len())));
                }
                let g = need(inst.gamma, "instance.gamma")?;
                if !(g > 0.0 && g * g * ladder[m - 1] as f64 <= 1.0) {
                    return Err(AlbError::config("instance.gamma", "need gamma > 0 and d_m*·gamma² <= 1"));
                }
                if need(inst.arms, "instance.arms")? == 0 {
                    return Err(AlbError::config("instance.arms", "must be >= 1"));
                }
                positive(need(inst.tau, "instance.tau")?, "instance.tau")?;
                need(self.dim, "dim")?.validate().map_err(|e| prefixed(e, "dim"))?;
            }
            ExperimentKind::Realdata => {
                let rd = self.realdata.as_ref().ok_or_else(|| AlbError::config("realdata", "required"))?;
                if rd.clusters == 0 {
                    return Err(AlbError::config("realdata.clusters", "must be >= 1"));
                }
                let n = need(self.norm, "norm")?;
                if n.b1_override.is_none() {
                    // fixed per-arm contexts make the differenced design singular
                    return Err(AlbError::config("norm.b1_override", "required for clustered data"));
                }
                self.check_norm(&n, 0, rd.clusters)?;
            }
        }
        Ok(())
    }

    fn check_norm(&self, n: &NormSection, dim: usize, arms: usize) -> Result<()> {
        n.learner().validate(dim).map_err(|e| prefixed(e, "norm"))?;
        positive(n.baseline_b, "norm.baseline_b")?;
        if let WidthRule::Compact { c } = n.width {
            if !(c >= 0.0) {
                return Err(AlbError::config("norm.width.c", "must be >= 0"));
            }
        }
        let warmup = 2 * n.tau as u64 + arms as u64;
        if self.horizon < warmup {
            return Err(AlbError::config("horizon", format!("must cover the {warmup}-round warm-up (2·tau + arms)")));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const NORM: &str = r#"
kind = "norm"
trials = 3
base_seed = 11
horizon = 500

[instance]
dim = 3
arms = 4
sigma = 0.5
theta_norm = 0.2

[norm]
tau = 3
t1 = 20
delta1 = 0.1
delta_s = 0.1
b1_override = 10.0
baseline_b = 10.0
width = { rule = "compact", c = 1.0 }
"#;

    #[test]
    fn parses_and_round_trips() {
        let cfg = ExperimentConfig::from_toml(NORM).unwrap();
        assert_eq!(cfg.seeds(), vec![11, 12, 13]);
        let again = ExperimentConfig::from_toml(&cfg.to_toml().unwrap()).unwrap();
        assert_eq!(cfg, again);
    }

    #[test]
    fn unknown_key_is_an_error() {
        let text = NORM.replace("sigma = 0.5", "sigma = 0.5\nsigmaa = 1");
        assert!(matches!(ExperimentConfig::from_toml(&text), Err(AlbError::Config { .. })));
    }

    #[test]
    fn field_level_messages() {
        let err = ExperimentConfig::from_toml(&NORM.replace("trials = 3", "trials = 0")).unwrap_err();
        assert!(err.to_string().contains("`trials`"));
        let err = ExperimentConfig::from_toml(&NORM.replace("tau = 3", "tau = 1")).unwrap_err();
        assert!(err.to_string().contains("`norm.tau`"), "{err}");
        let err = ExperimentConfig::from_toml(&NORM.replace("horizon = 500", "horizon = 5")).unwrap_err();
        assert!(err.to_string().contains("warm-up"));
        let err = ExperimentConfig::from_toml(&NORM.replace("theta_norm = 0.2", "")).unwrap_err();
        assert!(err.to_string().contains("instance.theta_norm"));
    }

    #[test]
    fn dim_sections_round_trip() {
        let text = r#"
kind = "dim_finite"
trials = 2
base_seed = 1
horizon = 1000

[instance]
arms = 5
sigma = 0.25
ladder = [5, 10, 20]
true_level = 1
gamma = 0.25
tau = 4.47

[dim]
t0 = 100
delta = 0.1
"#;
        let cfg = ExperimentConfig::from_toml(text).unwrap();
        assert_eq!(cfg.dim.unwrap().threshold_base, 2.0);
        assert_eq!(ExperimentConfig::from_toml(&cfg.to_toml().unwrap()).unwrap(), cfg);
        let bad = text.replace("true_level = 1", "true_level = 4");
        assert!(ExperimentConfig::from_toml(&bad).unwrap_err().to_string().contains("instance.true_level"));
    }
}
