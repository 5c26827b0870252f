//! Job configuration and deterministic JSON report plumbing.
//!
//! Reports embed the full configuration echo, lamination depths, the Siegel
//! angle resolution, and every tolerance; floats are rounded to 12
//! significant digits before serialization so identical configurations give
//! byte-identical files. Wall-clock goes to a sidecar, never into the
//! deterministic payload.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::num::thread_count;
use crate::pcf::PcfSpec;
use crate::theta::Theta;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default)]
pub struct Tolerances {
    pub landing_stability: f64,
    pub colanding: f64,
    pub critical_ray_landing: f64,
    pub pcf_residual: f64,
    pub g_residual: f64,
    pub derivative_at_zero: f64,
    pub probe_ratio: f64,
    pub probe_tail_jitter: f64,
    pub match_multiplier_margin: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            landing_stability: 1e-6,
            colanding: 1e-4,
            critical_ray_landing: 1e-3,
            pcf_residual: 1e-12,
            g_residual: 1e-9,
            derivative_at_zero: 1e-12,
            probe_ratio: 0.1,
            probe_tail_jitter: 0.05,
            match_multiplier_margin: 1e-6,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default)]
pub struct JobConfig {
    /// Rotation number: golden, silver, cbrt(1/4), p/q, or a decimal.
    pub theta: String,
    /// Fixture name, "super:<angle>", or "mis:<angle>".
    pub pcf: String,
    /// Siegel angle resolution N (angles carry denominator 2^N).
    pub resolution_bits: u32,
    /// Materialized lamination pullback depth for structure queries.
    pub lamination_depth: usize,
    pub drop_depth: usize,
    pub probe_depth: usize,
    pub probe_samples: usize,
    pub ray_levels: usize,
    pub boundary_samples: usize,
    pub match_period_max: usize,
    pub out_dir: String,
    pub seed: u64,
    pub tolerances: Tolerances,
}

impl Default for JobConfig {
    fn default() -> Self {
        JobConfig {
            theta: "golden".into(),
            pcf: "basilica".into(),
            resolution_bits: 64,
            lamination_depth: 8,
            drop_depth: 7,
            probe_depth: 20,
            probe_samples: 48,
            ray_levels: 96,
            boundary_samples: 4096,
            match_period_max: 2,
            out_dir: "out".into(),
            seed: 7,
            tolerances: Tolerances::default(),
        }
    }
}

impl JobConfig {
    pub fn from_toml_file(path: &Path) -> Result<JobConfig> {
        let text = std::fs::read_to_string(path)?;
        toml::from_str(&text)
            .map_err(|e| Error::validation(format!("config {}: {e}", path.display())))
    }

    pub fn theta_value(&self) -> Result<Theta> {
        Theta::parse(&self.theta)
    }

    pub fn pcf_spec(&self) -> Result<PcfSpec> {
        parse_pcf(&self.pcf)
    }
}

pub fn parse_pcf(s: &str) -> Result<PcfSpec> {
    if let Some(rest) = s.strip_prefix("super:") {
        return PcfSpec::superattracting(rest.parse()?);
    }
    if let Some(rest) = s.strip_prefix("mis:") {
        return PcfSpec::misiurewicz(rest.parse()?);
    }
    PcfSpec::named(s)
}

/// Default Newton seed for the parameter c of a named fixture.
pub fn default_c_seed(spec: &PcfSpec) -> num_complex::Complex64 {
    use num_complex::Complex64;
    match spec.name.as_str() {
        "basilica" => Complex64::new(-0.9, 0.05),
        "airplane" => Complex64::new(-1.7, 0.0),
        "rabbit" => Complex64::new(-0.1, 0.8),
        "chebyshev" => Complex64::new(-2.1, 0.0),
        "dendrite154" => Complex64::new(-1.5, 0.0),
        _ => Complex64::new(-0.5, 0.5),
    }
}

/// The deterministic report envelope.
#[derive(Clone, Debug, Serialize)]
pub struct Report<T: Serialize> {
    pub workbench_version: &'static str,
    pub modules: Vec<&'static str>,
    pub config: JobConfig,
    pub threads: usize,
    pub payload: T,
}

pub const MODULES: &[&str] = &[
    "angle_core",
    "lamination",
    "pcf_comb",
    "siegel_comb",
    "mating_comb",
    "dynamics_num",
    "cli_reports",
];

impl<T: Serialize> Report<T> {
    pub fn new(config: &JobConfig, payload: T) -> Report<T> {
        Report {
            workbench_version: env!("CARGO_PKG_VERSION"),
            modules: MODULES.to_vec(),
            config: config.clone(),
            threads: thread_count(),
            payload,
        }
    }

    /// Deterministic JSON bytes: floats rounded to 12 significant digits.
    pub fn to_json_bytes(&self) -> Result<Vec<u8>> {
        let mut value = serde_json::to_value(self)
            .map_err(|e| Error::numeric(format!("serialization failed: {e}")))?;
        round_floats(&mut value);
        let mut bytes = serde_json::to_vec_pretty(&value)
            .map_err(|e| Error::numeric(format!("serialization failed: {e}")))?;
        bytes.push(b'\n');
        Ok(bytes)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        if let Some(dir) = path.parent() {
            std::fs::create_dir_all(dir)?;
        }
        std::fs::write(path, self.to_json_bytes()?)?;
        Ok(())
    }
}

/// Round every float in a JSON tree to 12 significant digits.
pub fn round_floats(value: &mut Value) {
    match value {
        Value::Number(n) => {
            if let Some(f) = n.as_f64() {
                if n.as_i64().is_none() && n.as_u64().is_none() {
                    if let Some(rounded) = serde_json::Number::from_f64(round_sig(f, 12)) {
                        *value = Value::Number(rounded);
                    }
                }
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_floats),
        Value::Object(map) => map.values_mut().for_each(round_floats),
        _ => {}
    }
}

pub fn round_sig(x: f64, digits: i32) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    let mag = x.abs().log10().floor() as i32;
    let factor = 10f64.powi(digits - 1 - mag);
    (x * factor).round() / factor
}

/// Wall-clock sidecar, outside the deterministic payload.
pub fn write_timing_sidecar(path: &Path, wall_ms: u128) -> Result<()> {
    let sidecar = sidecar_path(path);
    let body = format!("{{\n  \"wall_clock_ms\": {wall_ms}\n}}\n");
    std::fs::write(sidecar, body)?;
    Ok(())
}

fn sidecar_path(path: &Path) -> PathBuf {
    let mut p = path.to_path_buf();
    let stem = p
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "report".into());
    p.set_file_name(format!("{stem}.timing.json"));
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_sig_is_stable() {
        assert_eq!(round_sig(1.0 / 3.0, 12), 0.333333333333);
        assert_eq!(round_sig(-1.754877666246, 12), -1.75487766625);
        assert_eq!(round_sig(0.0, 12), 0.0);
    }

    #[test]
    fn identical_configs_give_identical_bytes() {
        let cfg = JobConfig::default();
        let r1 = Report::new(&cfg, vec![0.1234567890123456f64, 2.0]);
        let r2 = Report::new(&cfg, vec![0.1234567890123456f64, 2.0]);
        assert_eq!(r1.to_json_bytes().unwrap(), r2.to_json_bytes().unwrap());
    }

    #[test]
    fn toml_config_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("job.toml");
        std::fs::write(&path, "theta = \"silver\"\npcf = \"airplane\"\nseed = 11\n").unwrap();
        let cfg = JobConfig::from_toml_file(&path).unwrap();
        assert_eq!(cfg.theta, "silver");
        assert_eq!(cfg.pcf, "airplane");
        assert_eq!(cfg.seed, 11);
        // defaults fill the rest
        assert_eq!(cfg.resolution_bits, 64);
    }
}
