//! Persisted experiment configurations.
//!
//! A run resolves in three layers: per-experiment defaults, then
//! command-line flags, then a config file. The file is applied last
//! and wins over flags, so replaying a stored configuration ignores
//! stray ad hoc overrides and reproduces the recorded run.

use std::f64::consts::PI;

use phasekit_core::{ArcSet, PhaseFamily};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::RunError;

pub const EXPERIMENTS: [&str; 11] = [
    "effect",
    "spectrum",
    "covariance",
    "commute",
    "complementarity",
    "density",
    "variance",
    "uncertainty",
    "norm-scan",
    "value-scan",
    "structure",
];

/// Table output format. The manifest is always JSON.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

/// Fully resolved run description. It is serialized verbatim into the
/// manifest and into `<experiment>_config.json`; loading that file
/// back with `--config` reproduces the run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub experiment: String,
    pub family: PhaseFamily,
    /// Arc set as `[a, b)` endpoint pairs in radians.
    pub arcs: Vec<[f64; 2]>,
    /// Truncation dimension; scans treat it as a floor or a cap as
    /// documented per experiment.
    pub dim: usize,
    /// Density grid size, raised automatically when a scan needs a
    /// finer grid than requested.
    pub grid: usize,
    /// Dimension ladder for norm scans.
    pub dims: Vec<usize>,
    /// Geometric amplitudes for density, variance, and value scans.
    pub rs: Vec<f64>,
    /// Coherent amplitudes for density and uncertainty scans.
    pub zs: Vec<f64>,
    /// Number head cutoff for value scans.
    pub p: usize,
    /// Half width of the phase concentration window.
    pub delta: f64,
    /// Mixture weights for the noncomplementarity floor.
    pub epsilons: Vec<f64>,
    /// Random trial count where an experiment draws inputs.
    pub trials: usize,
    /// Headline verdict tolerance of the experiment.
    pub tol: f64,
    /// Evaluation block for commutant estimates.
    pub d_eval: usize,
    /// Construction dimension for commutant estimates and random-state
    /// batteries.
    pub d_big: usize,
    pub seed: u64,
    pub format: OutputFormat,
    /// Output directory. Excluded from the stored form so a persisted
    /// configuration can be replayed into a fresh location.
    #[serde(default, skip_serializing)]
    pub out: Option<String>,
}

/// Partial configuration from flags or a config file. Present fields
/// replace the current value.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigPatch {
    pub experiment: Option<String>,
    pub family: Option<PhaseFamily>,
    pub arcs: Option<Vec<[f64; 2]>>,
    pub dim: Option<usize>,
    pub grid: Option<usize>,
    pub dims: Option<Vec<usize>>,
    pub rs: Option<Vec<f64>>,
    pub zs: Option<Vec<f64>>,
    pub p: Option<usize>,
    pub delta: Option<f64>,
    pub epsilons: Option<Vec<f64>>,
    pub trials: Option<usize>,
    pub tol: Option<f64>,
    pub d_eval: Option<usize>,
    pub d_big: Option<usize>,
    pub seed: Option<u64>,
    pub format: Option<OutputFormat>,
    pub out: Option<String>,
}

impl ExperimentConfig {
    /// Baseline configuration of a named experiment, tuned so that the
    /// default invocation runs the standard study of that quantity.
    pub fn defaults(experiment: &str) -> Result<Self, RunError> {
        if !EXPERIMENTS.contains(&experiment) {
            return Err(RunError::Config(format!(
                "unknown experiment '{experiment}'"
            )));
        }
        let mut cfg = ExperimentConfig {
            experiment: experiment.to_string(),
            family: PhaseFamily::Canonical,
            arcs: vec![[0.0, PI]],
            dim: 16,
            grid: 1024,
            dims: vec![16, 64, 256],
            rs: vec![0.9, 0.99, 0.999],
            zs: vec![2.0, 3.0, 4.0, 5.0, 6.0],
            p: 3,
            delta: 0.1,
            epsilons: vec![0.1, 0.5],
            trials: 20,
            tol: 1e-10,
            d_eval: 16,
            d_big: 48,
            seed: 7,
            format: OutputFormat::Csv,
            out: None,
        };
        match experiment {
            "effect" => {}
            "spectrum" => {
                cfg.dim = 32;
            }
            "covariance" => {
                cfg.dim = 64;
                cfg.trials = 50;
                cfg.tol = 1e-12;
            }
            "commute" => {
                cfg.tol = 1e-8;
            }
            "complementarity" => {
                cfg.dim = 64;
                cfg.d_big = 128;
                cfg.trials = 1000;
            }
            "density" => {
                cfg.dim = 200;
                cfg.rs = vec![0.3, 0.5, 0.7, 0.9];
                cfg.zs = vec![2.0];
                cfg.tol = 1e-6;
            }
            "variance" => {
                cfg.grid = 4096;
            }
            "uncertainty" => {
                cfg.dim = 150;
            }
            "norm-scan" => {}
            "value-scan" => {}
            "structure" => {
                cfg.dim = 64;
                cfg.tol = 1e-8;
            }
            _ => unreachable!(),
        }
        Ok(cfg)
    }

    /// Overwrite fields present in the patch. A patch naming a
    /// different experiment is rejected.
    pub fn apply(&mut self, patch: &ConfigPatch) -> Result<(), RunError> {
        if let Some(e) = &patch.experiment {
            if e != &self.experiment {
                return Err(RunError::Config(format!(
                    "config is for experiment '{e}', not '{}'",
                    self.experiment
                )));
            }
        }
        if let Some(v) = &patch.family {
            self.family = v.clone();
        }
        if let Some(v) = &patch.arcs {
            self.arcs = v.clone();
        }
        if let Some(v) = patch.dim {
            self.dim = v;
        }
        if let Some(v) = patch.grid {
            self.grid = v;
        }
        if let Some(v) = &patch.dims {
            self.dims = v.clone();
        }
        if let Some(v) = &patch.rs {
            self.rs = v.clone();
        }
        if let Some(v) = &patch.zs {
            self.zs = v.clone();
        }
        if let Some(v) = patch.p {
            self.p = v;
        }
        if let Some(v) = patch.delta {
            self.delta = v;
        }
        if let Some(v) = &patch.epsilons {
            self.epsilons = v.clone();
        }
        if let Some(v) = patch.trials {
            self.trials = v;
        }
        if let Some(v) = patch.tol {
            self.tol = v;
        }
        if let Some(v) = patch.d_eval {
            self.d_eval = v;
        }
        if let Some(v) = patch.d_big {
            self.d_big = v;
        }
        if let Some(v) = patch.seed {
            self.seed = v;
        }
        if let Some(v) = patch.format {
            self.format = v;
        }
        if let Some(v) = &patch.out {
            self.out = Some(v.clone());
        }
        Ok(())
    }

    /// Defaults, then flags, then the config file.
    pub fn resolve(
        experiment: &str,
        flags: &ConfigPatch,
        file: Option<&ConfigPatch>,
    ) -> Result<Self, RunError> {
        let mut cfg = Self::defaults(experiment)?;
        cfg.apply(flags)?;
        if let Some(patch) = file {
            cfg.apply(patch)?;
        }
        Ok(cfg)
    }

    pub fn arc_set(&self) -> ArcSet {
        ArcSet::new(self.arcs.iter().map(|p| (p[0], p[1])))
    }

    /// Stored form: pretty JSON without the output directory.
    pub fn canonical_json(&self) -> String {
        let mut stored = self.clone();
        stored.out = None;
        let mut text =
            serde_json::to_string_pretty(&stored).expect("config serialization is infallible");
        text.push('\n');
        text
    }

    /// Hex SHA-256 of the stored form, recorded in the manifest.
    pub fn sha256(&self) -> String {
        let digest = Sha256::digest(self.canonical_json().as_bytes());
        let mut hex = String::with_capacity(64);
        for byte in digest {
            hex.push_str(&format!("{byte:02x}"));
        }
        hex
    }
}
