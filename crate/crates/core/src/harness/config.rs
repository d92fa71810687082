use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::problems::{InstanceFile, DEFAULT_ENUMERATION_CAP};
use crate::{Error, Result};

/// Independent runs per problem size unless overridden.
pub const DEFAULT_RUNS_PER_N: usize = 500;

/// Which `k` the worst-case bound of a batch uses.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KSourcePolicy {
    Theoretical,
    /// The batch's own mean longest zero-gain interval.
    #[default]
    Empirical,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    /// Instance template. For named families `n` is replaced per size.
    pub problem: InstanceFile,
    pub n_values: Vec<usize>,
    pub mu: usize,
    pub lambda: usize,
    pub poisson_lambda: Option<f64>,
    pub runs_per_n: usize,
    pub base_seed: u64,
    /// Per-run generation cap; `None` derives it from the theoretical
    /// worst-case bound.
    pub max_generations: Option<u64>,
    pub k_source: KSourcePolicy,
    /// Worker threads; `None` uses all cores. Never affects results.
    pub threads: Option<usize>,
    pub enumeration_cap: usize,
    pub output_dir: Option<PathBuf>,
    /// Also write one CSV row per generation of every run.
    pub export_traces: bool,
}

impl ExperimentConfig {
    /// Configuration for one of the named families over `n_min..=n_max`.
    pub fn family(name: &str, n_min: usize, n_max: usize) -> Self {
        let poisson_lambda = (name == "paper-tsp").then_some(1.0);
        Self {
            problem: InstanceFile {
                problem: Some(name.to_string()),
                ..InstanceFile::default()
            },
            n_values: (n_min..=n_max).collect(),
            mu: 2,
            lambda: 10,
            poisson_lambda,
            runs_per_n: DEFAULT_RUNS_PER_N,
            base_seed: 0,
            max_generations: None,
            k_source: KSourcePolicy::Empirical,
            threads: None,
            enumeration_cap: DEFAULT_ENUMERATION_CAP,
            output_dir: None,
            export_traces: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.runs_per_n < 2 {
            return Err(Error::Config(format!(
                "runs_per_n must be at least 2, got {}",
                self.runs_per_n
            )));
        }
        if self.n_values.is_empty() {
            return Err(Error::Config("empty n range".into()));
        }
        if self.mu == 0 || self.lambda == 0 {
            return Err(Error::Config("mu and lambda must be at least 1".into()));
        }
        if self.threads == Some(0) {
            return Err(Error::Config("threads must be at least 1".into()));
        }
        Ok(())
    }
}

/// Experiment configuration file: an instance description plus optional
/// experiment settings. Command-line flags override these values.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ExperimentFile {
    #[serde(flatten)]
    pub instance: InstanceFile,
    pub n_min: Option<usize>,
    pub n_max: Option<usize>,
    pub mu: Option<usize>,
    pub lambda: Option<usize>,
    pub poisson_lambda: Option<f64>,
    pub runs: Option<usize>,
    pub seed: Option<u64>,
    pub max_generations: Option<u64>,
    pub k_source: Option<KSourcePolicy>,
    pub threads: Option<usize>,
    pub out: Option<PathBuf>,
}

impl ExperimentFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        serde_json::from_str(&text).map_err(|e| Error::Parse {
            path: path.to_path_buf(),
            message: e.to_string(),
        })
    }

    /// Applies the file's settings on top of the defaults.
    pub fn into_config(self) -> Result<ExperimentConfig> {
        let name = self
            .instance
            .problem
            .clone()
            .ok_or_else(|| Error::Config("config has no `problem`".into()))?;
        let is_family = self.instance.experiment_problem().is_some();
        let (n_min, n_max) = match (self.n_min, self.n_max, self.instance.n) {
            (Some(a), Some(b), _) => (a, b),
            (Some(a), None, _) | (None, Some(a), _) => (a, a),
            (None, None, Some(n)) => (n, n),
            (None, None, None) if !is_family => (0, 0),
            (None, None, None) => {
                return Err(Error::Config("config needs n, or n_min and n_max".into()))
            }
        };
        let mut cfg = ExperimentConfig::family(&name, n_min, n_max);
        if !is_family {
            // Explicit instances have a single size, resolved when loaded.
            cfg.n_values = vec![self.instance.n.unwrap_or(n_min)];
            cfg.poisson_lambda = (name == "tsp").then_some(1.0);
        }
        cfg.problem = self.instance;
        if let Some(v) = self.mu {
            cfg.mu = v;
        }
        if let Some(v) = self.lambda {
            cfg.lambda = v;
        }
        if self.poisson_lambda.is_some() {
            cfg.poisson_lambda = self.poisson_lambda;
        }
        if let Some(v) = self.runs {
            cfg.runs_per_n = v;
        }
        if let Some(v) = self.seed {
            cfg.base_seed = v;
        }
        cfg.max_generations = self.max_generations.or(cfg.max_generations);
        if let Some(v) = self.k_source {
            cfg.k_source = v;
        }
        cfg.threads = self.threads.or(cfg.threads);
        cfg.output_dir = self.out.or(cfg.output_dir);
        Ok(cfg)
    }
}
