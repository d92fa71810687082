use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::model::Fitness;
use crate::{Error, Result};

use super::gain::{longest_zero_gain_interval, GainTrace};

/// Batch statistics over the uncensored runs of one configuration.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EstimateSummary {
    /// Mean first hitting time `T̂₀`.
    pub t0_hat: f64,
    pub t_max: u64,
    /// Mean longest zero-gain interval `k̂`, the estimate of `k_low`.
    pub k_hat: f64,
    /// Smallest non-zero gain seen in any run; `None` if every run started at
    /// the optimum.
    pub alpha_hat: Option<Fitness>,
    pub run_count: usize,
    pub censored_count: usize,
}

impl EstimateSummary {
    pub fn is_valid(&self) -> bool {
        self.censored_count == 0
    }
}

pub fn estimate_summary(traces: &[GainTrace], censored_count: usize) -> Result<EstimateSummary> {
    if traces.is_empty() {
        return Err(Error::Estimation(if censored_count > 0 {
            format!("all {censored_count} runs censored")
        } else {
            "no runs to summarise".into()
        }));
    }
    let runs = traces.len() as f64;
    let t0_hat = traces.iter().map(|t| t.fht as f64).sum::<f64>() / runs;
    let t_max = traces.iter().map(|t| t.fht).max().expect("non-empty");
    let k_hat = traces
        .iter()
        .map(|t| longest_zero_gain_interval(t) as f64)
        .sum::<f64>()
        / runs;
    let alpha_hat = traces
        .iter()
        .flat_map(|t| t.gains.iter().copied())
        .filter(|&g| g != 0)
        .min();
    Ok(EstimateSummary {
        t0_hat,
        t_max,
        k_hat,
        alpha_hat,
        run_count: traces.len(),
        censored_count,
    })
}

/// Sample estimate of the `k`-step expected gain at one potential level.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MultipleGainSample {
    pub mean: f64,
    pub count: usize,
    /// Standard error of the mean; zero for a single observation.
    pub std_error: f64,
}

/// Mean of `Φ_t − Φ_{t+k}` over every position `t ≤ fht` with
/// `Φ_t = potential_level`, pooled over all traces. Windows reaching past the
/// hitting time read `Φ = 0`. Returns `None` when the level never occurs.
pub fn empirical_multiple_gain(
    traces: &[GainTrace],
    k: usize,
    potential_level: Fitness,
) -> Result<Option<MultipleGainSample>> {
    if k == 0 {
        return Err(Error::Argument("window length k must be at least 1".into()));
    }
    let samples: Vec<f64> = traces
        .iter()
        .flat_map(|trace| {
            trace
                .potentials
                .iter()
                .enumerate()
                .filter(move |(_, &p)| p == potential_level)
                .map(move |(t, &p)| (p - trace.potential_at(t + k)) as f64)
        })
        .collect();
    if samples.is_empty() {
        return Ok(None);
    }
    let count = samples.len() as f64;
    let mean = samples.iter().sum::<f64>() / count;
    let std_error = if samples.len() > 1 {
        let var = samples.iter().map(|s| (s - mean).powi(2)).sum::<f64>() / (count - 1.0);
        (var / count).sqrt()
    } else {
        0.0
    };
    Ok(Some(MultipleGainSample {
        mean,
        count: samples.len(),
        std_error,
    }))
}

/// Every potential value occurring in any trace, ascending.
pub fn observed_levels(traces: &[GainTrace]) -> Vec<Fitness> {
    traces
        .iter()
        .flat_map(|t| t.potentials.iter().copied())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}
