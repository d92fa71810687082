use serde::{Deserialize, Serialize};

use crate::{Error, Result};

use super::formulas::*;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KnapsackBoundInputs {
    pub n: u64,
    pub mu: u64,
    pub lambda: u64,
    pub p1: f64,
    pub p2: f64,
    pub d_min: f64,
    pub v_min: f64,
    /// Initial potential `f(x_opt) − f(x0)`.
    pub y0: f64,
    pub r0: f64,
    pub alpha: f64,
    pub beta: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MaxSatBoundInputs {
    pub n: u64,
    pub lambda: u64,
    /// Number of clauses `s`.
    pub clause_count: u64,
    pub n_opt: u64,
    pub y0: f64,
    pub r0: f64,
    pub alpha: f64,
    pub beta: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TspBoundInputs {
    pub n: u64,
    pub mu: u64,
    pub lambda: u64,
    pub lambda_p: f64,
    /// Initial fitness `L = f(x0)`.
    pub l: u64,
    pub r0: f64,
    pub alpha: f64,
    pub beta: f64,
}

fn check_gaps(alpha: f64, beta: f64, y0: f64, r0: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha <= beta) {
        return Err(Error::Argument(format!(
            "fitness gaps must satisfy 0 < alpha <= beta (alpha = {alpha}, beta = {beta})"
        )));
    }
    if !(y0 >= r0 && r0 >= 0.0) {
        return Err(Error::Argument(format!(
            "initial potential must satisfy y0 >= r0 >= 0 (y0 = {y0}, r0 = {r0})"
        )));
    }
    Ok(())
}

impl KnapsackBoundInputs {
    pub fn validate(&self) -> Result<()> {
        let in_unit = |p: f64| (0.0..=1.0).contains(&p);
        if !in_unit(self.p1) || !in_unit(self.p2) || (self.p1 + self.p2 - 1.0).abs() > 1e-12 {
            return Err(Error::Argument(format!(
                "p1 and p2 must be probabilities summing to 1 (p1 = {}, p2 = {})",
                self.p1, self.p2
            )));
        }
        if self.n == 0 || self.mu == 0 {
            return Err(Error::Argument("n and mu must be positive".into()));
        }
        check_gaps(self.alpha, self.beta, self.y0, self.r0)
    }
}

impl MaxSatBoundInputs {
    pub fn validate(&self) -> Result<()> {
        check_gaps(self.alpha, self.beta, self.y0, self.r0)
    }
}

impl TspBoundInputs {
    pub fn validate(&self) -> Result<()> {
        if self.mu == 0 {
            return Err(Error::Argument("mu must be positive".into()));
        }
        check_gaps(self.alpha, self.beta, self.l as f64, self.r0)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "problem", rename_all = "lowercase")]
pub enum BoundInputs {
    Knapsack(KnapsackBoundInputs),
    MaxSat(MaxSatBoundInputs),
    Tsp(TspBoundInputs),
}

/// Where the worst-case bound takes its `k` from.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "source", content = "k", rename_all = "lowercase")]
pub enum KSource {
    Theoretical,
    /// Mean longest zero-gain interval measured over a batch.
    Empirical(f64),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub avg_bound: f64,
    pub klow_theoretical: f64,
    /// Worst-case bound with the `k` given by `k_source`.
    pub worst_bound: f64,
    /// Worst-case bound with the theoretical `k_low`.
    pub worst_bound_theoretical: f64,
    pub k_source: KSource,
    pub formula_ids: Vec<String>,
}

impl BoundInputs {
    pub fn report(&self, k_source: KSource) -> Result<BoundReport> {
        let (avg, klow, tag) = match self {
            BoundInputs::Knapsack(i) => (knapsack_avg_bound(i)?, knapsack_klow(i)?, "knapsack"),
            BoundInputs::MaxSat(i) => (maxsat_avg_bound(i)?, maxsat_klow(i)?, "maxsat"),
            BoundInputs::Tsp(i) => (tsp_avg_bound(i)?, tsp_klow(i)?, "tsp"),
        };
        let k = match k_source {
            KSource::Theoretical => klow,
            KSource::Empirical(k) => k,
        };
        let worst = |k: f64| match self {
            BoundInputs::Knapsack(i) => knapsack_worst_bound(i, k),
            BoundInputs::MaxSat(i) => maxsat_worst_bound(i, k),
            BoundInputs::Tsp(i) => tsp_worst_bound(i, k),
        };
        let k_label = match k_source {
            KSource::Theoretical => "theoretical",
            KSource::Empirical(_) => "empirical",
        };
        Ok(BoundReport {
            avg_bound: avg,
            klow_theoretical: klow,
            worst_bound: worst(k)?,
            worst_bound_theoretical: worst(klow)?,
            k_source,
            formula_ids: vec![
                format!("{tag}/average-case"),
                format!("{tag}/k-low"),
                format!("{tag}/worst-case(k={k_label})"),
            ],
        })
    }
}
