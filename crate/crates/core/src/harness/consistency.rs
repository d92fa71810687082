use serde::{Deserialize, Serialize};

use crate::{Error, Result};

use super::stats::pearson;

/// Correlation threshold above which a bound and its measurement are taken
/// to agree.
pub const R_MIN: f64 = 0.91;

/// Measurements and bounds for one problem size.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConsistencyRow {
    pub n: usize,
    pub t0_hat: f64,
    pub t_max: f64,
    pub k_hat: f64,
    pub alpha_hat: Option<i64>,
    pub avg_bound: f64,
    pub worst_bound: f64,
    pub klow_theoretical: f64,
}

/// Verdict for one (first, second) pair: `first > second` at every `n` and
/// `r(first, second) > R_MIN`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairVerdict {
    pub first: String,
    pub second: String,
    pub r: f64,
    pub dominates_all: bool,
    /// Sizes where `first > second` fails.
    pub violations: Vec<usize>,
    pub consistent: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConsistencyReport {
    /// Rows in ascending `n`.
    pub rows: Vec<ConsistencyRow>,
    pub average: PairVerdict,
    pub worst: PairVerdict,
    pub k_low: PairVerdict,
    pub r_min: f64,
}

impl ConsistencyReport {
    pub fn all_consistent(&self) -> bool {
        self.average.consistent && self.worst.consistent && self.k_low.consistent
    }
}

pub fn consistency_check(rows: &[ConsistencyRow]) -> Result<ConsistencyReport> {
    if rows.len() < 2 {
        return Err(Error::UndefinedCorrelation(format!(
            "consistency needs at least two problem sizes, got {}",
            rows.len()
        )));
    }
    let mut rows = rows.to_vec();
    rows.sort_by_key(|r| r.n);
    let pair = |first: &str, second: &str, f: fn(&ConsistencyRow) -> (f64, f64)| {
        let (xs, ys): (Vec<f64>, Vec<f64>) = rows.iter().map(f).unzip();
        let r = pearson(&xs, &ys)?;
        let violations: Vec<usize> = rows
            .iter()
            .filter(|row| {
                let (a, b) = f(row);
                a.partial_cmp(&b) != Some(std::cmp::Ordering::Greater)
            })
            .map(|row| row.n)
            .collect();
        let dominates_all = violations.is_empty();
        Ok::<_, Error>(PairVerdict {
            first: first.into(),
            second: second.into(),
            r,
            dominates_all,
            violations,
            consistent: dominates_all && r > R_MIN,
        })
    };
    let average = pair("EFHT_average", "T0_hat", |r| (r.avg_bound, r.t0_hat))?;
    let worst = pair("EFHT_worst", "T_max", |r| (r.worst_bound, r.t_max))?;
    let k_low = pair("k_hat", "k_low", |r| (r.k_hat, r.klow_theoretical))?;
    Ok(ConsistencyReport {
        rows,
        average,
        worst,
        k_low,
        r_min: R_MIN,
    })
}
