//! Closed-form EFHT bounds for the three engines: average-case bounds, the
//! theoretical `k_low`, and worst-case bounds `k·(Y0 − r0)/α` for either the
//! theoretical or an empirical `k`.
//!
//! Asymptotic forms (`O(·)` statements) are not computed; only the finite-`n`
//! expressions live here.

mod formulas;
mod report;

pub use formulas::{
    harmonic, knapsack_avg_bound, knapsack_klow, knapsack_worst_bound, maxsat_avg_bound,
    maxsat_klow, maxsat_worst_bound, one_minus_exp_neg, tsp_avg_bound, tsp_g, tsp_g_fraction,
    tsp_klow, tsp_worst_bound, worst_case_bound,
};
pub use report::{
    BoundInputs, BoundReport, KSource, KnapsackBoundInputs, MaxSatBoundInputs, TspBoundInputs,
};
