//! Gain-trace post-processing and the empirical estimators of `k_low`, `α`
//! and the expected multiple-gain.

mod estimate;
mod gain;

pub use estimate::{
    empirical_multiple_gain, estimate_summary, observed_levels, EstimateSummary, MultipleGainSample,
};
pub use gain::{gain_trace, longest_zero_gain_interval, GainTrace};
