//! Batch orchestration, consistency verification between bounds and
//! measurements, and result export.

mod batch;
mod config;
mod consistency;
mod export;
mod stats;

pub use batch::{prepare_instance, run_batch, verify, BatchResult, NResult, PreparedInstance};
pub use config::{ExperimentConfig, ExperimentFile, KSourcePolicy, DEFAULT_RUNS_PER_N};
pub use consistency::{consistency_check, ConsistencyReport, ConsistencyRow, PairVerdict, R_MIN};
pub use export::{
    export_results, read_summary_csv, write_report_json, write_series, write_summary_csv,
    write_traces_csv, ExportFormat, SummaryRow,
};
pub use stats::pearson;
