use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

use super::batch::{BatchResult, NResult};
use super::consistency::{consistency_check, ConsistencyReport, R_MIN};

pub const SUMMARY_FILE: &str = "summary.csv";
pub const REPORT_FILE: &str = "report.json";
pub const TRACES_FILE: &str = "traces.csv";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExportFormat {
    /// Summary, figure series and (optionally) traces as CSV.
    Csv,
    /// Everything `Csv` writes plus the JSON report.
    Structured,
}

/// One line of `summary.csv`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub n: usize,
    pub t0_hat: f64,
    pub t_max: u64,
    pub k_hat: f64,
    pub alpha_hat: Option<i64>,
    pub avg_bound: f64,
    pub worst_bound: f64,
    pub klow_theoretical: f64,
    pub runs: usize,
}

impl From<&NResult> for SummaryRow {
    fn from(r: &NResult) -> Self {
        Self {
            n: r.n,
            t0_hat: r.summary.t0_hat,
            t_max: r.summary.t_max,
            k_hat: r.summary.k_hat,
            alpha_hat: r.summary.alpha_hat,
            avg_bound: r.bounds.avg_bound,
            worst_bound: r.bounds.worst_bound,
            klow_theoretical: r.bounds.klow_theoretical,
            runs: r.summary.run_count,
        }
    }
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent).map_err(|e| Error::io(parent, e))?;
        }
    }
    Ok(BufWriter::new(
        File::create(path).map_err(|e| Error::io(path, e))?,
    ))
}

fn csv_error(path: &Path, e: csv::Error) -> Error {
    Error::Parse {
        path: path.to_path_buf(),
        message: e.to_string(),
    }
}

pub fn write_summary_csv(path: &Path, rows: &[SummaryRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(create(path)?);
    for row in rows {
        w.serialize(row).map_err(|e| csv_error(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

pub fn read_summary_csv(path: &Path) -> Result<Vec<SummaryRow>> {
    let mut r = csv::Reader::from_path(path).map_err(|e| csv_error(path, e))?;
    r.deserialize()
        .collect::<std::result::Result<Vec<SummaryRow>, _>>()
        .map_err(|e| csv_error(path, e))
}

/// Per-generation rows `run_id,t,potential,gain` for every size. `run_id` is
/// `n:run_index`; the gain column is empty at `t = 0`.
pub fn write_traces_csv(path: &Path, batch: &BatchResult) -> Result<()> {
    let mut w = create(path)?;
    let mut body = || -> std::io::Result<()> {
        writeln!(w, "run_id,t,potential,gain")?;
        for r in &batch.results {
            for (i, trace) in r.traces.iter().enumerate() {
                for (t, p) in trace.potentials.iter().enumerate() {
                    match t.checked_sub(1).map(|g| trace.gains[g]) {
                        Some(g) => writeln!(w, "{}:{},{},{},{}", r.n, i, t, p, g)?,
                        None => writeln!(w, "{}:{},{},{},", r.n, i, t, p)?,
                    }
                }
            }
        }
        w.flush()
    };
    body().map_err(|e| Error::io(path, e))
}

/// Plot-ready series: `fig_a.csv` (n, t0_hat, avg_bound), `fig_b.csv`
/// (n, t_max, worst_bound) and `fig_c.csv` (n, k_hat, klow_theoretical).
pub fn write_series(dir: &Path, rows: &[SummaryRow]) -> Result<Vec<PathBuf>> {
    type Column = fn(&SummaryRow) -> (String, String);
    let panels: [(&str, &str, &str, Column); 3] = [
        ("fig_a.csv", "t0_hat", "avg_bound", |r| {
            (r.t0_hat.to_string(), r.avg_bound.to_string())
        }),
        ("fig_b.csv", "t_max", "worst_bound", |r| {
            (r.t_max.to_string(), r.worst_bound.to_string())
        }),
        ("fig_c.csv", "k_hat", "klow_theoretical", |r| {
            (r.k_hat.to_string(), r.klow_theoretical.to_string())
        }),
    ];
    let mut written = Vec::new();
    for (file, measured, bound, column) in panels {
        let path = dir.join(file);
        let mut w = csv::Writer::from_writer(create(&path)?);
        w.write_record(["n", measured, bound])
            .map_err(|e| csv_error(&path, e))?;
        for r in rows {
            let (a, b) = column(r);
            w.write_record([r.n.to_string(), a, b])
                .map_err(|e| csv_error(&path, e))?;
        }
        w.flush().map_err(|e| Error::io(&path, e))?;
        written.push(path);
    }
    Ok(written)
}

#[derive(Serialize)]
struct Correlations {
    avg: f64,
    worst: f64,
    k: f64,
}

#[derive(Serialize)]
struct Thresholds {
    r_min: f64,
}

#[derive(Serialize)]
struct Verdicts<'a> {
    average: &'a super::consistency::PairVerdict,
    worst: &'a super::consistency::PairVerdict,
    k_low: &'a super::consistency::PairVerdict,
    consistent: bool,
}

#[derive(Serialize)]
struct Report<'a> {
    config: &'a super::config::ExperimentConfig,
    rows: Vec<SummaryRow>,
    sizes: &'a [NResult],
    correlations: Correlations,
    verdicts: Verdicts<'a>,
    thresholds: Thresholds,
}

pub fn write_report_json(
    path: &Path,
    batch: &BatchResult,
    report: &ConsistencyReport,
) -> Result<()> {
    let doc = Report {
        config: &batch.config,
        rows: batch.results.iter().map(SummaryRow::from).collect(),
        sizes: &batch.results,
        correlations: Correlations {
            avg: report.average.r,
            worst: report.worst.r,
            k: report.k_low.r,
        },
        verdicts: Verdicts {
            average: &report.average,
            worst: &report.worst,
            k_low: &report.k_low,
            consistent: report.all_consistent(),
        },
        thresholds: Thresholds { r_min: R_MIN },
    };
    let mut w = create(path)?;
    serde_json::to_writer_pretty(&mut w, &doc).map_err(|e| Error::Parse {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    writeln!(w)
        .and_then(|_| w.flush())
        .map_err(|e| Error::io(path, e))
}

/// Writes every output of a batch into `dir` and returns the paths written.
/// The JSON report needs at least two sizes; with fewer it is skipped.
pub fn export_results(
    batch: &BatchResult,
    format: ExportFormat,
    dir: &Path,
) -> Result<Vec<PathBuf>> {
    let rows: Vec<SummaryRow> = batch.results.iter().map(SummaryRow::from).collect();
    let summary = dir.join(SUMMARY_FILE);
    write_summary_csv(&summary, &rows)?;
    let mut written = vec![summary];
    written.extend(write_series(dir, &rows)?);
    if batch.config.export_traces {
        let traces = dir.join(TRACES_FILE);
        write_traces_csv(&traces, batch)?;
        written.push(traces);
    }
    if format == ExportFormat::Structured && batch.results.len() >= 2 {
        let report = consistency_check(&batch.consistency_rows())?;
        let path = dir.join(REPORT_FILE);
        write_report_json(&path, batch, &report)?;
        written.push(path);
    }
    Ok(written)
}
