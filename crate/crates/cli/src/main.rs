use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use efht::bounds::KSource;
use efht::ea::run_ea;
use efht::harness::{
    export_results, prepare_instance, read_summary_csv, run_batch, verify, ExperimentConfig,
    ExperimentFile, ExportFormat, KSourcePolicy,
};
use efht::problems::{derive_quantities, DerivedDetail, ProblemInstance, DEFAULT_ENUMERATION_CAP};
use efht::Error;

const EXIT_CONFIG: u8 = 1;
const EXIT_CENSORED: u8 = 2;
const EXIT_INCONSISTENT: u8 = 3;

#[derive(Parser)]
#[command(
    name = "efht",
    version,
    about = "Expected first hitting time experiments for elitist EAs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a batch and export summaries.
    Run(RunArgs),
    /// Run a batch, check each bound against its measurement, write the report.
    Verify(RunArgs),
    /// Print the bounds for every configured size.
    Bounds(BoundsArgs),
    /// Print the enumerated quantities of an instance.
    Derive(InstanceArgs),
    /// One seeded run with a per-generation dump.
    Trace(TraceArgs),
}

#[derive(Args, Clone, Default)]
struct ExperimentArgs {
    /// JSON config or instance file; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// paper-knapsack, paper-maxsat or paper-tsp.
    #[arg(long)]
    problem: Option<String>,
    #[arg(long)]
    n_min: Option<usize>,
    #[arg(long)]
    n_max: Option<usize>,
    #[arg(long)]
    mu: Option<usize>,
    #[arg(long)]
    lambda: Option<usize>,
    #[arg(long)]
    poisson_lambda: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    max_generations: Option<u64>,
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    experiment: ExperimentArgs,
    #[arg(long)]
    runs: Option<usize>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    threads: Option<usize>,
    /// Also write per-generation traces.
    #[arg(long)]
    traces: bool,
    #[arg(long, value_enum)]
    k_source: Option<KSourceArg>,
}

#[derive(Clone, Copy, ValueEnum)]
enum KSourceArg {
    Theoretical,
    Empirical,
}

#[derive(Args)]
struct BoundsArgs {
    #[command(flatten)]
    experiment: ExperimentArgs,
    /// Single size; shorthand for --n-min N --n-max N.
    #[arg(long)]
    n: Option<usize>,
    /// `theoretical`, or `empirical:<summary.csv>` to take k̂ from a batch.
    #[arg(long, default_value = "theoretical")]
    k_source: String,
}

#[derive(Args)]
struct InstanceArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    problem: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
    cap: usize,
}

#[derive(Args)]
struct TraceArgs {
    #[command(flatten)]
    experiment: ExperimentArgs,
    #[arg(long)]
    n: Option<usize>,
}

struct Failure {
    code: u8,
    kind: String,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Censored { .. } => EXIT_CENSORED,
            _ => EXIT_CONFIG,
        };
        Failure {
            code,
            kind: e.kind().to_string(),
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_CONFIG,
        kind: "usage".into(),
        message: message.into(),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            return fail(usage(e.to_string().trim_end()));
        }
    };
    let result = match cli.command {
        Command::Run(a) => cmd_run(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Bounds(a) => cmd_bounds(a),
        Command::Derive(a) => cmd_derive(a),
        Command::Trace(a) => cmd_trace(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => fail(f),
    }
}

fn fail(f: Failure) -> ExitCode {
    eprintln!(
        "{}",
        json!({"error": f.kind, "message": f.message, "exit_code": f.code})
    );
    ExitCode::from(f.code)
}

fn print_json(v: &impl serde::Serialize) {
    println!(
        "{}",
        serde_json::to_string_pretty(v).expect("serialisable output")
    );
}

fn build_config(a: &ExperimentArgs) -> Result<ExperimentConfig, Failure> {
    let mut file = match &a.config {
        Some(path) => ExperimentFile::load(path)?,
        None => ExperimentFile::default(),
    };
    if let Some(p) = &a.problem {
        file.instance.problem = Some(p.clone());
    }
    if file.instance.problem.is_none() {
        return Err(usage("either --config or --problem is required"));
    }
    file.n_min = a.n_min.or(file.n_min);
    file.n_max = a.n_max.or(file.n_max);
    file.mu = a.mu.or(file.mu);
    file.lambda = a.lambda.or(file.lambda);
    file.poisson_lambda = a.poisson_lambda.or(file.poisson_lambda);
    file.seed = a.seed.or(file.seed);
    file.max_generations = a.max_generations.or(file.max_generations);
    Ok(file.into_config()?)
}

fn batch_config(a: &RunArgs) -> Result<ExperimentConfig, Failure> {
    let mut cfg = build_config(&a.experiment)?;
    if let Some(r) = a.runs {
        cfg.runs_per_n = r;
    }
    if a.out.is_some() {
        cfg.output_dir = a.out.clone();
    }
    if a.threads.is_some() {
        cfg.threads = a.threads;
    }
    if let Some(k) = a.k_source {
        cfg.k_source = match k {
            KSourceArg::Theoretical => KSourcePolicy::Theoretical,
            KSourceArg::Empirical => KSourcePolicy::Empirical,
        };
    }
    cfg.export_traces |= a.traces;
    Ok(cfg)
}

fn cmd_run(a: RunArgs) -> Result<u8, Failure> {
    let cfg = batch_config(&a)?;
    let batch = run_batch(&cfg)?;
    if let Some(dir) = &cfg.output_dir {
        export_results(&batch, ExportFormat::Csv, dir)?;
    }
    print_json(&batch.consistency_rows());
    Ok(0)
}

fn cmd_verify(a: RunArgs) -> Result<u8, Failure> {
    let cfg = batch_config(&a)?;
    let (batch, report) = verify(&cfg)?;
    if let Some(dir) = &cfg.output_dir {
        export_results(&batch, ExportFormat::Structured, dir)?;
    }
    print_json(&json!({
        "rows": report.rows,
        "correlations": {
            "avg": report.average.r,
            "worst": report.worst.r,
            "k": report.k_low.r,
        },
        "verdicts": {
            "average": report.average,
            "worst": report.worst,
            "k_low": report.k_low,
            "consistent": report.all_consistent(),
        },
        "thresholds": {"r_min": report.r_min},
    }));
    Ok(if report.all_consistent() {
        0
    } else {
        EXIT_INCONSISTENT
    })
}

fn cmd_bounds(a: BoundsArgs) -> Result<u8, Failure> {
    let mut exp = a.experiment.clone();
    if let Some(n) = a.n {
        exp.n_min = Some(n);
        exp.n_max = Some(n);
    }
    let cfg = build_config(&exp)?;
    let empirical = match a.k_source.as_str() {
        "theoretical" => None,
        s => match s.strip_prefix("empirical:") {
            Some(path) => Some(read_summary_csv(Path::new(path))?),
            None => {
                return Err(usage(format!(
                    "--k-source must be `theoretical` or `empirical:<file>`, got `{s}`"
                )))
            }
        },
    };
    let mut out = Vec::new();
    for &n in &cfg.n_values {
        let prep = prepare_instance(&cfg, n)?;
        let k_source = match &empirical {
            None => KSource::Theoretical,
            Some(rows) => match rows.iter().find(|r| r.n == n) {
                Some(r) => KSource::Empirical(r.k_hat),
                None => return Err(usage(format!("summary file has no row for n = {n}"))),
            },
        };
        let report = prep.bound_inputs.report(k_source)?;
        out.push(json!({
            "n": n,
            "inputs": prep.bound_inputs,
            "bounds": report,
            "max_generations": prep.max_generations,
        }));
    }
    print_json(&out);
    Ok(0)
}

fn number(v: u128) -> Value {
    match u64::try_from(v) {
        Ok(x) => json!(x),
        Err(_) => json!(v.to_string()),
    }
}

fn cmd_derive(a: InstanceArgs) -> Result<u8, Failure> {
    let mut file = match &a.config {
        Some(path) => ExperimentFile::load(path)?.instance,
        None => Default::default(),
    };
    if let Some(p) = &a.problem {
        file.problem = Some(p.clone());
    }
    if a.n.is_some() {
        file.n = a.n;
    }
    if file.problem.is_none() {
        return Err(usage("either --config or --problem is required"));
    }
    let (instance, _) = file.resolve()?;
    let q = derive_quantities(&instance, a.cap)?;
    let mut doc = json!({
        "problem": instance.kind().to_string(),
        "n": instance.n(),
        "optimum_fitness": q.optimum_fitness,
        "S": q.space.values(),
        "alpha": q.space.alpha(),
        "beta": q.space.beta(),
    });
    match (&q.detail, &instance) {
        (DerivedDetail::Knapsack(d), _) => {
            doc["N"] = number(d.feasible_count);
            doc["q"] = json!(d.q);
            doc["p1"] = json!(d.p1);
            doc["p2"] = json!(d.p2);
            doc["d_min"] = json!(d.d_min);
            doc["v_min"] = json!(d.v_min);
        }
        (DerivedDetail::MaxSat(d), ProblemInstance::MaxSat(m)) => {
            doc["N"] = number(1u128 << m.n());
            doc["N_opt"] = json!(d.n_opt);
            doc["clauses"] = json!(m.clause_count());
        }
        _ => {}
    }
    print_json(&doc);
    Ok(0)
}

fn cmd_trace(a: TraceArgs) -> Result<u8, Failure> {
    let mut exp = a.experiment;
    if let Some(n) = a.n {
        exp.n_min = Some(n);
        exp.n_max = Some(n);
    }
    let cfg = build_config(&exp)?;
    let n = cfg.n_values[0];
    let prep = prepare_instance(&cfg, n)?;
    let mut ea = prep.ea_config(&cfg, 0);
    ea.seed = cfg.base_seed;
    let optimum = prep.quantities.optimum_fitness;
    let outcome = run_ea(&prep.instance, &ea, optimum)?;
    let direction = prep.instance.direction();
    println!("t,best_fitness,best_count,potential");
    for e in &outcome.events {
        println!(
            "{},{},{},{}",
            e.generation,
            e.best_fitness,
            e.best_count,
            direction.potential(e.best_fitness, optimum)
        );
    }
    match outcome.hit() {
        Some(_) => Ok(0),
        None => Err(Error::Censored {
            n,
            count: 1,
            runs: 1,
            cap: ea.max_generations,
        }
        .into()),
    }
}
