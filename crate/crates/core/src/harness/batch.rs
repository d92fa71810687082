use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::{estimate_summary, gain_trace, EstimateSummary, GainTrace};
use crate::bounds::{
    BoundInputs, BoundReport, KSource, KnapsackBoundInputs, MaxSatBoundInputs, TspBoundInputs,
};
use crate::ea::run_ea;
use crate::model::{EaConfig, Fitness, RandomStream};
use crate::problems::{
    derive_quantities, DerivedDetail, InstanceQuantities, ProblemInstance, StartingPopulation,
};
use crate::{Error, Result};

use super::config::{ExperimentConfig, KSourcePolicy};
use super::consistency::{consistency_check, ConsistencyReport, ConsistencyRow};

/// Cap used when no theoretical worst-case bound is available.
const FALLBACK_MAX_GENERATIONS: u64 = 10_000_000;
/// Smallest derived cap, so that near-trivial instances are not censored.
const MIN_MAX_GENERATIONS: u64 = 1_000;

/// One problem size ready to run: instance, start, derived quantities and
/// the bound inputs computed from them.
#[derive(Clone, Debug)]
pub struct PreparedInstance {
    pub n: usize,
    pub instance: ProblemInstance,
    pub start: StartingPopulation,
    pub quantities: InstanceQuantities,
    /// Potential of the best initial individual; for uniform starts, the
    /// largest potential any start can have.
    pub initial_potential: Fitness,
    pub bound_inputs: BoundInputs,
    pub max_generations: u64,
}

pub fn prepare_instance(cfg: &ExperimentConfig, n: usize) -> Result<PreparedInstance> {
    let mut file = cfg.problem.clone();
    if file.experiment_problem().is_some() {
        file.n = Some(n);
    }
    let (instance, start) = file.resolve()?;
    let quantities = derive_quantities(&instance, cfg.enumeration_cap)?;
    let direction = instance.direction();
    let optimum = quantities.optimum_fitness;
    let initial_potential = match &start {
        StartingPopulation::UniformRandom => {
            let values = quantities.space.values();
            let worst = match direction {
                crate::model::Direction::Maximize => values[0],
                crate::model::Direction::Minimize => values[values.len() - 1],
            };
            direction.potential(worst, optimum)
        }
        StartingPopulation::Replicated(g) => {
            direction.potential(fitness_of(&instance, g)?, optimum)
        }
        StartingPopulation::Explicit(list) => list
            .iter()
            .map(|g| fitness_of(&instance, g).map(|f| direction.potential(f, optimum)))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .min()
            .ok_or_else(|| Error::Config("empty initial population".into()))?,
    };
    let alpha = quantities.space.alpha() as f64;
    let beta = quantities.space.beta() as f64;
    let y0 = initial_potential as f64;
    let bound_inputs = match (&quantities.detail, &instance) {
        (DerivedDetail::Knapsack(d), _) => BoundInputs::Knapsack(KnapsackBoundInputs {
            n: n as u64,
            mu: cfg.mu as u64,
            lambda: cfg.lambda as u64,
            p1: d.p1,
            p2: d.p2,
            d_min: d.d_min as f64,
            v_min: d.v_min as f64,
            y0,
            r0: 0.0,
            alpha,
            beta,
        }),
        (DerivedDetail::MaxSat(d), ProblemInstance::MaxSat(m)) => {
            BoundInputs::MaxSat(MaxSatBoundInputs {
                n: n as u64,
                lambda: cfg.lambda as u64,
                clause_count: m.clause_count() as u64,
                n_opt: d.n_opt,
                y0,
                r0: 0.0,
                alpha,
                beta,
            })
        }
        (DerivedDetail::Tsp, _) => BoundInputs::Tsp(TspBoundInputs {
            n: n as u64,
            mu: cfg.mu as u64,
            lambda: cfg.lambda as u64,
            lambda_p: cfg
                .poisson_lambda
                .ok_or_else(|| Error::Config("TSP runs need poisson_lambda".into()))?,
            l: initial_potential as u64,
            r0: 0.0,
            alpha,
            beta,
        }),
        _ => unreachable!("derived detail matches the instance kind"),
    };
    let max_generations = match cfg.max_generations {
        Some(cap) => cap,
        None => match bound_inputs.report(KSource::Theoretical) {
            Ok(r) if r.worst_bound.is_finite() => {
                ((100.0 * r.worst_bound).ceil() as u64).max(MIN_MAX_GENERATIONS)
            }
            _ => FALLBACK_MAX_GENERATIONS,
        },
    };
    Ok(PreparedInstance {
        n,
        instance,
        start,
        quantities,
        initial_potential,
        bound_inputs,
        max_generations,
    })
}

fn fitness_of(instance: &ProblemInstance, g: &crate::model::Genotype) -> Result<Fitness> {
    instance
        .evaluate(g)?
        .ok_or_else(|| Error::Config("initial genotype is infeasible".into()))
}

impl PreparedInstance {
    /// EA configuration for run `run_index` of this size.
    pub fn ea_config(&self, cfg: &ExperimentConfig, run_index: usize) -> EaConfig {
        let seed =
            RandomStream::derive(cfg.base_seed, &[self.n as u64, run_index as u64]).next_u64();
        let mut ea = EaConfig::new(self.instance.default_variant(), cfg.mu, cfg.lambda, seed)
            .with_initial(self.start.materialize(cfg.mu))
            .with_max_generations(self.max_generations);
        ea.poisson_lambda = match ea.variant {
            crate::model::Variant::Tsp3 => cfg.poisson_lambda,
            _ => None,
        };
        ea
    }
}

/// Results for one problem size.
#[derive(Clone, Debug, Serialize)]
pub struct NResult {
    pub n: usize,
    pub summary: EstimateSummary,
    pub bounds: BoundReport,
    pub bound_inputs: BoundInputs,
    pub optimum_fitness: Fitness,
    pub alpha: Fitness,
    pub beta: Fitness,
    pub initial_potential: Fitness,
    pub max_generations: u64,
    /// Gain traces in run-index order.
    #[serde(skip)]
    pub traces: Vec<GainTrace>,
}

#[derive(Clone, Debug)]
pub struct BatchResult {
    pub config: ExperimentConfig,
    /// One entry per size, ascending in `n`.
    pub results: Vec<NResult>,
}

impl BatchResult {
    pub fn consistency_rows(&self) -> Vec<ConsistencyRow> {
        self.results
            .iter()
            .map(|r| ConsistencyRow {
                n: r.n,
                t0_hat: r.summary.t0_hat,
                t_max: r.summary.t_max as f64,
                k_hat: r.summary.k_hat,
                alpha_hat: r.summary.alpha_hat,
                avg_bound: r.bounds.avg_bound,
                worst_bound: r.bounds.worst_bound,
                klow_theoretical: r.bounds.klow_theoretical,
            })
            .collect()
    }
}

enum RunResult {
    Hit(GainTrace),
    Censored,
}

/// Runs `runs_per_n` independent seeded runs for every size. Runs execute in
/// parallel; results are reduced in ascending `(n, run_index)` order, so the
/// thread count never changes the output. Any censored run fails the batch.
pub fn run_batch(cfg: &ExperimentConfig) -> Result<BatchResult> {
    cfg.validate()?;
    let mut n_values = cfg.n_values.clone();
    n_values.sort_unstable();
    n_values.dedup();
    let prepared: Vec<PreparedInstance> = n_values
        .iter()
        .map(|&n| prepare_instance(cfg, n))
        .collect::<Result<_>>()?;

    let tasks: Vec<(usize, usize)> = (0..prepared.len())
        .flat_map(|p| (0..cfg.runs_per_n).map(move |r| (p, r)))
        .collect();
    let execute = || {
        tasks
            .par_iter()
            .map(|&(p, r)| {
                let prep = &prepared[p];
                let outcome = run_ea(
                    &prep.instance,
                    &prep.ea_config(cfg, r),
                    prep.quantities.optimum_fitness,
                )?;
                if outcome.is_censored() {
                    return Ok(RunResult::Censored);
                }
                let trace = gain_trace(
                    &outcome,
                    prep.quantities.optimum_fitness,
                    prep.instance.direction(),
                )?;
                Ok(RunResult::Hit(trace))
            })
            .collect::<Result<Vec<_>>>()
    };
    let outcomes = match cfg.threads {
        Some(width) => rayon::ThreadPoolBuilder::new()
            .num_threads(width)
            .build()
            .map_err(|e| Error::Config(format!("cannot start worker pool: {e}")))?
            .install(execute)?,
        None => execute()?,
    };

    let mut outcomes = outcomes.into_iter();
    let mut results = Vec::with_capacity(prepared.len());
    for prep in &prepared {
        let mut traces = Vec::with_capacity(cfg.runs_per_n);
        let mut censored = 0;
        for run in outcomes.by_ref().take(cfg.runs_per_n) {
            match run {
                RunResult::Hit(t) => traces.push(t),
                RunResult::Censored => censored += 1,
            }
        }
        if censored > 0 {
            return Err(Error::Censored {
                n: prep.n,
                count: censored,
                runs: cfg.runs_per_n,
                cap: prep.max_generations,
            });
        }
        let summary = estimate_summary(&traces, censored)?;
        let k_source = match cfg.k_source {
            KSourcePolicy::Theoretical => KSource::Theoretical,
            KSourcePolicy::Empirical => KSource::Empirical(summary.k_hat),
        };
        let bounds = prep.bound_inputs.report(k_source)?;
        results.push(NResult {
            n: prep.n,
            summary,
            bounds,
            bound_inputs: prep.bound_inputs.clone(),
            optimum_fitness: prep.quantities.optimum_fitness,
            alpha: prep.quantities.space.alpha(),
            beta: prep.quantities.space.beta(),
            initial_potential: prep.initial_potential,
            max_generations: prep.max_generations,
            traces,
        });
    }
    Ok(BatchResult {
        config: cfg.clone(),
        results,
    })
}

/// Runs a batch and checks every bound against its measurement.
pub fn verify(cfg: &ExperimentConfig) -> Result<(BatchResult, ConsistencyReport)> {
    let batch = run_batch(cfg)?;
    let report = consistency_check(&batch.consistency_rows())?;
    Ok((batch, report))
}
