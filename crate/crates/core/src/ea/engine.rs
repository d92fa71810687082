use serde::{Deserialize, Serialize};

use crate::model::{EaConfig, Fitness, Genotype, Individual, Population, RandomStream, Variant};
use crate::problems::ProblemInstance;
use crate::{Error, Result};

use super::mutation::{mutate_bitflip, mutate_poisson_2opt};

/// Best-of-population state after a generation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenerationEvent {
    pub generation: u64,
    pub best_fitness: Fitness,
    pub best_count: usize,
    pub hit_optimum: bool,
}

/// First hitting time of a run, in generations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Fht {
    Hit(u64),
    Censored { at: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunOutcome {
    /// One event per generation, starting with the initial population at `t = 0`.
    pub events: Vec<GenerationEvent>,
    pub fht: Fht,
    pub seed: u64,
    pub lambda: usize,
}

impl RunOutcome {
    pub fn hit(&self) -> Option<u64> {
        match self.fht {
            Fht::Hit(t) => Some(t),
            Fht::Censored { .. } => None,
        }
    }

    pub fn is_censored(&self) -> bool {
        matches!(self.fht, Fht::Censored { .. })
    }

    /// Fitness evaluations spent after initialisation, `λ·t`.
    pub fn evaluations(&self) -> u64 {
        let t = match self.fht {
            Fht::Hit(t) | Fht::Censored { at: t } => t,
        };
        t * self.lambda as u64
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OffspringFate {
    Accepted,
    /// Knapsack mutant over capacity, replaced by a copy of its parent.
    RevertedInfeasible,
    /// Improving mutant of a non-best parent, replaced by a copy of its parent.
    RevertedNonBestParent,
}

/// Parentage of one offspring, for auditing the rejection rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OffspringRecord {
    pub parent_fitness: Fitness,
    pub parent_was_best: bool,
    /// Fitness of the mutant before any reversion; `None` if infeasible.
    pub mutant_fitness: Option<Fitness>,
    pub fitness: Fitness,
    pub fate: OffspringFate,
}

#[derive(Clone, Debug)]
pub struct StepReport {
    pub population: Population,
    pub event: GenerationEvent,
    pub offspring: Vec<OffspringRecord>,
}

/// One generation: `λ` offspring from uniformly chosen parents, variant
/// mutation, the rejection rule, then deletion of the `λ` worst members of
/// the `μ+λ` pool with ties among the worst broken uniformly at random.
pub fn step_generation(
    pop: &Population,
    instance: &ProblemInstance,
    config: &EaConfig,
    optimum_fitness: Fitness,
    generation: u64,
    rng: &mut RandomStream,
) -> Result<(Population, GenerationEvent)> {
    let report = step_generation_detailed(pop, instance, config, optimum_fitness, generation, rng)?;
    Ok((report.population, report.event))
}

/// [`step_generation`] that also reports every offspring's parentage.
pub fn step_generation_detailed(
    pop: &Population,
    instance: &ProblemInstance,
    config: &EaConfig,
    optimum_fitness: Fitness,
    generation: u64,
    rng: &mut RandomStream,
) -> Result<StepReport> {
    let direction = pop.direction();
    let start_best = pop.best_fitness();
    let mu = pop.len();
    let rejects_non_best = matches!(config.variant, Variant::Knapsack1 | Variant::Tsp3);

    let mut pool: Vec<Individual> = pop.members().to_vec();
    pool.reserve(config.lambda);
    let mut offspring = Vec::with_capacity(config.lambda);
    for _ in 0..config.lambda {
        let parent = &pop.members()[rng.below(mu)];
        let mutant = mutate(&parent.genotype, instance, config, rng)?;
        let mutant_fitness = instance.evaluate(&mutant)?;
        let parent_was_best = parent.fitness == start_best;
        let fate = match mutant_fitness {
            None => OffspringFate::RevertedInfeasible,
            Some(f)
                if rejects_non_best && !parent_was_best && direction.is_better(f, start_best) =>
            {
                OffspringFate::RevertedNonBestParent
            }
            Some(_) => OffspringFate::Accepted,
        };
        let child = match (fate, mutant_fitness) {
            (OffspringFate::Accepted, Some(fitness)) => Individual {
                genotype: mutant,
                fitness,
            },
            _ => parent.clone(),
        };
        offspring.push(OffspringRecord {
            parent_fitness: parent.fitness,
            parent_was_best,
            mutant_fitness,
            fitness: child.fitness,
            fate,
        });
        pool.push(child);
    }

    let survivors = select_survivors(pool, mu, direction, rng);
    let population = Population::from_members(survivors, direction)?;
    let event = GenerationEvent {
        generation,
        best_fitness: population.best_fitness(),
        best_count: population.best_count(),
        hit_optimum: population.best_fitness() == optimum_fitness,
    };
    Ok(StepReport {
        population,
        event,
        offspring,
    })
}

fn mutate(
    genotype: &Genotype,
    instance: &ProblemInstance,
    config: &EaConfig,
    rng: &mut RandomStream,
) -> Result<Genotype> {
    match (config.variant, genotype) {
        (Variant::Knapsack1, Genotype::Bits(x)) => Ok(Genotype::Bits(mutate_bitflip(
            x,
            1.0 / instance.n() as f64,
            rng,
        ))),
        (Variant::MaxSat2, Genotype::Bits(x)) => Ok(Genotype::Bits(mutate_bitflip(x, 0.5, rng))),
        (Variant::Tsp3, Genotype::Tour(t)) => {
            let lambda_p = config
                .poisson_lambda
                .ok_or_else(|| Error::Config("Tsp3 requires poisson_lambda".into()))?;
            Ok(Genotype::Tour(mutate_poisson_2opt(t, lambda_p, rng)))
        }
        (variant, _) => Err(Error::Config(format!(
            "{variant:?} cannot mutate this genotype kind"
        ))),
    }
}

/// Keeps the `mu` best members of `pool`. Members strictly better than the
/// `mu`-th best fitness always survive; the remaining places go to a uniformly
/// random subset of the members tied at that fitness. Survivors keep pool order.
fn select_survivors(
    pool: Vec<Individual>,
    mu: usize,
    direction: crate::model::Direction,
    rng: &mut RandomStream,
) -> Vec<Individual> {
    let mut ranked: Vec<Fitness> = pool.iter().map(|m| m.fitness).collect();
    ranked.sort_unstable_by(|a, b| {
        if direction.is_better(*a, *b) {
            std::cmp::Ordering::Less
        } else if direction.is_better(*b, *a) {
            std::cmp::Ordering::Greater
        } else {
            std::cmp::Ordering::Equal
        }
    });
    let threshold = ranked[mu - 1];
    let strictly_better = pool
        .iter()
        .filter(|m| direction.is_better(m.fitness, threshold))
        .count();
    let mut tied: Vec<usize> = pool
        .iter()
        .enumerate()
        .filter(|(_, m)| m.fitness == threshold)
        .map(|(i, _)| i)
        .collect();
    let needed = mu - strictly_better;
    // Partial Fisher-Yates: the first `needed` entries are a uniform subset.
    for k in 0..needed {
        let pick = k + rng.below(tied.len() - k);
        tied.swap(k, pick);
    }
    let mut keep = vec![false; pool.len()];
    for &i in &tied[..needed] {
        keep[i] = true;
    }
    pool.into_iter()
        .enumerate()
        .filter(|(i, m)| keep[*i] || direction.is_better(m.fitness, threshold))
        .map(|(_, m)| m)
        .collect()
}

/// Runs the configured engine from generation 0 until the population contains
/// an optimum or `max_generations` generations have elapsed.
pub fn run_ea(
    instance: &ProblemInstance,
    config: &EaConfig,
    optimum_fitness: Fitness,
) -> Result<RunOutcome> {
    let mut rng = RandomStream::new(config.seed);
    let mut pop = Population::initialize(config, instance, &mut rng)?;
    let mut events = vec![GenerationEvent {
        generation: 0,
        best_fitness: pop.best_fitness(),
        best_count: pop.best_count(),
        hit_optimum: pop.best_fitness() == optimum_fitness,
    }];
    let mut t = 0;
    while !events[events.len() - 1].hit_optimum && t < config.max_generations {
        t += 1;
        let (next, event) = step_generation(&pop, instance, config, optimum_fitness, t, &mut rng)?;
        pop = next;
        events.push(event);
    }
    let fht = if events[events.len() - 1].hit_optimum {
        Fht::Hit(t)
    } else {
        Fht::Censored { at: t }
    };
    Ok(RunOutcome {
        events,
        fht,
        seed: config.seed,
        lambda: config.lambda,
    })
}
