use crate::problems::ProblemInstance;
use crate::{Error, Result};

use super::{Direction, EaConfig, Fitness, Genotype, InitialPopulation, RandomStream};

/// Draws allowed when sampling a feasible uniform-random knapsack genotype.
const FEASIBLE_SAMPLING_ATTEMPTS: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Individual {
    pub genotype: Genotype,
    pub fitness: Fitness,
}

impl Individual {
    /// Evaluates `genotype`; infeasible genotypes are rejected.
    pub fn evaluate(genotype: Genotype, instance: &ProblemInstance) -> Result<Self> {
        match instance.evaluate(&genotype)? {
            Some(fitness) => Ok(Self { genotype, fitness }),
            None => Err(Error::Config(
                "genotype violates the knapsack capacity".into(),
            )),
        }
    }
}

/// The μ parents of a generation together with their best fitness and the
/// number of members attaining it (`b_t`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Population {
    members: Vec<Individual>,
    best_fitness: Fitness,
    best_count: usize,
    direction: Direction,
}

impl Population {
    pub fn from_members(members: Vec<Individual>, direction: Direction) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::Config("population must not be empty".into()));
        }
        let (best_fitness, best_count) = best_of(&members, direction);
        Ok(Self {
            members,
            best_fitness,
            best_count,
            direction,
        })
    }

    /// Builds the generation-0 population from the configured genotypes or
    /// uniformly at random.
    pub fn initialize(
        config: &EaConfig,
        instance: &ProblemInstance,
        rng: &mut RandomStream,
    ) -> Result<Self> {
        config.validate()?;
        if config.variant != instance.default_variant() {
            return Err(Error::Config(format!(
                "{:?} cannot run on a {} instance",
                config.variant,
                instance.kind()
            )));
        }
        let members = match &config.initial_population {
            InitialPopulation::Explicit(list) => list
                .iter()
                .map(|g| {
                    if g.len() != instance.n() {
                        return Err(Error::Config(format!(
                            "initial genotype has length {}, instance has n = {}",
                            g.len(),
                            instance.n()
                        )));
                    }
                    Individual::evaluate(g.clone(), instance)
                })
                .collect::<Result<Vec<_>>>()?,
            InitialPopulation::UniformRandom => (0..config.mu)
                .map(|_| sample_feasible(instance, rng))
                .collect::<Result<Vec<_>>>()?,
        };
        Self::from_members(members, instance.direction())
    }

    pub fn members(&self) -> &[Individual] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn best_fitness(&self) -> Fitness {
        self.best_fitness
    }

    pub fn best_count(&self) -> usize {
        self.best_count
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    /// Best fitness and best count recomputed from the members.
    pub fn recount_best(&self) -> (Fitness, usize) {
        best_of(&self.members, self.direction)
    }

    pub fn best_member(&self) -> &Individual {
        self.members
            .iter()
            .find(|m| m.fitness == self.best_fitness)
            .expect("best fitness is attained by a member")
    }
}

fn best_of(members: &[Individual], direction: Direction) -> (Fitness, usize) {
    let best = members
        .iter()
        .map(|m| m.fitness)
        .reduce(|a, b| direction.pick(a, b))
        .expect("non-empty");
    let count = members.iter().filter(|m| m.fitness == best).count();
    (best, count)
}

fn sample_feasible(instance: &ProblemInstance, rng: &mut RandomStream) -> Result<Individual> {
    for _ in 0..FEASIBLE_SAMPLING_ATTEMPTS {
        let genotype = instance.random_genotype(rng);
        if let Some(fitness) = instance.evaluate(&genotype)? {
            return Ok(Individual { genotype, fitness });
        }
    }
    Err(Error::Config(format!(
        "no feasible genotype in {FEASIBLE_SAMPLING_ATTEMPTS} uniform draws"
    )))
}
