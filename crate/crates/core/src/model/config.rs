use serde::{Deserialize, Serialize};

use crate::{Error, Result};

use super::Genotype;

/// Which of the three engines to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variant {
    /// Bit-flip `p = 1/n`, non-best-parent rejection, knapsack feasibility.
    Knapsack1,
    /// Bit-flip `p = 1/2`, plain (μ+λ) selection.
    MaxSat2,
    /// Poisson number of 2-opt inversions, non-best-parent rejection.
    Tsp3,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum InitialPopulation {
    UniformRandom,
    Explicit(Vec<Genotype>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EaConfig {
    pub variant: Variant,
    pub mu: usize,
    pub lambda: usize,
    /// Mean of the Poisson draw for the number of extra inversions. Only for
    /// [`Variant::Tsp3`].
    pub poisson_lambda: Option<f64>,
    pub seed: u64,
    pub max_generations: u64,
    pub initial_population: InitialPopulation,
}

impl EaConfig {
    pub fn new(variant: Variant, mu: usize, lambda: usize, seed: u64) -> Self {
        Self {
            variant,
            mu,
            lambda,
            poisson_lambda: (variant == Variant::Tsp3).then_some(1.0),
            seed,
            max_generations: 10_000_000,
            initial_population: InitialPopulation::UniformRandom,
        }
    }

    pub fn with_initial(mut self, initial: InitialPopulation) -> Self {
        self.initial_population = initial;
        self
    }

    pub fn with_max_generations(mut self, max_generations: u64) -> Self {
        self.max_generations = max_generations;
        self
    }

    pub fn with_poisson_lambda(mut self, lambda_p: f64) -> Self {
        self.poisson_lambda = Some(lambda_p);
        self
    }

    /// `μ` copies of the same genotype, as in the experiment recipes.
    pub fn replicate(genotype: Genotype, mu: usize) -> InitialPopulation {
        InitialPopulation::Explicit(vec![genotype; mu])
    }

    pub fn validate(&self) -> Result<()> {
        if self.mu == 0 || self.lambda == 0 {
            return Err(Error::Config(format!(
                "mu and lambda must be at least 1 (mu = {}, lambda = {})",
                self.mu, self.lambda
            )));
        }
        match (self.variant, self.poisson_lambda) {
            (Variant::Tsp3, None) => {
                return Err(Error::Config("Tsp3 requires poisson_lambda".into()))
            }
            (Variant::Tsp3, Some(lp)) if !(lp > 0.0 && lp.is_finite()) => {
                return Err(Error::Config(format!(
                    "poisson_lambda must be positive, got {lp}"
                )))
            }
            (Variant::Knapsack1 | Variant::MaxSat2, Some(_)) => {
                return Err(Error::Config(
                    "poisson_lambda is only meaningful for Tsp3".into(),
                ))
            }
            _ => {}
        }
        if let InitialPopulation::Explicit(list) = &self.initial_population {
            if list.len() != self.mu {
                return Err(Error::Config(format!(
                    "explicit initial population has {} genotypes, mu = {}",
                    list.len(),
                    self.mu
                )));
            }
        }
        Ok(())
    }
}
